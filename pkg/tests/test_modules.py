import numpy as np
import pytest

from robcls.classes import RANK, class_dim, random_class_tensor, reference_class_basis
from robcls.modules import (
    ModuleKey,
    n_to_m_eps,
    rob_module_dim,
    rob_module_keys,
    rob_table,
    sim_module_dim,
    sim_table,
)

SPACES = ("G", "F", "A", "C")


@pytest.mark.parametrize("n", range(4, 10))
@pytest.mark.parametrize("space", SPACES)
def test_tables_complete(space, n):
    for level, table in (("sim", sim_table(space, n)), ("rob", rob_table(space, n))):
        assert table.total_dim == class_dim(space, n), (space, n, level)
        # per-grade completeness: reconstruction of random class tensors
        rng = np.random.default_rng(17)
        t = random_class_tensor(space, n, rng).ravel()
        coeff = table.coefficients(t)
        assert np.linalg.norm(table.stacked.T @ coeff - t) < 1e-10


@pytest.mark.parametrize("n", (5, 6, 8, 9))
@pytest.mark.parametrize("space", ("F", "A", "C"))
def test_refinement_orthogonal(space, n):
    """|Pi_i^j|^2 = sum_k |Pi_i^{j,k}|^2 on random class tensors."""
    st, rt = sim_table(space, n), rob_table(space, n)
    rng = np.random.default_rng(23)
    for _ in range(5):
        t = random_class_tensor(space, n, rng).ravel()
        cs, cr = st.coefficients(t), rt.coefficients(t)
        for e in st.entries:
            if e.key.pm is not None:
                continue
            ns = np.linalg.norm(st.stacked[st.slices[e.key]].T @ cs[st.slices[e.key]]) ** 2
            nr = sum(
                np.linalg.norm(rt.stacked[rt.slices[er.key]].T @ cr[rt.slices[er.key]]) ** 2
                for er in rt.entries
                if (er.key.i, er.key.j) == (e.key.i, e.key.j)
            )
            assert abs(ns - nr) < 1e-10


def test_spec_dimension_examples():
    # closed-form table values at specific (space, n)
    assert class_dim("F", 7) == 27
    assert class_dim("C", 6) == 84
    assert class_dim("A", 4) == 16
    assert sim_module_dim("C", 8, 0, 3) == 84  # (1/3) m(m-1)(2m-1)(2m-5), m = 4
    assert sim_module_dim("F", 9, 0, 1) == 27  # (m-1)(2m+1), m = 4
    assert rob_module_dim("C", 8, 0, 3, 5) == 27  # (1/4)(m+2)(m-1)^2(m-2), m = 4


def test_low_dimension_exclusions():
    # no grade-0 screen-Weyl modules below n = 6
    assert sim_module_dim("C", 4, 0, 3) == 0
    assert sim_module_dim("C", 5, 0, 3) == 0
    assert sim_module_dim("C", 4, 0, 2) == 0  # dagger: n > 4 only
    assert sim_module_dim("C", 5, 0, 2) == 5  # (m-1)(2m+1) at m = 2
    # refined exclusions
    assert rob_module_dim("C", 5, 1, 1, 0) == 0  # dagger: n > 5 only
    assert rob_module_dim("C", 6, 1, 1, 0) == 4
    assert rob_module_dim("C", 6, 0, 3, 2) == 0  # double dagger
    assert rob_module_dim("C", 7, 0, 3, 2) == 0  # requires m > 3
    assert rob_module_dim("C", 8, 0, 3, 2) == 8
    assert rob_module_dim("A", 5, 0, 2, 0) == 0  # coincides with the u-built piece at m = 2
    assert rob_module_dim("A", 7, 0, 2, 0) == 4


def test_n6_pm_split_dims():
    st = sim_table("C", 6)
    dims = {str(e.key): e.dim for e in st.entries}
    assert dims["C.0.3+"] == dims["C.0.3-"] == 5
    assert dims["C.1.1+"] == dims["C.1.1-"] == 8
    assert dims["C.0.1+"] == dims["C.0.1-"] == 3
    at = sim_table("A", 6)
    dims = {str(e.key): e.dim for e in at.entries}
    assert dims["A.0.2+"] == dims["A.0.2-"] == 8
    assert dims["A.1.1+"] == dims["A.1.1-"] == 3


def test_n6_pm_split_orthogonal_and_sums():
    rng = np.random.default_rng(5)
    st = sim_table("C", 6)
    plus = st.entry(ModuleKey("C", 0, 3, None, "+"))
    minus = st.entry(ModuleKey("C", 0, 3, None, "-"))
    gram = plus.basis @ minus.basis.T
    assert np.abs(gram).max() < 1e-12
    # norms add for random class tensors
    t = random_class_tensor("C", 6, rng).ravel()
    c = st.coefficients(t)
    n_plus = np.linalg.norm(c[st.slices[plus.key]])
    n_minus = np.linalg.norm(c[st.slices[minus.key]])
    joint = np.vstack([plus.basis, minus.basis])
    proj = joint @ t
    assert abs(n_plus**2 + n_minus**2 - proj @ proj) < 1e-12


def test_refined_module_counting():
    """Index sets of refined modules match the direct-sum lists."""
    expected_C = {
        (2, 0): {0, 1, 2, 3},
        (1, 0): {0, 1},
        (1, 1): set(range(10)),
        (0, 0): {0},
        (0, 1): {0, 1, 2, 3},
        (0, 2): {0, 1, 2, 3},
        (0, 3): set(range(13)),
    }
    for n in (8, 9):
        m, eps = n_to_m_eps(n)
        keys = rob_module_keys("C", n)
        for (i, j), kset in expected_C.items():
            present = {k.k for k in keys if (k.i, k.j) == (i, j)}
            allowed = {k for k in kset if rob_module_dim("C", n, i, j, k) > 0}
            assert present == allowed, (n, i, j, present, allowed)
            # the full index set is exhausted at large m in odd dimension
            if n == 9:
                missing = kset - present
                for k in missing:
                    assert rob_module_dim("C", n, i, j, k) == 0


def test_grade_support():
    for n in (5, 6):
        for space in SPACES:
            for level, table in (("sim", sim_table(space, n)), ("rob", rob_table(space, n))):
                from robcls.modules import grade_mask

                for e in table.entries:
                    mask = grade_mask(n, RANK[space], e.grade).ravel()
                    for row in e.basis:
                        assert np.linalg.norm(row[~mask]) < 1e-11
