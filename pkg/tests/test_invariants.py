"""Cross-cutting invariants: curvature symmetries on every catalog chart,
eigen-solver agreement, and hypothesis-driven tensor algebra properties."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robcls.catalog import ENTRIES
from robcls.chart import eigenstructure
from robcls.frames import random_lorentzian
from robcls.tensor import PointTensor, contract, raise_lower, skew, sym

VARIANTS = []
for name in sorted(ENTRIES):
    VARIANTS.append((name, None))
    if name == "robinson-trautman":
        VARIANTS.append((name, {"screen": "spheres"}))


def _random_domain_points(entry, params, count, rng):
    base = entry.sample_points(params)
    chart = entry.build(params)
    out = []
    attempts = 0
    while len(out) < count and attempts < 30 * count:
        attempts += 1
        pt = np.array(base[attempts % len(base)], dtype=float)
        pt = pt + rng.uniform(-0.3, 0.3, size=len(pt))
        if chart.contains(pt):
            out.append(pt)
    return out


@pytest.mark.parametrize("name,extra", VARIANTS)
def test_riemann_symmetries_and_bianchi(name, extra):
    entry = ENTRIES[name]
    params = dict(entry.default_params)
    if extra:
        params.update(extra)
    chart = entry.build(params)
    rng = np.random.default_rng(hash(name) % 2**31)
    for pt in _random_domain_points(entry, params, 20, rng):
        cp = chart.evaluate(pt)
        if cp.curvature_scale() < 1e-14:
            continue
        res = cp.riemann_symmetry_residuals()
        assert max(res.values()) < 1e-10, (name, pt, res)
        assert cp.second_bianchi_residual() < 1e-8, (name, pt)


def test_eigenvalues_match_dense_solver():
    rng = np.random.default_rng(4)
    for n in (4, 5, 6, 8):
        g = random_lorentzian(n, rng)
        phi = rng.standard_normal((n, n))
        phi = phi - phi.T
        es = eigenstructure(phi, g)
        ref = np.linalg.eigvals(np.linalg.inv(g) @ phi)
        a = np.sort_complex(np.round(es["eigenvalues"], 12))
        b = np.sort_complex(np.round(ref, 12))
        assert np.abs(a - b).max() < 1e-10


def test_degenerate_cky_eigenpattern():
    """A simple 2-form k wedge u with null k is rank 2 and nilpotent: the
    endomorphism is defective with every eigenvalue zero -- the degenerate
    pattern is reported rather than raised."""
    rng = np.random.default_rng(5)
    n = 6
    from robcls.frames import complete_null_frame, random_null_vector

    g = random_lorentzian(n, rng)
    fr = complete_null_frame(g, random_null_vector(g, rng))
    kb = g @ fr.k
    ub = g @ fr.screen[0]
    phi = np.outer(kb, ub) - np.outer(ub, kb)
    es = eigenstructure(phi, g)
    assert es["rank"] == 2
    assert np.abs(es["eigenvalues"]).max() < 1e-4
    assert es["defective"]
    # a spacelike simple form is semisimple by contrast
    vb = g @ fr.screen[1]
    psi = np.outer(vb, ub) - np.outer(ub, vb)
    es2 = eigenstructure(psi, g)
    assert not es2["defective"]
    nonzero = sorted((v for v in es2["eigenvalues"] if abs(v) > 1e-9), key=lambda z: z.imag)
    assert len(nonzero) == 2 and abs(nonzero[0] + nonzero[1]) < 1e-9


@st.composite
def small_tensor(draw, rank=2):
    n = draw(st.integers(min_value=2, max_value=5))
    vals = draw(
        st.lists(
            st.floats(min_value=-10, max_value=10, allow_nan=False),
            min_size=n**rank,
            max_size=n**rank,
        )
    )
    return PointTensor(n, "d" * rank, np.array(vals).reshape((n,) * rank))


@settings(max_examples=40, deadline=None)
@given(small_tensor(rank=3))
def test_skew_sym_projections(t):
    s1 = skew(t, (0, 1))
    assert np.abs(skew(s1, (0, 1)).components - s1.components).max() < 1e-12
    s2 = sym(t, (0, 1))
    assert np.abs(sym(s2, (0, 1)).components - s2.components).max() < 1e-12
    assert np.abs(sym(s1, (0, 1)).components).max() < 1e-12
    assert np.abs((s1.components + s2.components) - t.components).max() < 1e-10


@settings(max_examples=25, deadline=None)
@given(small_tensor(rank=3), st.integers(min_value=0, max_value=10**6))
def test_contract_bilinear(t, seed):
    rng = np.random.default_rng(seed)
    n = t.dim
    g = PointTensor(n, "dd", random_lorentzian(n, rng))
    a, b = 1.7, -0.4
    other = PointTensor(n, "ddd", rng.standard_normal((n,) * 3))
    lhs = contract(PointTensor(n, "ddd", a * t.components + b * other.components), 0, 2, g)
    rhs = a * contract(t, 0, 2, g).components + b * contract(other, 0, 2, g).components
    scale = max(np.abs(lhs.components).max(), np.abs(rhs).max(), 1.0)
    assert np.abs(lhs.components - rhs).max() < 1e-10 * scale


@settings(max_examples=25, deadline=None)
@given(small_tensor(rank=2), st.integers(min_value=0, max_value=10**6))
def test_raise_lower_round_trip_property(t, seed):
    rng = np.random.default_rng(seed)
    g = PointTensor(t.dim, "dd", random_lorentzian(t.dim, rng))
    up = raise_lower(t, 0, g)
    back = raise_lower(up, 0, g)
    assert np.abs(back.components - t.components).max() < 1e-9 * max(1.0, np.abs(t.components).max())
