"""Dimension-table verification and diagram arrow/leak checks.

Module dimensions are verified as numerical ranks of the projection
operators restricted to the full symmetry class, at one Minkowski point
with one fixed frame (dimensions are pointwise-algebraic; a second random
configuration acts as a consistency guard).

The diagrams are verified through the action of the grade-lowering part
of the algebra: null rotations about l, acting algebraically to first
order on tensors.  A representative of a module may only produce
components in its arrow targets; any other nonzero component is a leak.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classes import RANK, class_dim, frame_metric, reference_class_basis
from .frames import NullFrame
from .graphs import graph_arrows
from .modules import ModuleKey, n_to_m_eps, rob_module_dim, rob_table, sim_module_dim, sim_table
from .simclass import decompose


def reference_frame(n: int) -> NullFrame:
    eta = frame_metric(n)
    eye = np.eye(n)
    return NullFrame(eta, eye[0], eye[n - 1], tuple(eye[1 : n - 1]))


def symmetry_basis(space: str, n: int) -> np.ndarray:
    """Orthonormal basis of the symmetry class (frame components, rows)."""
    return reference_class_basis(space, n)


@dataclass
class DimCheck:
    key: ModuleKey
    n: int
    formula_dim: int
    computed_dim: int
    stable: bool
    gap: float

    @property
    def match(self) -> bool:
        return self.formula_dim == self.computed_dim and self.stable


def computed_module_dim(space: str, n: int, key: ModuleKey, level: str, sigma_tol: float = 1e-8) -> DimCheck:
    """Rank of T -> Pi_key(T) over the symmetry class, via singular values."""
    table = sim_table(space, n) if level == "sim" else rob_table(space, n)
    entry = table.entry(key)
    basis = symmetry_basis(space, n)
    # coefficients of each class-basis element in the module
    coeffs = basis @ entry.basis.T
    s = np.linalg.svd(coeffs, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        rank, stable, gap = 0, True, np.inf
    else:
        thr = sigma_tol * s[0]
        rank = int(np.sum(s > thr))
        below = s[s <= thr]
        above = s[s > thr]
        gap = float((above.min() if above.size else np.inf) / max(below.max() if below.size else 0.0, 1e-300))
        stable = gap > 10.0
    formula = (
        sim_module_dim(space, n, key.i, key.j, key.pm)
        if level == "sim"
        else rob_module_dim(space, n, key.i, key.j, key.k)
    )
    return DimCheck(key, n, formula, rank, stable, gap)


def all_dim_checks(space: str, n: int, level: str) -> list[DimCheck]:
    table = sim_table(space, n) if level == "sim" else rob_table(space, n)
    return [computed_module_dim(space, n, e.key, level) for e in table.entries]


# --------------------------------------------------------------------------
# nilpotent action and arrow/leak verification
# --------------------------------------------------------------------------


def lowering_action(T: np.ndarray, frame: NullFrame, z: np.ndarray) -> np.ndarray:
    """First-order change of T under the null rotation about l with parameter z.

    The generator is psi_ab = 2 l_[a z_b] (z a screen covector built from
    the coefficients ``z``); it lowers the grade by exactly one.
    """
    g = frame.g
    g_inv = np.linalg.inv(g)
    lb = g @ frame.l
    zv = sum(z[i] * frame.screen[i] for i in range(len(frame.screen)))
    zb = g @ zv
    psi = np.outer(lb, zb) - np.outer(zb, lb)
    P = g_inv @ psi  # psi^b_a
    out = np.zeros_like(T)
    for s in range(T.ndim):
        out -= np.moveaxis(np.tensordot(P, T, axes=(0, s)), 0, s)
    return out


@dataclass
class ArrowCheck:
    source: ModuleKey
    target: ModuleKey
    is_arrow: bool
    max_component: float

    @property
    def ok(self) -> bool:
        if self.is_arrow:
            return self.max_component > 1e-7
        return self.max_component < 1e-10


def paper_arrow_set(space: str, n: int, level: str) -> set:
    """Arrows transcribed from the published diagrams (n = 6 splits expanded)."""
    table = sim_table(space, n) if level == "sim" else rob_table(space, n)
    present = {e.key for e in table.entries}

    def expand(key: ModuleKey):
        if level == "sim" and key.pm is None:
            return [k for k in present if (k.i, k.j) == (key.i, key.j)]
        return [k for k in present if k == key]

    arrow_set = set()
    for a, b in graph_arrows(space, n, level):
        for src in expand(a):
            for dst in expand(b):
                arrow_set.add((src, dst))
    return arrow_set


_ARROW_CACHE: dict = {}


def computed_arrow_set(space: str, n: int, level: str, tol: float = 1e-8) -> set:
    """Exact arrow set: (src -> dst) iff the lowering action maps the source
    module onto a nonzero piece of the target module.

    The action is bilinear in (screen direction, source element), so running
    over basis pairs decides each arrow exactly.
    """
    cache_key = (space, n, level)
    if cache_key in _ARROW_CACHE:
        return _ARROW_CACHE[cache_key]
    frame = reference_frame(n)
    table = sim_table(space, n) if level == "sim" else rob_table(space, n)
    lowered: dict = {}
    for e in table.entries:
        imgs = []
        for row in e.basis:
            T = row.reshape((n,) * RANK[space])
            for d in range(n - 2):
                z = np.zeros(n - 2)
                z[d] = 1.0
                dT = lowering_action(T, frame, z)
                imgs.append(dT.ravel())
        lowered[e.key] = np.array(imgs)
    out = set()
    for e in table.entries:
        imgs = lowered[e.key]
        scale = max(np.abs(imgs).max(), 1e-300)
        for t in table.entries:
            if t.grade != e.grade - 1:
                continue
            comp = imgs @ t.basis.T
            if np.abs(comp).max() > tol * scale:
                out.add((e.key, t.key))
    _ARROW_CACHE[cache_key] = out
    return out


def paper_arrow_delta(space: str, n: int, level: str) -> dict:
    """Compare published diagrams against the exact arrow sets."""
    paper = paper_arrow_set(space, n, level)
    exact = computed_arrow_set(space, n, level)
    return {
        "missing_from_paper": sorted((str(a), str(b)) for (a, b) in exact - paper),
        "spurious_in_paper": sorted((str(a), str(b)) for (a, b) in paper - exact),
    }


def nilpotent_action_check(
    space: str,
    n: int,
    level: str,
    samples: int = 10,
    rng_seed: int = 5,
    arrows: str = "computed",
) -> list[ArrowCheck]:
    """Verify every arrow is realised and every non-arrow never leaks."""
    frame = reference_frame(n)
    table = sim_table(space, n) if level == "sim" else rob_table(space, n)
    arrow_set = computed_arrow_set(space, n, level) if arrows == "computed" else paper_arrow_set(space, n, level)
    rng = np.random.default_rng(rng_seed)
    records: dict = {}
    for e in table.entries:
        targets = [t for t in table.entries if t.grade == e.grade - 1]
        if not targets:
            continue
        for _ in range(samples):
            coeff = rng.standard_normal(e.dim)
            T = (coeff @ e.basis).reshape((n,) * RANK[space])
            T /= max(np.linalg.norm(T), 1e-300)
            z = rng.standard_normal(n - 2)
            z /= np.linalg.norm(z)
            dT = lowering_action(T, frame, z)
            dec = decompose(space, frame.from_frame(dT), frame, level)
            for t in targets:
                val = dec.norm(t.key)
                rec = records.setdefault((e.key, t.key), 0.0)
                records[(e.key, t.key)] = max(rec, val)
    out = []
    for (src, dst), val in sorted(records.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))):
        out.append(ArrowCheck(src, dst, (src, dst) in arrow_set, val))
    return out
