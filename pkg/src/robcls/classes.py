"""Curvature symmetry classes and their dense bases.

Four classes of tensors recur everywhere:

  G : 2-forms phi_ab
  F : symmetric tracefree Phi_ab
  A : Cotton-York class  A_abc = A_a[bc], A_[abc] = 0, A^a_ab = 0
  C : Weyl class         C_abcd = C_[ab][cd], C_[abc]d = 0, tracefree

Projectors work on plain ndarrays (real or complex) with an explicit
metric and effective dimension, so the same code serves the full
tangent space and the Euclidean screen subspace of a null frame.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .tensor import skew_arr, sym_arr

SPACES = ("G", "F", "A", "C")

RANK = {"G": 2, "F": 2, "A": 3, "C": 4}


def project_G(t: np.ndarray) -> np.ndarray:
    return skew_arr(t, (0, 1))


def project_F(t: np.ndarray, g: np.ndarray, g_inv: np.ndarray, dim: int) -> np.ndarray:
    s = sym_arr(t, (0, 1))
    tr = np.einsum("ab,ab->", g_inv, s)
    return s - (tr / dim) * g


def project_A(t: np.ndarray, g: np.ndarray, g_inv: np.ndarray, dim: int) -> np.ndarray:
    b = skew_arr(t, (1, 2))
    b = b - skew_arr(b, (0, 1, 2))
    tr = np.einsum("ab,abc->c", g_inv, b)
    trace_part = skew_arr(np.einsum("ab,c->abc", g, tr), (1, 2))
    # g_{a[b} t_{c]} carries trace (dim-1)/2 * t
    return b - (2.0 / (dim - 1)) * trace_part


def project_riemann(t: np.ndarray) -> np.ndarray:
    b = skew_arr(skew_arr(t, (0, 1)), (2, 3))
    b = 0.5 * (b + np.transpose(b, (2, 3, 0, 1)))
    return b - skew_arr(b, (0, 1, 2, 3))


def ricci_contraction(r: np.ndarray, g_inv: np.ndarray) -> np.ndarray:
    """rho_bd = g^{ac} R_abcd for a Riemann-class array."""
    return np.einsum("ac,abcd->bd", g_inv, r)


def weyl_trace_part(phi: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Phi_{[c|[a} g_{b]|d]} assembled explicitly."""
    return 0.25 * (
        np.einsum("ca,bd->abcd", phi, g)
        - np.einsum("da,bc->abcd", phi, g)
        - np.einsum("cb,ad->abcd", phi, g)
        + np.einsum("db,ac->abcd", phi, g)
    )


def metric_wedge_part(g: np.ndarray) -> np.ndarray:
    """g_{a[c} g_{d]b}."""
    return 0.5 * (np.einsum("ac,db->abcd", g, g) - np.einsum("ad,cb->abcd", g, g))


def project_C(t: np.ndarray, g: np.ndarray, g_inv: np.ndarray, dim: int) -> np.ndarray:
    r = project_riemann(t)
    rho = ricci_contraction(r, g_inv)
    rs = np.einsum("bd,bd->", g_inv, rho)
    phi = rho - (rs / dim) * g
    return r - (4.0 / (dim - 2)) * weyl_trace_part(phi, g) - (2.0 / (dim * (dim - 1))) * rs * metric_wedge_part(g)


def project_class(space: str, t: np.ndarray, g: np.ndarray, g_inv: np.ndarray, dim: int) -> np.ndarray:
    if space == "G":
        return project_G(t)
    if space == "F":
        return project_F(t, g, g_inv, dim)
    if space == "A":
        return project_A(t, g, g_inv, dim)
    if space == "C":
        return project_C(t, g, g_inv, dim)
    raise ValueError(f"unknown space {space!r}")


def class_dim(space: str, d: int) -> int:
    """Dimension of the symmetry class over R^d."""
    if space == "G":
        return d * (d - 1) // 2
    if space == "F":
        return d * (d + 1) // 2 - 1
    if space == "A":
        return d * (d * d - 4) // 3
    if space == "C":
        return d * (d + 1) * (d + 2) * (d - 3) // 12
    raise ValueError(f"unknown space {space!r}")


def orthonormal_rows(mat: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis of the row space (SVD-based, rank by relative gap)."""
    if mat.size == 0:
        return mat.reshape(0, mat.shape[-1])
    u, s, vt = np.linalg.svd(mat, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return vt[:0]
    rank = int(np.sum(s > tol * s[0]))
    return vt[:rank]


def _spanning_seeds(space: str, idx: list[int], n: int):
    """Elementary seed tensors supported on the index set, full n-dim arrays."""
    seeds = []
    rank = RANK[space]
    if space in ("G", "F"):
        for p, a in enumerate(idx):
            for b in idx[p:]:
                t = np.zeros((n,) * 2)
                t[a, b] = 1.0
                seeds.append(t)
    elif space == "A":
        for a in idx:
            for p, b in enumerate(idx):
                for c in idx[p + 1 :]:
                    t = np.zeros((n,) * 3)
                    t[a, b, c] = 1.0
                    seeds.append(t)
    elif space == "C":
        pairs = [(a, b) for p, a in enumerate(idx) for b in idx[p + 1 :]]
        for p, (a, b) in enumerate(pairs):
            for (c, d) in pairs[p:]:
                t = np.zeros((n,) * 4)
                t[a, b, c, d] = 1.0
                seeds.append(t)
    else:
        raise ValueError(space)
    return seeds


def class_basis(space: str, g: np.ndarray, g_inv: np.ndarray, idx: list[int] | None = None) -> np.ndarray:
    """Orthonormal basis (rows, flattened) of the class supported on ``idx``.

    ``idx`` defaults to all indices; passing the screen indices of a null
    frame with the screen metric in ``g`` yields the screen classes.
    """
    n = g.shape[0]
    if idx is None:
        idx = list(range(n))
    dim = len(idx)
    target = class_dim(space, dim)
    if target <= 0:
        return np.zeros((0, n ** RANK[space]))
    rows = []
    for seed in _spanning_seeds(space, idx, n):
        proj = project_class(space, seed, g, g_inv, dim)
        rows.append(proj.ravel())
    basis = orthonormal_rows(np.array(rows))
    if basis.shape[0] != target:
        raise RuntimeError(
            f"class basis {space} dim {dim}: got rank {basis.shape[0]}, expected {target}"
        )
    return basis


@lru_cache(maxsize=None)
def frame_metric(n: int) -> np.ndarray:
    """Constant metric in null-frame components: k.l = 1, screen = identity."""
    eta = np.zeros((n, n))
    eta[0, n - 1] = eta[n - 1, 0] = 1.0
    for i in range(1, n - 1):
        eta[i, i] = 1.0
    return eta


@lru_cache(maxsize=None)
def reference_class_basis(space: str, n: int) -> np.ndarray:
    """Class basis over the full space in null-frame components."""
    eta = frame_metric(n)
    return class_basis(space, eta, np.linalg.inv(eta))


@lru_cache(maxsize=None)
def screen_class_basis(space: str, n: int) -> np.ndarray:
    """Class basis supported on the screen slots 1..n-2 of the null frame."""
    eta = frame_metric(n)
    h = np.diag([0.0] + [1.0] * (n - 2) + [0.0])
    return class_basis(space, h, h, idx=list(range(1, n - 1)))


def random_class_tensor(space: str, n: int, rng: np.random.Generator) -> np.ndarray:
    """Random element of the class (frame components), roughly unit scale."""
    basis = reference_class_basis(space, n)
    coeff = rng.standard_normal(basis.shape[0])
    out = (coeff @ basis).reshape((n,) * RANK[space])
    return out / max(np.linalg.norm(out), 1e-300)
