"""Metric charts and pointwise curvature via degree-3 jet arithmetic.

A chart supplies closed-form metric components evaluable on jets; one jet
pass per point yields third metric derivatives exactly to round-off, so
Christoffel symbols, Riemann, Ricci, Weyl, Schouten and Cotton-York
tensors (and first covariant derivatives of any of them) come out without
finite-difference noise.

Curvature conventions, fixed package-wide:

    R_{abd}{}^c V^d = 2 nabla_[a nabla_b] V^c
    R_{abde} = R_{abd}{}^c g_{ce},   Ric_ab = R_{acb}{}^c,   R = Ric^a_a

With this sign the round 2-sphere has scalar curvature -2/r^2 and the
Iwasawa nilmanifold +2, matching the worked values this engine reproduces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import jets as J
from .classes import metric_wedge_part, weyl_trace_part
from .tensor import skew_arr


@dataclass
class MetricChart:
    name: str
    dim: int
    signature: tuple
    coords: tuple
    g_fn: Callable  # list of coordinate Jets -> nested (n, n) of Jet entries
    domain: Callable | None = None  # point -> bool
    params: dict = field(default_factory=dict)

    def contains(self, point) -> bool:
        if self.domain is None:
            return True
        return bool(self.domain(np.asarray(point, dtype=float)))

    def evaluate(self, point) -> "ChartPoint":
        point = np.asarray(point, dtype=float)
        if point.shape != (self.dim,):
            raise ValueError(f"point must have {self.dim} coordinates")
        if not self.contains(point):
            raise DomainError(f"point {point.tolist()} outside the domain of chart '{self.name}'")
        return ChartPoint(self, point)


class DomainError(ValueError):
    pass


def _jet_contract(a: np.ndarray, b: np.ndarray, nvar: int, spec: str) -> np.ndarray:
    """einsum for jet arrays (last axis = coefficients), looped over the
    contracted indices to bound memory."""
    lhs, rhs = spec.split("->")
    s1, s2 = lhs.split(",")
    contracted = sorted(set(s1) & set(s2))
    out_idx = rhs
    # build by explicit loops over contracted labels (few, small ranges)
    n_axes = {c: a.shape[s1.index(c)] for c in s1 if c in contracted}
    out_shape = tuple(
        (a.shape[s1.index(c)] if c in s1 else b.shape[s2.index(c)]) for c in out_idx
    ) + (a.shape[-1],)
    out = np.zeros(out_shape, dtype=np.result_type(a.dtype, b.dtype))

    import itertools

    for combo in itertools.product(*[range(n_axes[c]) for c in contracted]):
        sel = dict(zip(contracted, combo))
        sl1 = tuple(sel.get(c, slice(None)) for c in s1) + (slice(None),)
        sl2 = tuple(sel.get(c, slice(None)) for c in s2) + (slice(None),)
        a_sub, b_sub = a[sl1], b[sl2]
        free1 = [c for c in s1 if c not in contracted]
        free2 = [c for c in s2 if c not in contracted]
        # broadcast the two pieces over the output layout
        shape1 = tuple(a_sub.shape[free1.index(c)] if c in free1 else 1 for c in out_idx) + (a.shape[-1],)
        shape2 = tuple(b_sub.shape[free2.index(c)] if c in free2 else 1 for c in out_idx) + (b.shape[-1],)
        perm1 = [free1.index(c) for c in out_idx if c in free1] + [a_sub.ndim - 1]
        perm2 = [free2.index(c) for c in out_idx if c in free2] + [b_sub.ndim - 1]
        out += J.jmul(
            np.transpose(a_sub, perm1).reshape(shape1),
            np.transpose(b_sub, perm2).reshape(shape2),
            nvar,
        )
    return out


class ChartPoint:
    """All curvature data of a chart at one point (lazy, cached)."""

    def __init__(self, chart: MetricChart, point: np.ndarray):
        self.chart = chart
        self.point = point
        self.n = chart.dim
        n = self.n
        x = J.jet_point(point, n)
        raw = chart.g_fn(x)
        G = J.stack_jets(raw, n)
        if np.iscomplexobj(G):
            if np.abs(G.imag).max() > 1e-10 * max(np.abs(G.real).max(), 1e-30):
                raise ValueError("metric function returned complex components")
            G = G.real
        if G.shape[:2] != (n, n):
            raise ValueError("metric function must return an n x n matrix")
        G = 0.5 * (G + np.swapaxes(G, 0, 1))
        self._G = G
        self.g = G[..., 0]
        if abs(np.linalg.det(self.g)) < 1e-12:
            raise DomainError(f"metric singular at {point.tolist()}")
        self.g_inv = np.linalg.inv(self.g)
        self._cache: dict = {}

    # --- jet-level building blocks ------------------------------------

    def _ginv_jets(self):
        if "ginv" not in self._cache:
            self._cache["ginv"] = J.jmatinv(self._G, self.n)
        return self._cache["ginv"]

    def _gamma_jets(self):
        if "gamma" not in self._cache:
            n = self.n
            dG = np.stack([J.jdiff(self._G, v, n) for v in range(n)])  # (d, a, b, M)
            tmp = np.transpose(dG, (1, 0, 2, 3)) + np.transpose(dG, (2, 1, 0, 3)) - dG
            # tmp[d, b, c] = d_b g_dc + d_c g_bd - d_d g_bc
            self._cache["gamma"] = 0.5 * _jet_contract(self._ginv_jets(), tmp, n, "ad,dbc->abc")
        return self._cache["gamma"]

    @property
    def christoffel(self) -> np.ndarray:
        """Gamma^a_{bc} values."""
        return J.jet_value(self._gamma_jets())

    def _riemann_jets(self):
        # R_{abd}{}^c as jets (degree >= 1 coefficients exact)
        if "riem" not in self._cache:
            n = self.n
            Gm = self._gamma_jets()
            dGm = np.stack([J.jdiff(Gm, v, n) for v in range(n)])  # (e, a, b, c, M) = d_e Gamma^a_bc
            term = np.transpose(dGm, (0, 2, 3, 1, 4))  # (a, b, d, c, M): d_a Gamma^c_{bd}
            curv = term - np.transpose(term, (1, 0, 2, 3, 4))
            quad = _jet_contract(Gm, Gm, n, "cae,ebd->abdc")
            curv = curv + quad - np.transpose(quad, (1, 0, 2, 3, 4))
            self._cache["riem"] = curv
        return self._cache["riem"]

    def _riemann_low_jets(self):
        if "riem_low" not in self._cache:
            self._cache["riem_low"] = _jet_contract(self._riemann_jets(), self._G, self.n, "abdc,ce->abde")
        return self._cache["riem_low"]

    @property
    def riemann(self) -> np.ndarray:
        """R_abcd, all lower indices."""
        return J.jet_value(self._riemann_low_jets())

    @property
    def ricci(self) -> np.ndarray:
        if "ricci" not in self._cache:
            self._cache["ricci"] = np.einsum("acbc->ab", J.jet_value(self._riemann_jets()))
        return self._cache["ricci"]

    def _ricci_jets(self):
        if "ricci_jets" not in self._cache:
            r = self._riemann_jets()
            self._cache["ricci_jets"] = np.einsum("acbcM->abM", r)
        return self._cache["ricci_jets"]

    @property
    def ricci_scalar(self) -> float:
        return float(np.einsum("ab,ab->", self.g_inv, self.ricci))

    @property
    def phi(self) -> np.ndarray:
        """Tracefree Ricci."""
        return self.ricci - (self.ricci_scalar / self.n) * self.g

    @property
    def weyl(self) -> np.ndarray:
        if "weyl" not in self._cache:
            n = self.n
            if n <= 3:
                raise ValueError("no Weyl tensor when n <= 3")
            self._cache["weyl"] = (
                self.riemann
                - (4.0 / (n - 2)) * weyl_trace_part(self.phi, self.g)
                - (2.0 / (n * (n - 1))) * self.ricci_scalar * metric_wedge_part(self.g)
            )
        return self._cache["weyl"]

    def curvature_parts(self) -> dict:
        """Weyl / tracefree-Ricci / scalar split of the Riemann tensor."""
        return {"weyl": self.weyl, "phi": self.phi, "scalar": self.ricci_scalar}

    def reassemble_riemann(self) -> np.ndarray:
        n = self.n
        return (
            self.weyl
            + (4.0 / (n - 2)) * weyl_trace_part(self.phi, self.g)
            + (2.0 / (n * (n - 1))) * self.ricci_scalar * metric_wedge_part(self.g)
        )

    @property
    def schouten(self) -> np.ndarray:
        n = self.n
        return (self.ricci - (self.ricci_scalar / (2.0 * (n - 1))) * self.g) / (n - 2)

    def _schouten_jets(self):
        n = self.n
        ric = self._ricci_jets()
        rs = _jet_contract(self._ginv_jets(), ric, n, "ab,ab->")
        return (ric - (1.0 / (2.0 * (n - 1))) * J.jmul(rs, self._G, n)) / (n - 2)

    def cotton_york(self, kappa: float = 1.0) -> np.ndarray:
        """A_abc = kappa * 2 nabla_[b P_c]a with P the Schouten tensor."""
        if "cotton" not in self._cache:
            n = self.n
            P = self._schouten_jets()
            dP = np.moveaxis(J.jet_gradient(P, n), -1, 0)  # (d, a, b) = d_d P_ab
            Pv = J.jet_value(P)
            Gm = self.christoffel
            nab = dP - np.einsum("eda,eb->dab", Gm, Pv) - np.einsum("edb,ae->dab", Gm, Pv)
            self._cache["cotton"] = np.einsum("bca->abc", nab) - np.einsum("cba->abc", nab)
        return kappa * self._cache["cotton"]

    @property
    def kretschmann(self) -> float:
        up = self.riemann
        for ax in range(4):
            up = np.moveaxis(np.tensordot(self.g_inv, up, axes=(1, ax)), 0, ax)
        return float(np.einsum("abcd,abcd->", self.riemann, up))

    def curvature_scale(self) -> float:
        return float(np.linalg.norm(self.riemann.ravel()))

    def riemann_symmetry_residuals(self) -> dict:
        r = self.riemann
        scale = max(np.abs(r).max(), 1e-300)
        return {
            "antisym_front": float(np.abs(r + np.transpose(r, (1, 0, 2, 3))).max() / scale),
            "antisym_back": float(np.abs(r + np.transpose(r, (0, 1, 3, 2))).max() / scale),
            "pair": float(np.abs(r - np.transpose(r, (2, 3, 0, 1))).max() / scale),
            "bianchi1": float(np.abs(skew_arr(r, (0, 1, 2))).max() / scale),
        }

    def second_bianchi_residual(self) -> float:
        n = self.n
        rl = self._riemann_low_jets()
        dR = np.moveaxis(J.jet_gradient(rl, n), -1, 0)  # (f, a, b, c, d) = d_f R_abcd
        Rv = self.riemann
        Gm = self.christoffel
        nab = (
            dR
            - np.einsum("efa,ebcd->fabcd", Gm, Rv)
            - np.einsum("efb,aecd->fabcd", Gm, Rv)
            - np.einsum("efc,abed->fabcd", Gm, Rv)
            - np.einsum("efd,abce->fabcd", Gm, Rv)
        )
        resid = skew_arr(nab, (0, 1, 2))
        scale = max(np.abs(nab).max(), np.abs(Gm).max() * np.abs(Rv).max(), 1e-300)
        return float(np.abs(resid).max() / scale)

    # --- fields ---------------------------------------------------------

    def eval_covector_field(self, fn) -> tuple:
        """(values, gradient) of a covector field alpha_a(x)."""
        n = self.n
        x = J.jet_point(self.point, n)
        comps = J.stack_jets(fn(x), n)
        return comps[..., 0], J.jet_gradient(comps, n)

    def eval_vector_field(self, fn) -> tuple:
        return self.eval_covector_field(fn)

    def covariant_derivative_covector(self, fn) -> np.ndarray:
        """nabla_a alpha_b for a covector field."""
        vals, grad = self.eval_covector_field(fn)
        Gm = self.christoffel
        return np.transpose(grad, (1, 0)) - np.einsum("eab,e->ab", Gm, vals)

    def covariant_derivative_form2(self, fn) -> np.ndarray:
        """nabla_a phi_bc for a 2-form field."""
        n = self.n
        x = J.jet_point(self.point, n)
        comps = J.stack_jets(fn(x), n)
        vals = comps[..., 0]
        grad = J.jet_gradient(comps, n)  # (b, c, a) = d_a phi_bc
        Gm = self.christoffel
        return (
            np.transpose(grad, (2, 0, 1))
            - np.einsum("eab,ec->abc", Gm, vals)
            - np.einsum("eac,be->abc", Gm, vals)
        )

    def covariant_derivative_vector(self, fn) -> np.ndarray:
        """nabla_a X^b for a vector field."""
        vals, grad = self.eval_vector_field(fn)
        Gm = self.christoffel
        return np.transpose(grad, (1, 0)) + np.einsum("bae,e->ab", Gm, vals)


def frame_field_bracket(chart: MetricChart, X_fn, Y_fn, point) -> np.ndarray:
    """[X, Y]^a = X^b d_b Y^a - Y^b d_b X^a at the point."""
    cp = chart.evaluate(point)
    xv, xg = cp.eval_vector_field(X_fn)
    yv, yg = cp.eval_vector_field(Y_fn)
    return np.einsum("b,ab->a", xv, yg) - np.einsum("b,ab->a", yv, xg)


# --------------------------------------------------------------------------
# distributions and integrability
# --------------------------------------------------------------------------


@dataclass
class DistributionSpec:
    """A complex plane distribution given by closed-form annihilator 1-forms.

    ``forms`` annihilate N; ``perp_forms`` annihilate the orthogonal
    complement (defaults to ``forms``: in even dimension N^perp = N).
    """

    name: str
    forms: list
    perp_forms: list | None = None

    def all_checks(self):
        checks = [("N", self.forms)]
        if self.perp_forms is not None:
            checks.append(("Nperp", self.perp_forms))
        return checks


def _span_from_forms(cp: ChartPoint, forms) -> np.ndarray:
    """Orthonormal basis (columns) of ker of the stacked form values."""
    rows = []
    for fn in forms:
        vals, _ = cp.eval_covector_field(fn)
        rows.append(np.asarray(vals, dtype=complex))
    A = np.array(rows)
    u, s, vt = np.linalg.svd(A)
    rank = int(np.sum(s > 1e-10 * max(s[0], 1e-300)))
    return vt[rank:].conj().T


def integrability_residual(chart: MetricChart, dist: DistributionSpec, point) -> dict:
    """Frobenius residuals: d(alpha)(X, Y) over X, Y in the kernel."""
    cp = chart.evaluate(point)
    out = {}
    for label, forms in dist.all_checks():
        span = _span_from_forms(cp, forms)
        worst = 0.0
        for fn in forms:
            vals, grad = cp.eval_covector_field(fn)
            # grad[b, a] = d_a alpha_b -> (d alpha)_{ab} = d_a alpha_b - d_b alpha_a
            dalpha = grad.T - grad
            scale = max(np.abs(dalpha).max(), np.abs(vals).max(), 1e-30)
            M = span.T @ dalpha.astype(complex) @ span
            worst = max(worst, float(np.abs(M).max() / scale))
        out[label] = worst
    return out


def is_integrable(chart: MetricChart, dist: DistributionSpec, points, tol: float = 1e-8) -> bool:
    """True when N and N^perp are in involution at every sampled point."""
    for p in points:
        res = integrability_residual(chart, dist, p)
        if max(res.values()) > tol:
            return False
    return True


def distribution_span(chart: MetricChart, dist: DistributionSpec, point) -> list:
    cp = chart.evaluate(point)
    span = _span_from_forms(cp, dist.forms)
    return [span[:, i] for i in range(span.shape[1])]


# --------------------------------------------------------------------------
# conformal Killing-Yano checker
# --------------------------------------------------------------------------


@dataclass
class CKYReport:
    residual: float
    tau: np.ndarray
    K: np.ndarray
    nabla_phi: np.ndarray


def check_cky(chart: MetricChart, phi_fn, point) -> CKYReport:
    """Residual of nabla_a phi_bc = tau_abc + 2 g_{a[b} K_{c]}."""
    cp = chart.evaluate(point)
    n = cp.n
    nab = cp.covariant_derivative_form2(phi_fn)
    phi_val = J.stack_jets(phi_fn(J.jet_point(cp.point, n)), n)[..., 0]
    if np.abs(phi_val + phi_val.T).max() > 1e-9 * max(np.abs(phi_val).max(), 1e-30):
        raise ValueError("phi is not antisymmetric")
    tau = skew_arr(nab, (0, 1, 2))
    K = np.einsum("ab,abc->c", cp.g_inv, nab) / (n - 1.0)
    model = tau + np.einsum("ab,c->abc", cp.g, K) - np.einsum("ac,b->abc", cp.g, K)
    resid = float(np.abs(nab - model).max() / max(np.abs(nab).max(), 1e-30))
    return CKYReport(resid, tau, K, nab)


def tau_degeneracy(cp_or_chart, dist: DistributionSpec, tau: np.ndarray, point=None) -> float:
    """max |tau(X, Y, Z)| over the N^perp spanning set (eq-tau condition)."""
    if isinstance(cp_or_chart, MetricChart):
        cp = cp_or_chart.evaluate(point)
    else:
        cp = cp_or_chart
    forms = dist.perp_forms if dist.perp_forms is not None else dist.forms
    span = _span_from_forms(cp, forms)
    t = tau.astype(complex)
    M = np.einsum("abc,ax,by,cz->xyz", t, span, span, span)
    return float(np.abs(M).max() / max(np.abs(tau).max(), 1e-30))


def eigenstructure(phi: np.ndarray, g: np.ndarray) -> dict:
    """Eigen-data of the endomorphism phi_a{}^b = g^{bc} phi_ac.

    Returns the vector spectrum, conjugate pairing into invariant planes,
    and the combinatorial pure-spinor spectrum with the quarter-weight
    normalisation (gamma_(a gamma_b) = g_ab conventions).
    """
    M = np.linalg.inv(g) @ phi  # left action; eigenvectors with nonzero
    # eigenvalue are automatically g-null since g M is antisymmetric
    vals, vecs = np.linalg.eig(M)
    order = np.lexsort((vals.imag, vals.real))
    vals = vals[order]
    vecs = vecs[:, order]
    # pair eigenvalues: real pairs (lam, -lam), imaginary conjugate pairs
    used = np.zeros(len(vals), dtype=bool)
    pairs = []
    for i, lam in enumerate(vals):
        if used[i]:
            continue
        used[i] = True
        if abs(lam) < 1e-10:
            pairs.append(("zero", lam, i, None))
            continue
        partner = None
        for j in range(len(vals)):
            if not used[j] and abs(vals[j] + lam) < 1e-8 * max(abs(lam), 1.0):
                partner = j
                break
        if partner is None:
            pairs.append(("unpaired", lam, i, None))
        else:
            used[partner] = True
            kind = "real" if abs(lam.imag) < 1e-9 * max(abs(lam), 1.0) else "imaginary"
            pairs.append((kind, lam, i, partner))
    lams = [p[1] for p in pairs if p[0] in ("real", "imaginary")]
    spinor = []
    if len(lams) <= 12:
        for mask in range(1 << len(lams)):
            tot = 0.0 + 0.0j
            for b, lam in enumerate(lams):
                tot += lam if (mask >> b) & 1 else -lam
            spinor.append(0.25 * tot)
    # defectiveness: eigenvector matrix nearly singular (Jordan blocks)
    try:
        cond = np.linalg.cond(vecs)
    except np.linalg.LinAlgError:
        cond = np.inf
    return {
        "eigenvalues": vals,
        "eigenvectors": vecs,
        "pairs": pairs,
        "pure_spinor_spectrum": np.array(sorted(spinor, key=lambda z: (round(z.real, 10), round(z.imag, 10)))),
        "defective": bool(cond > 1e8),
        "rank": int(np.linalg.matrix_rank(M, tol=1e-10 * max(np.abs(M).max(), 1e-300))),
    }
