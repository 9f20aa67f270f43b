"""Classification reports: stable JSON serialisation plus a shipped schema."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import __version__
from .frames import NullFrame
from .simclass import GradedDecomposition

CLAIMS = {
    "sim": "component norms of the graded decomposition under the stabiliser of the null line",
    "rob": "component norms of the refined decomposition under the stabiliser of the structure",
    "type": "null alignment type from the filtration of the Weyl tensor",
    "aligned": "alignment blocks C(N_perp, N_perp, N, N) = 0",
    "special": "special blocks C(N_perp, N_perp, N, .) = 0",
}


def _round(x):
    if isinstance(x, (float, np.floating)):
        return float(f"{float(x):.15g}")
    return x


@dataclass
class ClassificationReport:
    tool_version: str
    chart: str
    params: dict
    point: list
    tolerances: dict
    frame: dict | None = None
    robinson: dict | None = None
    sim_decomposition: dict = field(default_factory=dict)
    refined_flags: dict = field(default_factory=dict)
    weyl_type: dict | None = None
    predicates: dict = field(default_factory=dict)
    curvature: dict = field(default_factory=dict)
    seeds: dict = field(default_factory=dict)
    claims: dict = field(default_factory=lambda: dict(CLAIMS))
    indeterminate: list = field(default_factory=list)

    def to_dict(self) -> dict:
        def conv(obj):
            if isinstance(obj, dict):
                return {k: conv(v) for k, v in obj.items()}
            if isinstance(obj, (list, tuple)):
                return [conv(v) for v in obj]
            if isinstance(obj, (np.floating, float)):
                return _round(obj)
            if isinstance(obj, (np.integer,)):
                return int(obj)
            if isinstance(obj, np.ndarray):
                return conv(obj.tolist())
            if isinstance(obj, (bool, int, str)) or obj is None:
                return obj
            return str(obj)

        return conv(
            {
                "tool_version": self.tool_version,
                "chart": self.chart,
                "params": self.params,
                "point": self.point,
                "tolerances": self.tolerances,
                "frame": self.frame,
                "robinson": self.robinson,
                "sim_decomposition": self.sim_decomposition,
                "refined_flags": self.refined_flags,
                "weyl_type": self.weyl_type,
                "predicates": self.predicates,
                "curvature": self.curvature,
                "seeds": self.seeds,
                "claims": self.claims,
                "indeterminate": self.indeterminate,
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def frame_dict(frame: NullFrame) -> dict:
    return {
        "k": frame.k.tolist(),
        "l": frame.l.tolist(),
        "screen": [e.tolist() for e in frame.screen],
        "max_residual": float(frame.max_residual()),
    }


def decomposition_dict(dec: GradedDecomposition) -> dict:
    return {
        "modules": dec.summary(),
        "boost_weights": {str(k): v for k, v in dec.boost_weights().items()},
        "class_residual": dec.class_residual,
        "scale": dec.scale,
    }


def indeterminate_flags(dec: GradedDecomposition, factor: float = 10.0) -> list:
    """Flags whose residual sits within a factor of the threshold."""
    thr = dec.tol.threshold(dec.scale)
    out = []
    for key, comp in dec.components.items():
        if thr / factor <= comp.norm <= thr * factor:
            out.append(str(key))
    return out


def report_schema() -> dict:
    with resources.files("robcls").joinpath("report.schema.json").open("r") as fh:
        return json.load(fh)
