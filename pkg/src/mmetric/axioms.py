"""Axiom classification and derived distance structures.

A finite table is checked against three nested axiom systems:

  m-metric        (sigma-lbnd) m_{x,y} <= sigma(x,y)
                  (sigma-sym)  sigma(x,y) = sigma(y,x)
                  (sigma-sep)  sigma(x,x) = sigma(x,y) = sigma(y,y) iff x = y
                  (sigma-inq)  sigma(x,y) - m_{x,y} <= sigma(x,z) - m_{x,z}
                                                     + sigma(z,y) - m_{z,y}
  partial metric  (p-lbnd)     sigma(x,x) <= sigma(x,y)
                  (p-sym), (p-sep) as above
                  (p-inq)      sigma(x,y) <= sigma(x,z) + sigma(z,y) - sigma(z,z)
  metric          partial-metric axioms plus zero self-distance everywhere

Every partial metric is an m-metric and every metric is a partial metric;
``classify`` reports the strongest label whose full axiom set passed, with a
concrete witness for each failing axiom.  Negative values are allowed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from mmetric import _kernels
from mmetric.errors import PreconditionError
from mmetric.spaces import FiniteSpace

DEFAULT_TOL = 1e-9

SIGMA_AXIOMS = ("sigma_lbnd", "sigma_sym", "sigma_sep", "sigma_inq")
P_AXIOMS = ("p_lbnd", "p_sym", "p_sep", "p_inq")
METRIC_AXIOMS = P_AXIOMS + ("zero_diag",)


class SpaceClass(str, enum.Enum):
    METRIC = "metric"
    PARTIAL_METRIC = "partial_metric"
    M_METRIC = "m_metric"
    NONE = "none"


@dataclass(frozen=True)
class AxiomWitness:
    """Concrete counterexample: the points involved and the values compared.

    Value layout per axiom:
      *_lbnd      (sigma(x,y), bound)        for sigma_lbnd; (sigma(x,x), sigma(x,y)) for p_lbnd
      *_sym       (sigma(x,y), sigma(y,x))
      *_sep       (sigma(x,x), sigma(x,y), sigma(y,y))
      *_inq       (lhs, rhs) of the violated inequality, points are (x, y, z)
      zero_diag   (sigma(x,x),)
    """

    points: tuple[str, ...]
    values: tuple[float, ...]

    def to_dict(self) -> dict:
        return {"points": list(self.points), "values": list(self.values)}


@dataclass(frozen=True)
class AxiomResult:
    passed: bool
    witness: AxiomWitness | None = None

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


@dataclass(frozen=True)
class ClassificationReport:
    space_class: SpaceClass
    axioms: dict[str, AxiomResult] = field(default_factory=dict)
    tol: float = DEFAULT_TOL

    @property
    def is_m_metric(self) -> bool:
        return all(self.axioms[a].passed for a in SIGMA_AXIOMS)

    @property
    def is_partial_metric(self) -> bool:
        return all(self.axioms[a].passed for a in P_AXIOMS)

    @property
    def is_metric(self) -> bool:
        return all(self.axioms[a].passed for a in METRIC_AXIOMS)

    def to_dict(self) -> dict:
        return {
            "class": self.space_class.value,
            "tol": self.tol,
            "axioms": {name: res.to_dict() for name, res in self.axioms.items()},
        }


def _witness(space: FiniteSpace, raw: tuple | None, n_points: int) -> AxiomWitness | None:
    if raw is None:
        return None
    idx = raw[:n_points]
    vals = raw[n_points:]
    return AxiomWitness(
        points=tuple(space.points[i] for i in idx),
        values=tuple(float(v) for v in vals),
    )


def classify(space: FiniteSpace, tol: float = DEFAULT_TOL) -> ClassificationReport:
    """Exhaustively check every axiom instance and return the strongest class.

    All pairs are scanned for the lbnd/sym/sep axioms and all ordered
    triples for the two triangle-style inequalities.  Inequalities receive
    ``tol`` of absolute slack; the equality in the separation axiom and the
    zero-diagonal check use the same tolerance.
    """
    if tol < 0:
        raise PreconditionError(f"tol must be nonnegative, got {tol}")
    raw = _kernels.scan_axioms(space.sigma_table, float(tol))
    axioms = {
        "sigma_lbnd": AxiomResult(raw["sigma_lbnd"] is None, _witness(space, raw["sigma_lbnd"], 2)),
        "sigma_sym": AxiomResult(raw["sym"] is None, _witness(space, raw["sym"], 2)),
        "sigma_sep": AxiomResult(raw["sep"] is None, _witness(space, raw["sep"], 2)),
        "sigma_inq": AxiomResult(raw["sigma_inq"] is None, _witness(space, raw["sigma_inq"], 3)),
        "p_lbnd": AxiomResult(raw["p_lbnd"] is None, _witness(space, raw["p_lbnd"], 2)),
        "p_sym": AxiomResult(raw["sym"] is None, _witness(space, raw["sym"], 2)),
        "p_sep": AxiomResult(raw["sep"] is None, _witness(space, raw["sep"], 2)),
        "p_inq": AxiomResult(raw["p_inq"] is None, _witness(space, raw["p_inq"], 3)),
        "zero_diag": AxiomResult(raw["zero_diag"] is None, _witness(space, raw["zero_diag"], 1)),
    }
    if all(axioms[a].passed for a in METRIC_AXIOMS):
        cls = SpaceClass.METRIC
    elif all(axioms[a].passed for a in P_AXIOMS):
        cls = SpaceClass.PARTIAL_METRIC
    elif all(axioms[a].passed for a in SIGMA_AXIOMS):
        cls = SpaceClass.M_METRIC
    else:
        cls = SpaceClass.NONE
    return ClassificationReport(space_class=cls, axioms=axioms, tol=tol)


def _require_m_metric(space: FiniteSpace, tol: float, op: str) -> ClassificationReport:
    report = classify(space, tol)
    if not report.is_m_metric:
        failing = [a for a in SIGMA_AXIOMS if not report.axioms[a].passed]
        raise PreconditionError(f"{op} requires an m-metric; failing axioms: {failing}")
    return report


def sigma_star(space: FiniteSpace, tol: float = DEFAULT_TOL) -> FiniteSpace:
    """The candidate metric sigma*(x,y) = sigma(x,y) - m_{x,y}, zero diagonal.

    Not a metric in general (the separation axiom can fail); it is
    guaranteed to be one exactly when the input is a partial metric.
    The caller decides by re-classifying the result.
    """
    _require_m_metric(space, tol, "sigma_star")
    t = space.sigma_table
    diag = np.diag(t)
    star = t - np.minimum.outer(diag, diag)
    np.fill_diagonal(star, 0.0)
    return FiniteSpace(space.points, star)


def induce_partial(space: FiniteSpace, tol: float = DEFAULT_TOL) -> FiniteSpace:
    """The induced partial metric sigma(x,y) + M_{x,y} - m_{x,y}.

    Always classifies as a partial metric when the input is an m-metric;
    self-distances are preserved.
    """
    _require_m_metric(space, tol, "induce_partial")
    t = space.sigma_table
    diag = np.diag(t).copy()
    p = t + np.maximum.outer(diag, diag) - np.minimum.outer(diag, diag)
    np.fill_diagonal(p, diag)
    return FiniteSpace(space.points, p)


def min_max_inequality_check(a: float, b: float, c: float, tol: float = 0.0) -> bool:
    """Truth of both envelope inequalities for the triple (a, b, c):

        min(c,a) + min(c,b) <= c + min(a,b)
        c + max(a,b) <= max(c,a) + max(c,b)

    Holds for all reals; exposed so property suites can hammer it directly.
    """
    lo = min(c, a) + min(c, b) <= c + min(a, b) + tol
    hi = c + max(a, b) <= max(c, a) + max(c, b) + tol
    return lo and hi
