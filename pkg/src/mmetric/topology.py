"""Ball families on finite spaces and the topologies they generate.

Four ball families, each defined by a strict inequality expr(x, y) < eps
on a center x and radius eps > 0:

  asadi       sigma(x,y) - m_{x,y} < eps
  m_open      sigma(x,y) + sigma(y,y) - m_{x,y} - sigma(x,x) < eps
  induced_p   sigma(x,y) + M_{x,y} - m_{x,y} - sigma(x,x) < eps
              (the standard ball of the induced partial metric)
  standard_p  sigma(x,y) - sigma(x,x) < eps
              (only meaningful on partial metrics)

The strict inequalities are implemented exactly as written, with no
tolerance.  On a finite space the map eps -> ball(x, eps) is a step
function, so each center realizes finitely many distinct balls; radii at
midpoints between consecutive distinct expression values (plus one value
beyond the max) enumerate all of them exactly.  A subset is open iff each
of its members has some ball inside it; openness is decided exhaustively
over all 2^n subsets.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from mmetric import _kernels
from mmetric.axioms import DEFAULT_TOL, classify
from mmetric.errors import PreconditionError
from mmetric.spaces import FiniteSpace

TOPOLOGY_CAP = 15


class BallFamily(str, enum.Enum):
    ASADI = "asadi"
    M_OPEN = "m_open"
    INDUCED_P = "induced_p"
    STANDARD_P = "standard_p"


class TopologyRelation(str, enum.Enum):
    EQUAL = "equal"
    LEFT_STRICTLY_COARSER = "left_strictly_coarser"
    LEFT_STRICTLY_FINER = "left_strictly_finer"
    INCOMPARABLE = "incomparable"


class SeparationLevel(str, enum.Enum):
    NOT_T0 = "not_T0"
    T0_NOT_T1 = "T0_not_T1"
    T1 = "T1"


def _require_partial(space: FiniteSpace, tol: float, what: str) -> None:
    if not classify(space, tol).is_partial_metric:
        raise PreconditionError(f"{what} requires a partial metric space")


def ball_expression(space: FiniteSpace, family: BallFamily, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Matrix E with E[i, j] = the ball-defining expression for center i.

    Membership of point j in the radius-eps ball around i is E[i, j] < eps.
    """
    family = BallFamily(family)
    t = space.sigma_table
    diag = np.diag(t)
    m = np.minimum.outer(diag, diag)
    if family is BallFamily.ASADI:
        return t - m
    if family is BallFamily.M_OPEN:
        return t + diag[None, :] - m - diag[:, None]
    if family is BallFamily.INDUCED_P:
        return t + np.maximum.outer(diag, diag) - m - diag[:, None]
    _require_partial(space, tol, "the standard_p ball family")
    return t - diag[:, None]


def ball(
    space: FiniteSpace,
    family: BallFamily,
    x: str,
    eps: float,
    tol: float = DEFAULT_TOL,
) -> frozenset[str]:
    """The radius-eps ball around x: exactly {y : expr(x, y) < eps}, eps > 0."""
    if not eps > 0:
        raise PreconditionError(f"ball radius must be positive, got {eps}")
    row = ball_expression(space, family, tol)[space.index(x)]
    return frozenset(p for p, v in zip(space.points, row) if v < eps)


def candidate_radii(expr_row: np.ndarray) -> list[float]:
    """Positive radii realizing every distinct ball of one center.

    Midpoints between consecutive distinct expression values, plus one value
    past the max.  The center's own expression value is 0, so the list is
    never empty.
    """
    vals = sorted(set(float(v) for v in expr_row))
    radii = [(a + b) / 2.0 for a, b in zip(vals, vals[1:])]
    radii.append(vals[-1] + 1.0)
    return [r for r in radii if r > 0]


def _ball_masks(expr: np.ndarray, i: int) -> list[int]:
    row = expr[i]
    masks = []
    for eps in candidate_radii(row):
        mask = 0
        for j, v in enumerate(row):
            if v < eps:
                mask |= 1 << j
        if mask not in masks:
            masks.append(mask)
    return masks


@dataclass(frozen=True)
class FiniteTopology:
    """All open sets of one ball family on one finite space."""

    space: FiniteSpace
    family: BallFamily
    open_masks: tuple[int, ...]

    def labels(self, mask: int) -> frozenset[str]:
        return frozenset(p for j, p in enumerate(self.space.points) if mask >> j & 1)

    @property
    def open_sets(self) -> frozenset[frozenset[str]]:
        return frozenset(self.labels(m) for m in self.open_masks)

    def is_open(self, subset) -> bool:
        mask = 0
        for p in subset:
            mask |= 1 << self.space.index(p)
        return mask in set(self.open_masks)

    def __len__(self) -> int:
        return len(self.open_masks)

    def to_dict(self) -> dict:
        sets = [sorted(self.labels(m)) for m in self.open_masks]
        return {
            "family": self.family.value,
            "points": list(self.space.points),
            "open_sets": sorted(sets, key=lambda s: (len(s), s)),
        }


def generate_topology(
    space: FiniteSpace,
    family: BallFamily,
    tol: float = DEFAULT_TOL,
    cap: int = TOPOLOGY_CAP,
) -> FiniteTopology:
    """Enumerate every open set of the family's ball topology.

    Capped at ``cap`` points since all 2^n subsets are tested.
    """
    if space.n > cap:
        raise PreconditionError(f"topology enumeration capped at {cap} points, space has {space.n}")
    expr = ball_expression(space, family, tol)
    masks = [_ball_masks(expr, i) for i in range(space.n)]
    opens = _kernels.enumerate_open_sets(masks, space.n)
    return FiniteTopology(space=space, family=BallFamily(family), open_masks=tuple(opens))


@dataclass(frozen=True)
class TopologyComparison:
    """Exact set comparison of two topologies on the same space.

    ``only_in_left`` / ``only_in_right`` carry a witness open set present in
    one topology and absent from the other, when the relation is strict or
    incomparable.
    """

    relation: TopologyRelation
    only_in_left: frozenset[str] | None = None
    only_in_right: frozenset[str] | None = None

    def to_dict(self) -> dict:
        return {
            "relation": self.relation.value,
            "only_in_left": None if self.only_in_left is None else sorted(self.only_in_left),
            "only_in_right": None if self.only_in_right is None else sorted(self.only_in_right),
        }


def compare(
    space: FiniteSpace,
    fam_a: BallFamily,
    fam_b: BallFamily,
    tol: float = DEFAULT_TOL,
) -> TopologyComparison:
    """Relation of topology(fam_a) to topology(fam_b), left-to-right."""
    ta = generate_topology(space, fam_a, tol)
    tb = generate_topology(space, fam_b, tol)
    sa, sb = set(ta.open_masks), set(tb.open_masks)
    only_a = sorted(sa - sb)
    only_b = sorted(sb - sa)
    if not only_a and not only_b:
        return TopologyComparison(TopologyRelation.EQUAL)
    if not only_a:
        return TopologyComparison(
            TopologyRelation.LEFT_STRICTLY_COARSER, only_in_right=tb.labels(only_b[0])
        )
    if not only_b:
        return TopologyComparison(
            TopologyRelation.LEFT_STRICTLY_FINER, only_in_left=ta.labels(only_a[0])
        )
    return TopologyComparison(
        TopologyRelation.INCOMPARABLE,
        only_in_left=ta.labels(only_a[0]),
        only_in_right=tb.labels(only_b[0]),
    )


def separation(
    space: FiniteSpace,
    family: BallFamily,
    tol: float = DEFAULT_TOL,
) -> SeparationLevel:
    """Separation level of the generated topology, by definition.

    T0: every pair of distinct points is separated by some open set in at
    least one direction; T1: in both directions.
    """
    topo = generate_topology(space, family, tol)
    n = space.n
    sep = [[False] * n for _ in range(n)]
    for mask in topo.open_masks:
        for i in range(n):
            if not mask >> i & 1:
                continue
            for j in range(n):
                if i != j and not mask >> j & 1:
                    sep[i][j] = True
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if any(not sep[i][j] and not sep[j][i] for i, j in pairs):
        return SeparationLevel.NOT_T0
    if all(sep[i][j] and sep[j][i] for i, j in pairs):
        return SeparationLevel.T1
    return SeparationLevel.T0_NOT_T1


def asadi_finer_check(space: FiniteSpace, tol: float = DEFAULT_TOL) -> bool:
    """On a partial metric, whether the asadi topology refines standard_p.

    Always true; exposed as a checkable claim rather than assumed.
    """
    _require_partial(space, tol, "asadi_finer_check")
    t_asadi = generate_topology(space, BallFamily.ASADI, tol)
    t_std = generate_topology(space, BallFamily.STANDARD_P, tol)
    return set(t_std.open_masks) <= set(t_asadi.open_masks)
