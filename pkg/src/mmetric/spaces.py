"""Distance spaces: finite tables and functional (callable-backed) spaces.

Conventions used throughout the package, for a symmetric real-valued
distance ``sigma`` whose self-distances may be nonzero and even negative:

  m(x, y)   min of the two self-distances sigma(x,x), sigma(y,y)
  M(x, y)   max of the two self-distances (this quantity is occasionally
            misprinted as a min in the literature; every construction in
            this package requires the max)
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from mmetric.errors import MalformedSpaceError, UnknownPointError

# Plastic constant; its inverse powers drive the deterministic
# low-discrepancy sampler used for functional-space spot checks.
_PLASTIC = 1.324717957244746


def low_discrepancy_points(lo: float, hi: float, count: int) -> list[float]:
    """Deterministic low-discrepancy sample of ``count`` points in [lo, hi]."""
    a = 1.0 / _PLASTIC
    return [lo + (hi - lo) * ((0.5 + a * k) % 1.0) for k in range(count)]


def low_discrepancy_pairs(lo: float, hi: float, count: int) -> list[tuple[float, float]]:
    """Deterministic pair sample over [lo, hi]^2, interval corners first.

    Leading with the corners guarantees that boundary witnesses (the usual
    counterexamples to contraction bounds) are always sampled.
    """
    corners = [(lo, lo), (lo, hi), (hi, lo), (hi, hi)]
    out = corners[: max(0, min(4, count))]
    a1 = 1.0 / _PLASTIC
    a2 = 1.0 / (_PLASTIC * _PLASTIC)
    k = 0
    while len(out) < count:
        x = lo + (hi - lo) * ((0.5 + a1 * k) % 1.0)
        y = lo + (hi - lo) * ((0.5 + a2 * k) % 1.0)
        out.append((x, y))
        k += 1
    return out


class FiniteSpace:
    """Finite labeled point set with a symmetric real distance table.

    ``points`` is an ordered tuple of unique string labels (n >= 1);
    ``sigma_table`` is the n x n table with the self-distances on the
    diagonal.  Construction rejects non-square, non-finite, or asymmetric
    tables with a concrete witness.  Instances are immutable.
    """

    __slots__ = ("points", "_table", "_index")

    def __init__(self, points: Iterable[str], sigma: object):
        pts = tuple(str(p) for p in points)
        if not pts:
            raise MalformedSpaceError("a space needs at least one point")
        if len(set(pts)) != len(pts):
            raise MalformedSpaceError(f"duplicate point labels in {pts!r}")
        table = np.array(sigma, dtype=float)
        n = len(pts)
        if table.shape != (n, n):
            raise MalformedSpaceError(
                f"sigma table has shape {table.shape}, expected ({n}, {n})"
            )
        bad = np.argwhere(~np.isfinite(table))
        if bad.size:
            i, j = (int(v) for v in bad[0])
            raise MalformedSpaceError(
                f"non-finite entry sigma[{pts[i]!r},{pts[j]!r}] = {table[i, j]}"
            )
        mism = np.argwhere(table != table.T)
        if mism.size:
            i, j = (int(v) for v in mism[0])
            raise MalformedSpaceError(
                f"sigma not symmetric: sigma[{pts[i]!r},{pts[j]!r}] = {table[i, j]!r} "
                f"but sigma[{pts[j]!r},{pts[i]!r}] = {table[j, i]!r}"
            )
        table.setflags(write=False)
        self.points = pts
        self._table = table
        self._index = {p: i for i, p in enumerate(pts)}

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def sigma_table(self) -> np.ndarray:
        return self._table

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownPointError(f"unknown point {x!r}; labels are {self.points}") from None

    def sigma(self, x: str, y: str) -> float:
        return float(self._table[self.index(x), self.index(y)])

    def m(self, x: str, y: str) -> float:
        return min(self.sigma(x, x), self.sigma(y, y))

    def M(self, x: str, y: str) -> float:
        return max(self.sigma(x, x), self.sigma(y, y))

    def to_dict(self) -> dict:
        return {"points": list(self.points), "sigma": self._table.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "FiniteSpace":
        if not isinstance(data, dict) or "points" not in data or "sigma" not in data:
            raise MalformedSpaceError('space JSON needs "points" and "sigma" keys')
        return cls(data["points"], data["sigma"])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteSpace)
            and self.points == other.points
            and np.array_equal(self._table, other._table)
        )

    def __hash__(self) -> int:
        return hash((self.points, self._table.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteSpace(points={self.points!r}, n={self.n})"


def load_space(path: str) -> FiniteSpace:
    """Read a FiniteSpace from a JSON file ({"points": [...], "sigma": [[...]]})."""
    with open(path, "r", encoding="utf-8") as fh:
        return FiniteSpace.from_dict(json.load(fh))


def save_space(space: FiniteSpace, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(space.to_dict(), fh, sort_keys=True, indent=2)
        fh.write("\n")


@dataclass(frozen=True)
class RealInterval:
    """Closed real interval used as a functional-space domain."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or self.lo > self.hi:
            raise MalformedSpaceError(f"invalid interval [{self.lo}, {self.hi}]")


class FunctionalSpace:
    """Point domain with a callable symmetric distance.

    ``domain`` is either a RealInterval (real-scalar points) or an explicit
    tuple of points with equality.  ``lower_bound`` is a declared global
    lower bound on sigma, or None when undeclared.  ``complete`` is a
    declared flag: completeness of a space is asserted by the modeler, never
    computed.  Symmetry of sigma is spot-checked on sampled pairs at
    construction, not proven.
    """

    __slots__ = ("domain", "_sigma", "lower_bound", "complete", "name")

    def __init__(
        self,
        domain: RealInterval | Sequence,
        sigma: Callable[[object, object], float],
        lower_bound: float | None = None,
        complete: bool = False,
        name: str = "",
    ):
        self.domain = domain if isinstance(domain, RealInterval) else tuple(domain)
        self._sigma = sigma
        self.lower_bound = None if lower_bound is None else float(lower_bound)
        self.complete = bool(complete)
        self.name = name
        for x, y in self.sample_pairs(16):
            a, b = sigma(x, y), sigma(y, x)
            if abs(a - b) > 1e-9:
                raise MalformedSpaceError(
                    f"sigma not symmetric on sampled pair ({x!r}, {y!r}): {a!r} vs {b!r}"
                )

    @property
    def is_real_domain(self) -> bool:
        return isinstance(self.domain, RealInterval)

    def sigma(self, x, y) -> float:
        return float(self._sigma(x, y))

    def m(self, x, y) -> float:
        return min(self.sigma(x, x), self.sigma(y, y))

    def M(self, x, y) -> float:
        return max(self.sigma(x, x), self.sigma(y, y))

    def sample_points(self, count: int) -> list:
        if self.is_real_domain:
            return low_discrepancy_points(self.domain.lo, self.domain.hi, count)
        return list(self.domain)

    def sample_pairs(self, count: int) -> list[tuple]:
        if self.is_real_domain:
            return low_discrepancy_pairs(self.domain.lo, self.domain.hi, count)
        return [(x, y) for x in self.domain for y in self.domain]

    def __repr__(self) -> str:
        label = self.name or ("real" if self.is_real_domain else f"{len(self.domain)} points")
        return f"FunctionalSpace({label}, lower_bound={self.lower_bound}, complete={self.complete})"


Space = FiniteSpace | FunctionalSpace


def m_of(space: Space, x, y) -> float:
    """Min of the two self-distances sigma(x,x), sigma(y,y)."""
    return space.m(x, y)


def M_of(space: Space, x, y) -> float:
    """Max of the two self-distances sigma(x,x), sigma(y,y)."""
    return space.M(x, y)
