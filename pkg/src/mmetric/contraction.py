"""Function-level hypothesis certification on a map system.

A map system is a self-map f on a space together with a base point x0.
The checks here certify, to a finite depth, the hypotheses used by the
fixed-point engine:

  orbital c_r-contraction     geometric envelope on the orbit's
                              self-distances and consecutive distances
  orbital phi_r-contraction   modulus-function decay on all orbit pairs
  non-expansive               sigma(f(x), f(y)) <= sigma(x, y)
  bounded below by r0         r0 <= sigma(x, y) everywhere
  weak orbital continuity     f maps the orbit's special limit to a
                              (mere) limit of the same orbit

Certificates are finite-depth: they attest the inequalities up to the
stated depth, never for all indices.  Non-expansiveness is exhaustive
(hence exact) on finite spaces and sampled (documented as sampling, not
proof) on real-interval domains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

from mmetric.errors import PreconditionError, UnknownPointError, VerificationError
from mmetric.sequences import (
    DEFAULT_TOL as SEQ_TOL,
    DEFAULT_WINDOW,
    SequencePrefix,
    _limit_verdict,
    _require_cauchy,
    find_special_limit,
)
from mmetric.spaces import FiniteSpace, FunctionalSpace, Space

DEFAULT_DEPTH = 64
DEFAULT_TOL = 1e-9
DEFAULT_SAMPLES = 4096
_PHI_GRID = 256


@dataclass(frozen=True)
class MapSystem:
    """A self-map with a base point.  ``f`` is a callable or a label table."""

    space: Space
    f: Callable | Mapping
    x0: object
    name: str = ""

    def apply(self, x):
        if isinstance(self.f, Mapping):
            try:
                y = self.f[x]
            except KeyError:
                raise UnknownPointError(f"map table has no entry for {x!r}") from None
        else:
            y = self.f(x)
        if isinstance(self.space, FiniteSpace):
            self.space.index(y)
        return y

    def orbit(self, depth: int) -> tuple:
        """(x0, f(x0), ..., f^depth(x0)): depth+1 terms."""
        terms = [self.x0]
        for _ in range(depth):
            terms.append(self.apply(terms[-1]))
        return tuple(terms)

    def prefix(self, depth: int) -> SequencePrefix:
        return SequencePrefix(self.space, self.orbit(depth))


@dataclass(frozen=True)
class ContractionCertificate:
    """Finite-depth attestation of a contraction hypothesis.

    ``kind`` is "c_r", "phi_r", or "none"; violations is empty exactly when
    kind is not "none".  Each violation records the orbit indices involved
    and the violated (lhs, rhs) pair.
    """

    kind: str
    c: float | None = None
    r: float | None = None
    phi_name: str | None = None
    checked_depth: int = 0
    violations: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return self.kind != "none"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "c": self.c,
            "r": self.r,
            "phi": self.phi_name,
            "checked_depth": self.checked_depth,
            "violations": [list(v) for v in self.violations],
        }


@dataclass(frozen=True)
class PhiFunction:
    """A named modulus function for phi_r-contraction checks.

    Must be non-decreasing on [r, inf) with phi(r) = 0 and phi(t) > 0 for
    t > r.  Arbitrary callables cannot be trusted to meet those side
    conditions, so instances come from the registry constructors below and
    are re-validated on a grid before use.
    """

    name: str
    r: float
    fn: Callable[[float], float]

    def __call__(self, t: float) -> float:
        return float(self.fn(t))


def linear_phi(k: float, r: float = 0.0) -> PhiFunction:
    """phi(t) = (1 - k) * (t - r) for 0 <= k < 1."""
    if not 0 <= k < 1:
        raise PreconditionError(f"linear phi needs 0 <= k < 1, got {k}")
    return PhiFunction(f"linear(k={k})", r, lambda t: (1.0 - k) * (t - r))


def power_phi(scale: float, power: float = 1.0, r: float = 0.0) -> PhiFunction:
    """phi(t) = scale * (t - r) ** power for positive scale and power."""
    if scale <= 0 or power <= 0:
        raise PreconditionError(f"power phi needs positive scale and power, got {scale}, {power}")
    return PhiFunction(f"power(scale={scale},p={power})", r, lambda t: scale * max(t - r, 0.0) ** power)


def table_phi(points, r: float | None = None) -> PhiFunction:
    """Piecewise-linear interpolation through monotone (t, phi) pairs.

    The first pair must be (r, 0); values beyond the last knot extend
    linearly with the final segment's slope.
    """
    pts = sorted((float(t), float(v)) for t, v in points)
    if len(pts) < 2:
        raise PreconditionError("table phi needs at least two points")
    ts = [t for t, _ in pts]
    vs = [v for _, v in pts]
    if r is None:
        r = ts[0]
    if abs(ts[0] - r) > 0 or abs(vs[0]) > 0:
        raise PreconditionError(f"table phi must start at ({r}, 0), got ({ts[0]}, {vs[0]})")
    if any(b < a for a, b in zip(vs, vs[1:])):
        raise PreconditionError("table phi values must be non-decreasing")

    def interp(t: float) -> float:
        if t <= ts[0]:
            return vs[0]
        if t >= ts[-1]:
            slope = (vs[-1] - vs[-2]) / (ts[-1] - ts[-2]) if ts[-1] > ts[-2] else 0.0
            return vs[-1] + slope * (t - ts[-1])
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            if t0 <= t <= t1:
                if t1 == t0:
                    return v1
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        return vs[-1]

    return PhiFunction(f"table({len(pts)} pts)", r, interp)


PHI_REGISTRY: dict[str, Callable[..., PhiFunction]] = {
    "linear": linear_phi,
    "power": power_phi,
    "table": table_phi,
}


def validate_phi(phi: PhiFunction, span: float, tol: float = DEFAULT_TOL) -> None:
    """Grid-check phi's contract on [r, r + span]: phi(r) = 0, non-decreasing,
    strictly positive past r.  Raises PreconditionError on breach."""
    span = max(span, 1.0)
    step = span / _PHI_GRID
    grid = [phi.r + k * step for k in range(_PHI_GRID + 1)]
    vals = [phi(t) for t in grid]
    if abs(vals[0]) > tol:
        raise PreconditionError(f"phi({phi.r}) = {vals[0]}, expected 0")
    for t, (v0, v1) in zip(grid[1:], zip(vals, vals[1:])):
        if v1 < v0 - tol:
            raise PreconditionError(f"phi not non-decreasing near t={t}: {v0} -> {v1}")
    for t, v in zip(grid[1:], vals[1:]):
        if v <= tol:
            raise PreconditionError(f"phi({t}) = {v} is not strictly positive past r={phi.r}")


def check_c_r(
    sys: MapSystem,
    c: float,
    r: float,
    depth: int = DEFAULT_DEPTH,
    tol: float = DEFAULT_TOL,
) -> ContractionCertificate:
    """Certify the orbital c_r-contraction envelope up to ``depth``.

    For i = 0..depth, with base = |sigma(f(x0), x0)|, both displayed
    inequalities are checked:

        r <= sigma(f^{i+1} x0, f^{i+1} x0) <= r + c^i * base
        sigma(f^{i+2} x0, f^{i+1} x0)      <= r + c^{i+1} * base

    These constrain consecutive-index pairs only, unlike the all-pairs
    phi_r form.
    """
    if not 0 < c < 1:
        raise PreconditionError(f"c must lie in (0, 1), got {c}")
    if depth < 2:
        raise PreconditionError(f"depth must be >= 2, got {depth}")
    orbit = sys.orbit(depth + 2)
    sig = sys.space.sigma
    base = abs(sig(orbit[1], orbit[0]))
    violations = []
    for i in range(depth + 1):
        self_d = sig(orbit[i + 1], orbit[i + 1])
        bound = r + c**i * base
        if self_d < r - tol:
            violations.append((i + 1, i + 1, self_d, r))
        if self_d > bound + tol:
            violations.append((i + 1, i + 1, self_d, bound))
        cons = sig(orbit[i + 2], orbit[i + 1])
        bound_next = r + c ** (i + 1) * base
        if cons > bound_next + tol:
            violations.append((i + 2, i + 1, cons, bound_next))
    kind = "c_r" if not violations else "none"
    return ContractionCertificate(
        kind=kind, c=c, r=r, checked_depth=depth, violations=tuple(violations)
    )


def check_phi_r(
    sys: MapSystem,
    phi: PhiFunction,
    r: float,
    depth: int = DEFAULT_DEPTH,
    tol: float = DEFAULT_TOL,
) -> ContractionCertificate:
    """Certify the orbital phi_r-contraction inequality for all index pairs.

    For all 0 <= i <= j <= depth:

        r <= sigma(f^{i+1} x0, f^{j+1} x0)
             <= sigma(f^i x0, f^j x0) - phi(sigma(f^i x0, f^j x0))

    phi's own contract is grid-validated first; a breach there is a
    precondition error, not a certificate failure.
    """
    if abs(phi.r - r) > tol:
        raise PreconditionError(f"phi is anchored at r={phi.r}, check requested r={r}")
    orbit = sys.orbit(depth + 1)
    sig = sys.space.sigma
    pair_max = max(sig(a, b) for a in orbit for b in orbit)
    validate_phi(phi, span=pair_max - r, tol=tol)
    violations = []
    for i in range(depth + 1):
        for j in range(i, depth + 1):
            s = sig(orbit[i], orbit[j])
            s_next = sig(orbit[i + 1], orbit[j + 1])
            if s_next < r - tol:
                violations.append((i + 1, j + 1, s_next, r))
            if s < r - tol:
                # phi's domain starts at r; a base pair below it is itself a breach
                violations.append((i, j, s, r))
                continue
            bound = s - phi(max(s, r))
            if s_next > bound + tol:
                violations.append((i + 1, j + 1, s_next, bound))
    kind = "phi_r" if not violations else "none"
    return ContractionCertificate(
        kind=kind, r=r, phi_name=phi.name, checked_depth=depth, violations=tuple(violations)
    )


def _pair_iter(space: Space, samples: int):
    if isinstance(space, FiniteSpace):
        return [(x, y) for x in space.points for y in space.points]
    return space.sample_pairs(samples)


def nonexpansive_witness(
    sys: MapSystem,
    samples: int = DEFAULT_SAMPLES,
    tol: float = DEFAULT_TOL,
):
    """First sampled pair with sigma(f(x), f(y)) > sigma(x, y), or None."""
    sig = sys.space.sigma
    for x, y in _pair_iter(sys.space, samples):
        lhs = sig(sys.apply(x), sys.apply(y))
        rhs = sig(x, y)
        if lhs > rhs + tol:
            return (x, y, lhs, rhs)
    return None


def check_nonexpansive(
    sys: MapSystem,
    samples: int = DEFAULT_SAMPLES,
    tol: float = DEFAULT_TOL,
) -> bool:
    """sigma(f(x), f(y)) <= sigma(x, y) over all pairs (finite: exhaustive)."""
    return nonexpansive_witness(sys, samples, tol) is None


def check_bounded_below(space: Space, r0: float, tol: float = 0.0) -> bool:
    """Whether r0 is a global lower bound of sigma.

    Finite spaces take the exact table minimum; functional spaces compare
    against the declared lower bound and refuse to answer without one.
    """
    if isinstance(space, FiniteSpace):
        return float(space.sigma_table.min()) >= r0 - tol
    if space.lower_bound is None:
        raise PreconditionError("functional space has no declared lower bound")
    return space.lower_bound >= r0 - tol


def _weak_orbital_continuity(
    sys: MapSystem,
    seq: SequencePrefix,
    a,
    tol: float,
    window: int,
) -> bool:
    verdict = _require_cauchy(seq, window, tol)
    fa = sys.apply(a)
    lv = _limit_verdict(seq, fa, tol, window, verdict)
    if lv.is_limit:
        sig = sys.space.sigma
        saa, safa, sfafa = sig(a, a), sig(a, fa), sig(fa, fa)
        chain_ok = (
            abs(min(saa, sfafa) - saa) <= tol
            and saa <= safa + tol
            and safa <= sfafa + tol
        )
        if not chain_ok:
            raise VerificationError(
                "weak orbital continuity held but the self-distance chain "
                f"sigma(a,a) <= sigma(a,f(a)) <= sigma(f(a),f(a)) failed: "
                f"({saa}, {safa}, {sfafa})"
            )
    return lv.is_limit


def check_weak_orbital_continuity(
    sys: MapSystem,
    depth: int = DEFAULT_DEPTH,
    tol: float = SEQ_TOL,
    window: int = DEFAULT_WINDOW,
) -> bool:
    """Whether f maps the orbit's special limit to a limit of the orbit.

    f(a) is only required to pass the plain limit test, not the
    special-limit test.  Needs an r-Cauchy orbit with an identified special
    limit; raises PreconditionError otherwise.  When the check passes, the
    chain sigma(a,a) <= sigma(a,f(a)) <= sigma(f(a),f(a)) is asserted as a
    consequence.
    """
    seq = sys.prefix(depth)
    verdict = _require_cauchy(seq, window, tol)
    a = find_special_limit(seq, tol, window, verdict)
    if a is None:
        raise PreconditionError("no special limit identified on the orbit prefix")
    return _weak_orbital_continuity(sys, seq, a, tol, window)
