"""r-Cauchy analysis, limits, and special limits of finite sequence prefixes.

A sequence is r-Cauchy when sigma(x_i, x_j) tends to a real r jointly in i
and j; r is its central distance.  A point a is a limit when
sigma(a, x_i) + sigma(x_i, x_i) - m_{a, x_i} tends to sigma(a, a), and a
special limit when additionally sigma(a, a) = r.  Limits need not be
unique; special limits are.

All verdicts here are finite-prefix approximations of asymptotic
statements, so they are three-valued: a tail window must settle within
``tol`` for r_cauchy, a demonstrated oscillation (two interleaved levels
separated by more than 3*tol) or a sustained level shift is required for
not_cauchy, and everything else is inconclusive.  The central distance is
estimated as the tail mean, which is less noise-sensitive than the last
value.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from mmetric.errors import (
    AmbiguousVerdictError,
    PreconditionError,
    UnknownPointError,
    VerificationError,
)
from mmetric.spaces import FiniteSpace, FunctionalSpace, Space

DEFAULT_WINDOW = 16
DEFAULT_TOL = 1e-6


class CauchyStatus(str, enum.Enum):
    R_CAUCHY = "r_cauchy"
    NOT_CAUCHY = "not_cauchy"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SequencePrefix:
    """A finite prefix of a sequence of points in a space."""

    space: Space
    terms: tuple

    def __post_init__(self):
        if len(self.terms) < 1:
            raise PreconditionError("sequence prefix must be nonempty")
        object.__setattr__(self, "terms", tuple(self.terms))
        if isinstance(self.space, FiniteSpace):
            for t in self.terms:
                self.space.index(t)
        else:
            for t in self.terms:
                if isinstance(t, (int, float)) and not math.isfinite(t):
                    raise PreconditionError(f"non-finite term {t!r}")

    def __len__(self) -> int:
        return len(self.terms)

    @classmethod
    def constant(cls, space: Space, point, length: int) -> "SequencePrefix":
        return cls(space, (point,) * length)


@dataclass(frozen=True)
class CauchyVerdict:
    """Tail verdict of a prefix.

    ``r`` is the estimated central distance when status is r_cauchy, else
    None.  ``tail_spread`` is max - min of sigma over the tail window pairs.
    ``diagnostics`` always carries ``r_hat``, ``max_dev``,
    ``consecutive_tail_mean`` and ``self_tail_mean``; on not_cauchy it adds
    ``oscillating_series`` and the two ``levels``; on r_cauchy it adds the
    tail residuals of the self-distance / pair-min / pair-max series, which
    are forced to r along with sigma itself.
    """

    status: CauchyStatus
    r: float | None
    tail_spread: float
    window: int
    diagnostics: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "r": self.r,
            "tail_spread": self.tail_spread,
            "window": self.window,
            "diagnostics": {k: _jsonable(v) for k, v in self.diagnostics.items()},
        }


def _jsonable(v):
    if isinstance(v, tuple):
        return list(v)
    return v


@dataclass(frozen=True)
class LimitVerdict:
    is_limit: bool
    is_special_limit: bool
    residual: float
    central_distance: float
    self_distance: float

    def to_dict(self) -> dict:
        return {
            "is_limit": self.is_limit,
            "is_special_limit": self.is_special_limit,
            "residual": self.residual,
            "central_distance": self.central_distance,
            "self_distance": self.self_distance,
        }


def _mean(vals) -> float:
    return math.fsum(vals) / len(vals)


def _spread(vals) -> float:
    return max(vals) - min(vals)


def cauchy_analyze(
    seq: SequencePrefix,
    window: int = DEFAULT_WINDOW,
    tol: float = DEFAULT_TOL,
) -> CauchyVerdict:
    """Estimate the central distance from the last ``window`` terms.

    r_cauchy when every pairwise sigma over the tail window deviates from
    the tail mean by at most tol; not_cauchy when either derived series
    (self-distances or consecutive distances) demonstrably oscillates
    between two separated levels over the doubled tail, or the two halves
    of the doubled tail are each tight but sit at different levels;
    inconclusive otherwise.  Needs at least 2*window terms.
    """
    n = len(seq.terms)
    if n < 2 * window:
        raise PreconditionError(f"prefix too short: {n} terms, need >= {2 * window}")
    sig = seq.space.sigma
    tail = seq.terms[n - window:]
    vals = [sig(a, b) for a in tail for b in tail]
    r_hat = _mean(vals)
    max_dev = max(abs(v - r_hat) for v in vals)
    tail_spread = _spread(vals)
    self_tail = [sig(t, t) for t in tail]
    cons_tail = [sig(seq.terms[i], seq.terms[i - 1]) for i in range(n - window, n)]
    diagnostics: dict = {
        "r_hat": r_hat,
        "max_dev": max_dev,
        "consecutive_tail_mean": _mean(cons_tail),
        "self_tail_mean": _mean(self_tail),
    }

    if max_dev <= tol:
        mins = [min(sig(a, a), sig(b, b)) for a in tail for b in tail]
        maxs = [max(sig(a, a), sig(b, b)) for a in tail for b in tail]
        diagnostics["self_distance_residual"] = max(abs(v - r_hat) for v in self_tail)
        diagnostics["pair_min_residual"] = max(abs(v - r_hat) for v in mins)
        diagnostics["pair_max_residual"] = max(abs(v - r_hat) for v in maxs)
        return CauchyVerdict(CauchyStatus.R_CAUCHY, r_hat, tail_spread, window, diagnostics)

    dbl = seq.terms[max(0, n - 2 * window):]
    series = {
        "self_distance": [sig(t, t) for t in dbl],
        "consecutive": [sig(dbl[i], dbl[i - 1]) for i in range(1, len(dbl))],
    }
    for name, s in series.items():
        evens, odds = s[0::2], s[1::2]
        if len(evens) < 2 or len(odds) < 2:
            continue
        if _spread(evens) <= tol and _spread(odds) <= tol:
            gap = abs(_mean(evens) - _mean(odds))
            if gap > 3 * tol:
                diagnostics["oscillating_series"] = name
                diagnostics["levels"] = tuple(sorted((_mean(evens), _mean(odds))))
                return CauchyVerdict(
                    CauchyStatus.NOT_CAUCHY, None, tail_spread, window, diagnostics
                )

    half = len(dbl) // 2
    first, second = dbl[:half], dbl[half:]
    v1 = [sig(a, b) for a in first for b in first]
    v2 = [sig(a, b) for a in second for b in second]
    m1, m2 = _mean(v1), _mean(v2)
    if (
        max(abs(v - m1) for v in v1) <= tol
        and max(abs(v - m2) for v in v2) <= tol
        and abs(m1 - m2) > 3 * tol
    ):
        diagnostics["oscillating_series"] = "level_shift"
        diagnostics["levels"] = tuple(sorted((m1, m2)))
        return CauchyVerdict(CauchyStatus.NOT_CAUCHY, None, tail_spread, window, diagnostics)

    return CauchyVerdict(CauchyStatus.INCONCLUSIVE, None, tail_spread, window, diagnostics)


def _check_point(space: Space, a) -> None:
    if isinstance(space, FiniteSpace):
        space.index(a)
    elif not isinstance(space, FunctionalSpace):
        raise UnknownPointError(f"cannot test membership of {a!r}")


def _limit_verdict(
    seq: SequencePrefix,
    a,
    tol: float,
    window: int,
    verdict: CauchyVerdict,
) -> LimitVerdict:
    sig = seq.space.sigma
    n = len(seq.terms)
    tail = seq.terms[n - window:]
    saa = sig(a, a)
    expr = [sig(a, x) + sig(x, x) - min(saa, sig(x, x)) for x in tail]
    residual = abs(_mean(expr) - saa)
    is_lim = residual <= tol
    is_special = is_lim and abs(saa - verdict.r) <= tol
    return LimitVerdict(
        is_limit=is_lim,
        is_special_limit=is_special,
        residual=residual,
        central_distance=verdict.r,
        self_distance=saa,
    )


def _require_cauchy(seq, window, tol) -> CauchyVerdict:
    verdict = cauchy_analyze(seq, window, tol)
    if verdict.status is not CauchyStatus.R_CAUCHY:
        raise PreconditionError(f"sequence is not r-Cauchy on this prefix ({verdict.status.value})")
    return verdict


def is_limit(
    seq: SequencePrefix,
    a,
    tol: float = DEFAULT_TOL,
    window: int = DEFAULT_WINDOW,
) -> LimitVerdict:
    """Test whether a is a limit (and a special limit) of the prefix.

    The limit residual is the distance of the tail mean of
    sigma(a, x_i) + sigma(x_i, x_i) - m_{a, x_i} from sigma(a, a); the
    special-limit test additionally requires sigma(a, a) to match the
    central distance within tol.
    """
    _check_point(seq.space, a)
    verdict = _require_cauchy(seq, window, tol)
    return _limit_verdict(seq, a, tol, window, verdict)


def special_limit_unique(
    seq: SequencePrefix,
    a,
    b,
    tol: float = DEFAULT_TOL,
    window: int = DEFAULT_WINDOW,
) -> bool:
    """Check that two verified special limits coincide.

    Special limits are unique, so this must return True; two distinct
    points both passing the special-limit test can only be a tolerance
    artifact and raises AmbiguousVerdictError instead of returning False.
    """
    verdict = _require_cauchy(seq, window, tol)
    for name, p in (("a", a), ("b", b)):
        lv = _limit_verdict(seq, p, tol, window, verdict)
        if not lv.is_special_limit:
            raise PreconditionError(
                f"point {name}={p!r} is not a verified special limit (residual {lv.residual})"
            )
    if _same_point(seq.space, a, b, tol):
        return True
    raise AmbiguousVerdictError(
        f"distinct points {a!r} and {b!r} both pass the special-limit test at tol={tol}; "
        "this contradicts uniqueness and marks a tolerance boundary"
    )


def _same_point(space: Space, a, b, tol: float) -> bool:
    if isinstance(space, FiniteSpace):
        return a == b
    if isinstance(a, (int, float)) and isinstance(b, (int, float)):
        return a == b or abs(a - b) <= tol
    return a == b


def limit_transfer(
    seq: SequencePrefix,
    a,
    y,
    tol: float = DEFAULT_TOL,
    window: int = DEFAULT_WINDOW,
) -> tuple[float, float]:
    """Distance-to-orbit transfer at a special limit.

    Returns the pair (tail mean of sigma(y, x_i) - m_{y, x_i},
    sigma(y, a) - m_{y, a}); the two agree within tol for a verified
    special limit a.  As a verification pass, the tail means of
    M_{a, x_i}, m_{a, x_i} and sigma(a, x_i) are asserted to be within
    4*tol of sigma(a, a) (the factor absorbs compounding of the window
    tolerance); a breach raises VerificationError.
    """
    _check_point(seq.space, a)
    _check_point(seq.space, y)
    verdict = _require_cauchy(seq, window, tol)
    lv = _limit_verdict(seq, a, tol, window, verdict)
    if not lv.is_special_limit:
        raise PreconditionError(f"{a!r} is not a verified special limit (residual {lv.residual})")
    sig = seq.space.sigma
    n = len(seq.terms)
    tail = seq.terms[n - window:]
    saa = sig(a, a)
    for label, vals in (
        ("max_self_distance", [max(saa, sig(x, x)) for x in tail]),
        ("min_self_distance", [min(saa, sig(x, x)) for x in tail]),
        ("distance_to_limit", [sig(a, x) for x in tail]),
    ):
        dev = abs(_mean(vals) - saa)
        if dev > 4 * tol:
            raise VerificationError(
                f"special-limit consequence failed: tail {label} deviates from "
                f"sigma(a,a) by {dev} (> 4*tol)"
            )
    lhs = _mean([sig(y, x) - min(sig(y, y), sig(x, x)) for x in tail])
    rhs = sig(y, a) - min(sig(y, y), saa)
    return lhs, rhs


def find_special_limit(
    seq: SequencePrefix,
    tol: float = DEFAULT_TOL,
    window: int = DEFAULT_WINDOW,
    verdict: CauchyVerdict | None = None,
):
    """Locate the special limit of an r-Cauchy prefix, or None.

    Finite spaces (and finite functional domains) are scanned exhaustively;
    more than one hit contradicts uniqueness and raises
    AmbiguousVerdictError.  On a real-interval domain the only candidate is
    the last iterate, accepted when it passes the limit test and its
    self-distance matches the central distance; there is no constructive
    limit extraction, so self-consistency is the honest criterion.
    """
    if verdict is None:
        verdict = _require_cauchy(seq, window, tol)
    elif verdict.status is not CauchyStatus.R_CAUCHY:
        raise PreconditionError("verdict is not r_cauchy")
    space = seq.space
    if isinstance(space, FiniteSpace):
        candidates = space.points
    elif not space.is_real_domain:
        candidates = space.domain
    else:
        a = seq.terms[-1]
        lv = _limit_verdict(seq, a, tol, window, verdict)
        return a if lv.is_special_limit else None
    hits = [p for p in candidates if _limit_verdict(seq, p, tol, window, verdict).is_special_limit]
    if not hits:
        return None
    if len(hits) > 1:
        raise AmbiguousVerdictError(
            f"{len(hits)} points pass the special-limit test at tol={tol}: {hits!r}"
        )
    return hits[0]
