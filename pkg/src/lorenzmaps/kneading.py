"""Itineraries and kneading sequences.

The itinerary of a point records, iterate by iterate, which side of the
discontinuity the orbit visits: '0' for the left branch, '1' for the
right.  The upper map resolves a visit to p itself as '1', the lower map
as '0'.  The kneading sequences of a map are the itineraries of p: alpha
under the lower map and beta under the upper map; for p strictly inside
(a, b) they start with '0' and '1' respectively.

Symbol words are plain '0'/'1' strings, so Python's string order is the
lexicographic order with 0 < 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, LengthMismatch, ModeError
from .maps import LOWER, UPPER, BranchPair, LorenzMap

LESS, EQUAL, GREATER = -1, 0, 1

#: below this distance a float orbit returning near p counts as a heuristic period
FLOAT_PERIOD_TOL = 1e-12


def _check_word(word: str) -> None:
    if word.strip("01"):
        raise DomainError(f"symbol words may contain only '0' and '1': {word!r}")


@dataclass(frozen=True)
class KneadingPair:
    """Finite kneading prefixes plus optionally detected orbit periods."""

    alpha: str
    beta: str
    alpha_period: int | None = None
    beta_period: int | None = None

    def __post_init__(self):
        _check_word(self.alpha)
        _check_word(self.beta)
        for word, period in ((self.alpha, self.alpha_period), (self.beta, self.beta_period)):
            if period is None:
                continue
            if period < 1:
                raise DomainError(f"period must be positive, got {period}")
            if any(word[k + period] != word[k] for k in range(len(word) - period)):
                raise DomainError(f"word {word!r} is not {period}-periodic")

    @property
    def length(self) -> int:
        return len(self.alpha)


def itinerary(m: LorenzMap, x, n: int) -> str:
    """First n itinerary symbols of x under m (n >= 1)."""
    if n < 1:
        raise DomainError("itinerary length must be >= 1")
    p = m.p
    symbols = []
    cur = x
    if m.side == UPPER:
        for k in range(n):
            symbols.append("1" if cur >= p else "0")
            if k + 1 < n:
                cur = m.apply(cur)
    else:
        for k in range(n):
            symbols.append("0" if cur <= p else "1")
            if k + 1 < n:
                cur = m.apply(cur)
    return "".join(symbols)


def kneading_prefixes(bp: BranchPair, p, n: int) -> KneadingPair:
    """Kneading prefixes alpha|n (lower map) and beta|n (upper map) at p.

    In exact mode the orbit periods up to n are certified and attached;
    in float mode both periods are left unset.
    """
    lower = LorenzMap(bp, p, LOWER)
    upper = LorenzMap(bp, p, UPPER)
    alpha = itinerary(lower, lower.p, n)
    beta = itinerary(upper, upper.p, n)
    alpha_period = beta_period = None
    if lower.is_exact:
        alpha_period = detect_period(bp, lower.p, LOWER, n)
        beta_period = detect_period(bp, upper.p, UPPER, n)
    return KneadingPair(alpha, beta, alpha_period, beta_period)


def detect_period(
    bp: BranchPair,
    p,
    side: str,
    n_max: int,
    certified: bool | None = None,
    tol: float = FLOAT_PERIOD_TOL,
) -> int | None:
    """Smallest n <= n_max with T^n(p) = p, or None.

    ``certified=True`` demands exact arithmetic (ModeError otherwise); the
    default certifies exactly when the map is exact.  In float mode the
    test is |T^n(p) - p| < tol and the result is only a candidate.
    """
    m = LorenzMap(bp, p, side)
    if certified is None:
        certified = m.is_exact
    if certified and not m.is_exact:
        raise ModeError("certified period detection needs exact rational arithmetic")
    x = m.p
    for k in range(1, n_max + 1):
        x = m.apply(x)
        if certified:
            if x == m.p:
                return k
        elif abs(x - m.p) < tol:
            return k
    return None


def compare_lex(u: str, v: str) -> int:
    """-1, 0 or +1 as u precedes, equals or follows v lexicographically."""
    _check_word(u)
    _check_word(v)
    if len(u) != len(v):
        raise LengthMismatch(f"word lengths differ: {len(u)} vs {len(v)}")
    return (u > v) - (u < v)
