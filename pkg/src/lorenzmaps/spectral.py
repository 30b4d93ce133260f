"""Entropy from the largest root of the truncated kneading series.

For kneading sequences alpha and beta the series

    xi(x) = sum_{k>=0} (beta_k - alpha_k) x^{-k}

converges for x > 1, and exp(entropy) is its largest root in (1, 2].  We
work with the degree-(n-1) truncation; since every coefficient lies in
{-1, 0, 1} the dropped tail is bounded by x^{-n}/(1 - x^{-1}), which is
what turns a numerical root into a certified enclosure.  When beta is
periodic with period N, its half of the series also has the closed
geometric form (sum_{k<N} beta_k x^{-k}) / (1 - x^{-N}).

The root finder scans the bracket downward from 2 on a grid of step
(hi - lo)/(64 n), takes the first sign change (the largest root) and
bisects it; cells whose values are small enough to hide a double crossing
get locally refined first.  If no crossing exists, a bracketed
minimisation looks for a tangential root, accepted only when the minimum
lies within the truncation tail of zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.optimize import minimize_scalar

from .errors import DomainError, LengthMismatch, MissingPeriodicForm, NoRootFound
from .kneading import KneadingPair, kneading_prefixes
from .maps import BranchPair

SPECTRAL = "spectral"
LAPS = "laps"

ODD_CROSSING = "odd-crossing"
TANGENTIAL = "tangential"

#: experiment defaults: truncation order and root tolerance
DEFAULT_ORDER = 500
DEFAULT_TOL = 1e-7


@dataclass(frozen=True)
class PeriodicForm:
    """Closed-form data for a beta word of known period."""

    period: int
    beta_head: str
    alpha_prefix: str


@dataclass(frozen=True)
class XiPolynomial:
    """Truncated kneading series: coefficients d_k = beta_k - alpha_k."""

    coeffs: tuple
    periodic_form: PeriodicForm | None = None

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if not coeffs:
            raise DomainError("coefficient list must not be empty")
        if any(c not in (-1, 0, 1) for c in coeffs):
            raise DomainError("coefficients must lie in {-1, 0, 1}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class RootResult:
    """A located root of the truncated series."""

    gamma: float
    residual: float
    bracket: tuple
    multiplicity_hint: str


@dataclass(frozen=True)
class EntropyEstimate:
    """An entropy value with its provenance and an error estimate."""

    entropy: float
    gamma: float
    method: str
    order: int
    error_bound: float
    certified: bool


def xi_coeffs(kp: KneadingPair) -> XiPolynomial:
    """Coefficients beta_k - alpha_k; carries a periodic form if beta has one."""
    if len(kp.alpha) != len(kp.beta):
        raise LengthMismatch(
            f"kneading prefixes differ in length: {len(kp.alpha)} vs {len(kp.beta)}"
        )
    coeffs = tuple(int(b) - int(a) for a, b in zip(kp.alpha, kp.beta))
    form = None
    if kp.beta_period is not None:
        form = PeriodicForm(kp.beta_period, kp.beta[: kp.beta_period], kp.alpha)
    return XiPolynomial(coeffs, form)


def _horner(word_or_coeffs, t):
    acc = 0
    for c in reversed(word_or_coeffs):
        acc = acc * t + int(c)
    return acc


def _check_x(x):
    # Fractions evaluate exactly (useful for oracle-grade bounds); anything
    # else runs in binary64
    if not isinstance(x, Fraction):
        x = float(x)
    if x <= 1:
        raise DomainError("series evaluation needs x > 1")
    return x


def xi_eval(xi: XiPolynomial, x):
    """Truncated series at x > 1, evaluated by Horner's rule in 1/x."""
    x = _check_x(x)
    return _horner(xi.coeffs, 1 / x)


def xi_eval_periodic(xi: XiPolynomial, x):
    """Series value with the beta part resummed exactly as a geometric series.

    Differs from the infinite series only by the dropped alpha tail, so the
    result is within tail_bound(x, order) of the true value.
    """
    form = xi.periodic_form
    if form is None:
        raise MissingPeriodicForm("no periodic form attached to this polynomial")
    x = _check_x(x)
    t = 1 / x
    beta_part = _horner(form.beta_head, t) / (1 - t**form.period)
    alpha_part = _horner(form.alpha_prefix, t)
    return beta_part - alpha_part


def tail_bound(x, n: int):
    """x^{-n}/(1 - 1/x): bound on any dropped tail sum_{k>=n} d_k x^{-k}, |d_k| <= 1."""
    x = _check_x(x)
    return x ** (-n) / (1 - 1 / x)


def _eval_grid(coeffs, xs):
    return npoly.polyval(1.0 / xs, np.asarray(coeffs, dtype=float))


def _bisect_root(f, xl, xr, vl, vr, tol, max_iter=200):
    """Refine a sign change on [xl, xr] (f(xl)=vl, f(xr)=vr, vl*vr < 0)."""
    if vr == 0.0:
        return xr, 0.0, (xr, xr)
    if vl == 0.0:
        return xl, 0.0, (xl, xl)
    for _ in range(max_iter):
        xm = 0.5 * (xl + xr)
        vm = f(xm)
        if vm == 0.0:
            xl = xr = xm
            break
        if (vm > 0.0) == (vr > 0.0):
            xr, vr = xm, vm
        else:
            xl, vl = xm, vm
        if xr - xl <= tol and abs(vm) <= tol:
            break
    gamma = 0.5 * (xl + xr)
    return gamma, abs(f(gamma)), (xl, xr)


def _first_crossing(xi, xs, vals, events):
    """Largest-x sign change, checking suspicious cells above the first grid event.

    A cell can hide a double crossing only if the series comes within
    step * sup|xi'| of zero there; |xi'(x)| <= 1/(x-1)^2 bounds the slope.
    """
    first = events[0] if events.size else len(xs) - 1
    step = xs[0] - xs[1]
    lip = 1.0 / (xs[1:] - 1.0) ** 2
    small = np.minimum(np.abs(vals[:-1]), np.abs(vals[1:])) <= step * lip
    for j in np.nonzero(small[:first])[0]:
        sub = np.linspace(xs[j], xs[j + 1], 65)
        sv = _eval_grid(xi.coeffs, sub)
        ss = np.sign(sv)
        ev = np.nonzero(ss[:-1] * ss[1:] <= 0)[0]
        if ev.size:
            k = ev[0]
            return sub[k], sv[k], sub[k + 1], sv[k + 1]
    if events.size:
        i = events[0]
        return xs[i], vals[i], xs[i + 1], vals[i + 1]
    return None


def max_root(xi: XiPolynomial, lo: float, hi: float, tol: float) -> RootResult:
    """Largest root of the truncated series in (lo, hi], or a certified tangency.

    Raises NoRootFound when the series neither changes sign nor dips within
    the truncation tail of zero anywhere in the bracket.
    """
    lo, hi = float(lo), float(hi)
    if not (1.0 < lo < hi <= 2.0):
        raise DomainError(f"bracket must satisfy 1 < lo < hi <= 2, got ({lo}, {hi})")
    if tol <= 0.0:
        raise DomainError("tolerance must be positive")

    def f(x):
        return xi_eval(xi, x)

    num = 64 * max(xi.order, 2)
    xs = np.linspace(hi, lo, num + 1)  # descending scan
    vals = _eval_grid(xi.coeffs, xs)
    sgn = np.sign(vals)
    events = np.nonzero(sgn[:-1] * sgn[1:] <= 0)[0]

    hit = _first_crossing(xi, xs, vals, events)
    if hit is not None:
        x_hi, v_hi, x_lo, v_lo = hit
        if v_hi == 0.0:
            return RootResult(float(x_hi), 0.0, (float(x_hi), float(x_hi)), ODD_CROSSING)
        gamma, residual, bracket = _bisect_root(f, float(x_lo), float(x_hi), float(v_lo), float(v_hi), tol)
        return RootResult(gamma, residual, bracket, ODD_CROSSING)

    if np.all(vals < 0.0):
        raise NoRootFound("series is negative throughout the bracket")

    # no crossing: look for a tangential root at the minimum
    j = int(np.argmin(vals))
    left = float(xs[min(j + 1, len(xs) - 1)])
    right = float(xs[max(j - 1, 0)])
    res = minimize_scalar(f, bounds=(left, right), method="bounded", options={"xatol": tol * 0.25})
    xm, fm = float(res.x), float(res.fun)
    if fm < 0.0:
        # the dip does cross after all; keep its larger root
        gamma, residual, bracket = _bisect_root(f, xm, right, fm, f(right), tol)
        return RootResult(gamma, residual, bracket, ODD_CROSSING)
    neighbours = [float(vals[k]) for k in (j - 1, j + 1) if 0 <= k < len(vals)]
    dips = all(fm < v for v in neighbours)
    if dips and fm <= tail_bound(xm, xi.order):
        return RootResult(xm, fm, (xm - tol / 2, xm + tol / 2), TANGENTIAL)
    raise NoRootFound(
        "no sign change, and the minimum is not a dip within the truncation tail of zero"
    )


def _grow(g, start, direction, limit):
    """Widen from a bracket edge while g <= 0; returns (edge, hit_limit)."""
    if g(start) > 0.0:
        return start, False
    span = abs(limit - start)
    if span <= 0.0:
        return start, True
    good, bad = 0.0, None
    frac = 2.0**-40
    while frac < 1.0:
        if g(start + direction * frac * span) > 0.0:
            bad = frac
            break
        good = frac
        frac *= 2.0
    if bad is None:
        if g(limit) <= 0.0:
            return limit, True
        bad = 1.0
    for _ in range(48):
        mid = 0.5 * (good + bad)
        if g(start + direction * mid * span) <= 0.0:
            good = mid
        else:
            bad = mid
    return start + direction * good * span, False


def _uncertainty_interval(xi, root, lo, hi):
    """Maximal interval around the root where |xi_n| stays within twice the tail bound.

    The infinite series' root must lie where the truncation is tail-small, so
    this interval (united with the bisection bracket) encloses it; it lying
    strictly inside the search bracket is what certifies the estimate.
    """
    n = xi.order

    def g(x):
        return abs(xi_eval(xi, x)) - 2.0 * tail_bound(x, n)

    bl = max(min(root.bracket), lo)
    bh = min(max(root.bracket), hi)
    x_lo, hit_lo = _grow(g, bl, -1.0, lo)
    x_hi, hit_hi = _grow(g, bh, +1.0, hi)
    return x_lo, x_hi, not (hit_lo or hit_hi)


def entropy_spectral(bp: BranchPair, p, n: int = DEFAULT_ORDER, tol: float = DEFAULT_TOL) -> EntropyEstimate:
    """Entropy of the maps at p from the order-n kneading series truncation.

    The root bracket is ((1 + c_min)/2, 2], floored just above 1; the error
    bound is the half-width, on the log scale, of the interval on which the
    truncated series stays within twice its tail bound.
    """
    if n < 2:
        raise DomainError("truncation order must be >= 2")
    kp = kneading_prefixes(bp, p, n)
    xi = xi_coeffs(kp)
    lo = max((1.0 + float(bp.c_min)) / 2.0, 1.0 + tol)
    hi = 2.0
    root = max_root(xi, lo, hi, tol)
    x_lo, x_hi, inside = _uncertainty_interval(xi, root, lo, hi)
    error_bound = 0.5 * (math.log(x_hi) - math.log(x_lo))
    return EntropyEstimate(math.log(root.gamma), root.gamma, SPECTRAL, n, error_bound, inside)
