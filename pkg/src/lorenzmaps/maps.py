"""Branch pairs and Lorenz interval maps.

A Lorenz map is a self-map of [0, 1] with a single discontinuity at p and
two continuous, strictly increasing branches f0 : [0, b] -> [0, 1] and
f1 : [a, 1] -> [0, 1], both onto, where 0 < a <= p <= b < 1.  The *upper*
map applies f1 at x = p, the *lower* map applies f0 there; everywhere else
the two agree.  Every linear piece of a branch must have slope > 1, so the
map expands and the inverse branches contract.

Numbers are either ``fractions.Fraction`` (exact mode) or binary64 floats.
Exact mode performs no rounding at all, which is what makes orbit
periodicity checks trustworthy; float mode is the fast path for parameter
sweeps.  A map is exact iff every defining number is a Fraction (integers
are promoted to Fractions on input).
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError, InvalidBranch, InvalidSlopes

Scalar = Union[Fraction, float]

UPPER = "upper"
LOWER = "lower"


def parse_scalar(text, exact: bool = True) -> Scalar:
    """Parse "0.5", "9/19", "1.1", 3, ... into a Fraction (or float if exact=False)."""
    try:
        value = Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse number: {text!r}") from exc
    return value if exact else float(value)


def _coerce(value) -> Scalar:
    # ints become Fractions so that integer inputs never force float mode
    if isinstance(value, bool):
        raise InvalidBranch(f"not a number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (Fraction, float)):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    raise InvalidBranch(f"unsupported numeric type: {type(value).__name__}")


def _fmt_scalar(value) -> str:
    return str(value) if isinstance(value, Fraction) else repr(float(value))


@dataclass(frozen=True)
class BranchSpec:
    """One branch: a piecewise-linear, strictly increasing map onto [0, 1].

    ``points`` are the breakpoints ((x0, 0), ..., (xk, 1)); an affine branch
    is the two-point case.  Every piece must have slope > 1.
    """

    points: tuple

    def __post_init__(self):
        pts = tuple((_coerce(x), _coerce(y)) for x, y in self.points)
        if len(pts) < 2:
            raise InvalidBranch("a branch needs at least two breakpoints")
        xs = tuple(x for x, _ in pts)
        ys = tuple(y for _, y in pts)
        if any(x1 >= x2 for x1, x2 in zip(xs, xs[1:])):
            raise InvalidBranch("breakpoint abscissae must be strictly increasing")
        if ys[0] != 0 or ys[-1] != 1:
            raise InvalidBranch("a branch must map its domain endpoints to 0 and 1")
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            if y2 - y1 <= x2 - x1:
                raise InvalidBranch("every linear piece needs slope > 1")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_xs", xs)
        object.__setattr__(self, "_ys", ys)
        object.__setattr__(
            self,
            "_slopes",
            tuple((y2 - y1) / (x2 - x1) for (x1, y1), (x2, y2) in zip(pts, pts[1:])),
        )

    @property
    def lo(self) -> Scalar:
        return self.points[0][0]

    @property
    def hi(self) -> Scalar:
        return self.points[-1][0]

    @property
    def slopes(self) -> tuple:
        return self._slopes

    @property
    def slope_min(self) -> Scalar:
        return min(self._slopes)

    @property
    def slope_max(self) -> Scalar:
        return max(self._slopes)

    @property
    def kind(self) -> str:
        return "affine" if len(self.points) == 2 else "pwl"

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, Fraction) for xy in self.points for v in xy)

    @classmethod
    def affine_from_zero(cls, slope) -> "BranchSpec":
        """The branch x -> slope*x on [0, 1/slope]; the usual f0."""
        slope = _coerce(slope)
        if slope <= 1:
            raise InvalidSlopes("affine branch slope must exceed 1")
        one = slope / slope
        zero = one - one
        return cls(((zero, zero), (one / slope, one)))

    @classmethod
    def affine_to_one(cls, slope) -> "BranchSpec":
        """The branch x -> 1 - slope + slope*x on [(slope-1)/slope, 1]; the usual f1."""
        slope = _coerce(slope)
        if slope <= 1:
            raise InvalidSlopes("affine branch slope must exceed 1")
        one = slope / slope
        zero = one - one
        return cls((((slope - one) / slope, zero), (one, one)))

    def _piece(self, seq, value) -> int:
        i = bisect.bisect_right(seq, value) - 1
        return min(max(i, 0), len(seq) - 2)

    def __call__(self, x) -> Scalar:
        if x < self.lo or x > self.hi:
            raise DomainError(f"{x!r} outside branch domain [{self.lo}, {self.hi}]")
        i = self._piece(self._xs, x)
        y = self._ys[i] + self._slopes[i] * (x - self._xs[i])
        # float endpoint rounding must not escape [0, 1]
        if y < 0:
            return self._ys[0]
        if y > 1:
            return self._ys[-1]
        return y

    def inverse(self, y) -> Scalar:
        """The unique x with branch(x) = y, for y in [0, 1]."""
        if y < 0 or y > 1:
            raise DomainError(f"{y!r} outside [0, 1]")
        i = self._piece(self._ys, y)
        x = self._xs[i] + (y - self._ys[i]) / self._slopes[i]
        if x < self.lo:
            return self.lo
        if x > self.hi:
            return self.hi
        return x

    def to_float(self) -> "BranchSpec":
        return BranchSpec(tuple((float(x), float(y)) for x, y in self.points))

    def to_exact(self) -> "BranchSpec":
        return BranchSpec(tuple((Fraction(x), Fraction(y)) for x, y in self.points))


@dataclass(frozen=True)
class BranchPair:
    """The branch pair (f0, f1) together with the interval [a, b] of admissible p."""

    f0: BranchSpec
    f1: BranchSpec

    def __post_init__(self):
        if self.f0.lo != 0:
            raise InvalidBranch("f0 must start at x = 0")
        if self.f1.hi != 1:
            raise InvalidBranch("f1 must end at x = 1")
        a, b = self.f1.lo, self.f0.hi
        if not (0 < a and b < 1):
            raise InvalidBranch("need 0 < a and b < 1")
        if a > b:
            raise InvalidBranch("empty discontinuity interval: a > b")

    @property
    def a(self) -> Scalar:
        return self.f1.lo

    @property
    def b(self) -> Scalar:
        return self.f0.hi

    @property
    def c_min(self) -> Scalar:
        return min(self.f0.slope_min, self.f1.slope_min)

    @property
    def c_max(self) -> Scalar:
        return max(self.f0.slope_max, self.f1.slope_max)

    @property
    def is_exact(self) -> bool:
        return self.f0.is_exact and self.f1.is_exact

    def branch(self, i: int) -> BranchSpec:
        if i not in (0, 1):
            raise DomainError(f"branch index must be 0 or 1, got {i!r}")
        return self.f0 if i == 0 else self.f1

    def eval_branch(self, i: int, x) -> Scalar:
        return self.branch(i)(x)

    def inverse_branch(self, i: int, y) -> Scalar:
        return self.branch(i).inverse(y)

    def to_float(self) -> "BranchPair":
        return BranchPair(self.f0.to_float(), self.f1.to_float())

    def to_exact(self) -> "BranchPair":
        return BranchPair(self.f0.to_exact(), self.f1.to_exact())

    def to_json_dict(self) -> dict:
        return {"f0": _branch_json(self.f0), "f1": _branch_json(self.f1)}

    @classmethod
    def from_json_dict(cls, obj: dict, exact: bool = True) -> "BranchPair":
        try:
            f0_obj, f1_obj = obj["f0"], obj["f1"]
        except (TypeError, KeyError) as exc:
            raise InvalidBranch("branch JSON needs 'f0' and 'f1' entries") from exc
        return cls(_branch_from_json(f0_obj, "f0", exact), _branch_from_json(f1_obj, "f1", exact))


def _branch_json(spec: BranchSpec) -> dict:
    if spec.kind == "affine":
        return {"type": "affine", "slope": _fmt_scalar(spec.slopes[0])}
    return {"type": "pwl", "points": [[_fmt_scalar(x), _fmt_scalar(y)] for x, y in spec.points]}


def _branch_from_json(obj: dict, role: str, exact: bool) -> BranchSpec:
    kind = obj.get("type")
    if kind == "affine":
        slope = parse_scalar(obj["slope"], exact)
        return BranchSpec.affine_from_zero(slope) if role == "f0" else BranchSpec.affine_to_one(slope)
    if kind == "pwl":
        points = tuple((parse_scalar(x, exact), parse_scalar(y, exact)) for x, y in obj["points"])
        return BranchSpec(points)
    raise InvalidBranch(f"unknown branch type {kind!r} for {role}")


def make_affine_pair(b0, b1) -> BranchPair:
    """Affine pair f0(x) = b0*x on [0, 1/b0], f1(x) = 1 - b1 + b1*x on [(b1-1)/b1, 1].

    Requires b0, b1 > 1 and b0 + b1 > b0*b1; the latter is exactly
    a = (b1-1)/b1 < 1/b0 = b, so some p strictly between the branch
    domains' inner endpoints exists.  Raises InvalidSlopes otherwise.
    """
    b0, b1 = _coerce(b0), _coerce(b1)
    if not (b0 > 1 and b1 > 1):
        raise InvalidSlopes(f"slopes must exceed 1, got ({b0}, {b1})")
    if b0 + b1 <= b0 * b1:
        raise InvalidSlopes(f"need b0 + b1 > b0*b1, got ({b0}, {b1})")
    return BranchPair(BranchSpec.affine_from_zero(b0), BranchSpec.affine_to_one(b1))


def make_uniform_pair(b) -> BranchPair:
    """Affine pair with both slopes equal to b (entropy is exactly ln b)."""
    return make_affine_pair(b, b)


@dataclass(frozen=True)
class LorenzMap:
    """One of the two maps induced by a branch pair and a discontinuity p."""

    branches: BranchPair
    p: Scalar
    side: str = UPPER

    def __post_init__(self):
        object.__setattr__(self, "p", _coerce(self.p))
        if self.side not in (UPPER, LOWER):
            raise DomainError(f"side must be {UPPER!r} or {LOWER!r}, got {self.side!r}")
        if not (self.branches.a <= self.p <= self.branches.b):
            raise DomainError(
                f"p = {self.p} outside [{self.branches.a}, {self.branches.b}]"
            )

    @property
    def is_exact(self) -> bool:
        return self.branches.is_exact and isinstance(self.p, Fraction)

    def apply(self, x) -> Scalar:
        if x < 0 or x > 1:
            raise DomainError(f"{x!r} outside [0, 1]")
        if self.side == UPPER:
            return self.branches.f0(x) if x < self.p else self.branches.f1(x)
        return self.branches.f0(x) if x <= self.p else self.branches.f1(x)

    __call__ = apply

    def orbit(self, x, n: int) -> list:
        """[x, T(x), ..., T^n(x)]; n + 1 values."""
        if n < 0:
            raise DomainError("orbit length must be non-negative")
        out = [_coerce(x)]
        for _ in range(n):
            out.append(self.apply(out[-1]))
        return out

    def to_float(self) -> "LorenzMap":
        return LorenzMap(self.branches.to_float(), float(self.p), self.side)

    def to_exact(self) -> "LorenzMap":
        return LorenzMap(self.branches.to_exact(), Fraction(self.p), self.side)
