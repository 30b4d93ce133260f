import random
from fractions import Fraction

import pytest

from lorenzmaps import (
    EQUAL,
    GREATER,
    LESS,
    LOWER,
    UPPER,
    DomainError,
    KneadingPair,
    LengthMismatch,
    LorenzMap,
    ModeError,
    compare_lex,
    detect_period,
    itinerary,
    kneading_prefixes,
    make_affine_pair,
    make_uniform_pair,
)

F = Fraction


def itinerary_oracle(b0, b1, p, x, n, side):
    """Symbols computed straight from the affine formulas, no library calls."""
    word = []
    for _ in range(n):
        if side == UPPER:
            word.append("1" if x >= p else "0")
            x = b0 * x if x < p else 1 - b1 + b1 * x
        else:
            word.append("0" if x <= p else "1")
            x = b0 * x if x <= p else 1 - b1 + b1 * x
    return "".join(word)


class TestItinerary:
    def test_upper_two_cycle(self):
        m = LorenzMap(make_uniform_pair(F(3, 2)), F(3, 5), UPPER)
        assert itinerary(m, F(3, 5), 4) == "1010"
        assert itinerary_oracle(F(3, 2), F(3, 2), F(3, 5), F(3, 5), 4, UPPER) == "1010"

    def test_lower_word(self):
        m = LorenzMap(make_uniform_pair(F(3, 2)), F(3, 5), LOWER)
        assert itinerary(m, F(3, 5), 6) == "011110"
        assert itinerary_oracle(F(3, 2), F(3, 2), F(3, 5), F(3, 5), 6, LOWER) == "011110"

    def test_half_word(self):
        m = LorenzMap(make_uniform_pair(F(3, 2)), F(1, 2), UPPER)
        expected = itinerary_oracle(F(3, 2), F(3, 2), F(1, 2), F(1, 2), 9, UPPER)
        assert expected == "100101001"
        assert itinerary(m, F(1, 2), 9) == expected

    def test_needs_positive_length(self):
        m = LorenzMap(make_uniform_pair(F(3, 2)), F(1, 2), UPPER)
        with pytest.raises(DomainError):
            itinerary(m, F(1, 2), 0)

    def test_prefix_consistency(self):
        bp = make_affine_pair(F(11, 10), F(19, 10))
        rng = random.Random(23)
        for _ in range(25):
            x = F(rng.randint(0, 1000), 1000)
            p = bp.a + F(rng.randint(1, 99), 100) * (bp.b - bp.a)
            m = LorenzMap(bp, p, rng.choice((UPPER, LOWER)))
            n = rng.randint(1, 30)
            assert itinerary(m, x, n + 1)[:n] == itinerary(m, x, n)

    def test_shift_compatibility(self):
        bp = make_affine_pair(F(11, 10), F(19, 10))
        rng = random.Random(29)
        for _ in range(25):
            p = bp.a + F(rng.randint(1, 99), 100) * (bp.b - bp.a)
            m = LorenzMap(bp, p, rng.choice((UPPER, LOWER)))
            x = F(rng.randint(0, 1000), 1000)
            n = rng.randint(1, 20)
            if any(v == p for v in m.orbit(x, n + 1)):
                continue
            assert itinerary(m, m(x), n) == itinerary(m, x, n + 1)[1:]


class TestKneadingPrefixes:
    def test_periodic_beta(self):
        kp = kneading_prefixes(make_uniform_pair(F(3, 2)), F(3, 5), 4)
        assert (kp.alpha, kp.beta) == ("0111", "1010")
        assert kp.beta_period == 2
        assert kp.alpha_period is None

    def test_no_period_at_half(self):
        kp = kneading_prefixes(make_uniform_pair(F(3, 2)), F(1, 2), 4)
        assert (kp.alpha, kp.beta) == ("0110", "1001")
        assert kp.alpha_period is None and kp.beta_period is None

    def test_one_symbol(self):
        bp = make_affine_pair(F(11, 10), F(19, 10))
        kp = kneading_prefixes(bp, F(7, 10), 1)
        assert (kp.alpha, kp.beta) == ("0", "1")

    def test_interior_start_symbols(self):
        bp = make_affine_pair(F(11, 10), F(19, 10))
        rng = random.Random(31)
        for _ in range(20):
            p = bp.a + F(rng.randint(1, 9999), 10000) * (bp.b - bp.a)
            kp = kneading_prefixes(bp, p, 12)
            assert kp.alpha[0] == "0" and kp.beta[0] == "1"
            assert compare_lex(kp.alpha, kp.beta) == LESS

    def test_float_mode_has_no_periods(self):
        kp = kneading_prefixes(make_uniform_pair(1.5), 0.6, 8)
        assert kp.beta_period is None

    def test_p_outside(self):
        with pytest.raises(DomainError):
            kneading_prefixes(make_uniform_pair(F(3, 2)), F(1, 5), 4)

    def test_periodicity_validated(self):
        with pytest.raises(DomainError):
            KneadingPair("0110", "1011", beta_period=2)


class TestDetectPeriod:
    def test_two_cycle(self):
        bp = make_uniform_pair(F(3, 2))
        assert detect_period(bp, F(3, 5), UPPER, 10) == 2

    def test_absent_at_half(self):
        bp = make_uniform_pair(F(3, 2))
        assert detect_period(bp, F(1, 2), UPPER, 20) is None

    def test_lower_absent_within_three(self):
        bp = make_uniform_pair(F(3, 2))
        assert detect_period(bp, F(3, 5), LOWER, 3) is None

    def test_minimality(self):
        bp = make_uniform_pair(F(3, 2))
        n = detect_period(bp, F(3, 5), UPPER, 32)
        m = LorenzMap(bp, F(3, 5), UPPER)
        orbit = m.orbit(F(3, 5), n)
        assert orbit[-1] == F(3, 5)
        assert all(v != F(3, 5) for v in orbit[1:-1])

    def test_certified_needs_exact(self):
        bp = make_uniform_pair(1.5)
        with pytest.raises(ModeError):
            detect_period(bp, 0.6, UPPER, 10, certified=True)

    def test_float_heuristic(self):
        bp = make_uniform_pair(1.5)
        assert detect_period(bp, 0.6, UPPER, 10, certified=False) == 2


class TestCompareLex:
    def test_examples(self):
        assert compare_lex("1010", "1001") == GREATER
        assert compare_lex("0", "0") == EQUAL
        assert compare_lex("011", "100") == LESS

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            compare_lex("01", "011")

    def test_symbols_checked(self):
        with pytest.raises(DomainError):
            compare_lex("012", "010")


class TestKneadingMonotonicity:
    """Kneading words of p are non-decreasing in p (finite-prefix form)."""

    def test_randomized(self):
        bp = make_affine_pair(F(11, 10), F(19, 10))
        rng = random.Random(37)
        span = bp.b - bp.a
        for _ in range(120):
            x = bp.a + F(rng.randint(0, 10**6), 10**6) * span
            y = bp.a + F(rng.randint(0, 10**6), 10**6) * span
            if x == y:
                continue
            x, y = min(x, y), max(x, y)
            n = rng.randint(1, 48)
            for side in (UPPER, LOWER):
                wx = itinerary(LorenzMap(bp, x, side), x, n)
                wy = itinerary(LorenzMap(bp, y, side), y, n)
                assert compare_lex(wx, wy) in (LESS, EQUAL)


class TestKneadingLeftContinuity:
    """With beta non-periodic, prefixes of nearby lower parameters lock in."""

    def test_prefixes_stabilize_from_the_left(self):
        bp = make_uniform_pair(F(3, 2))
        p = F(1, 2)
        assert detect_period(bp, p, UPPER, 64) is None
        n = 16
        target = itinerary(LorenzMap(bp, p, UPPER), p, n)
        agreements = []
        for k in range(4, 40):
            q = p - F(1, 2**k)
            agreements.append(itinerary(LorenzMap(bp, q, UPPER), q, n) == target)
        assert agreements[-1]
        first = agreements.index(True)
        assert all(agreements[first:])
