"""Tests for the concrete real-number systems: positional bases, continued
fractions, Egyptian fractions, Engel series, and the f-expansion family."""

import random
from fractions import Fraction

import pytest

from expansions import (
    INF,
    BaseSystem,
    ContinuedFractionSystem,
    DomainError,
    EgyptianSystem,
    EngelSystem,
    Interval,
    base_f_expansion,
    coefficient_code,
    convergent,
    magnitude_prefix,
    order_of,
    pi_interval,
    reciprocal_f_expansion,
    trajectory,
)

F = Fraction


def long_division_digits(y: Fraction, base: int, n: int) -> list:
    """Schoolbook long division: the first n base-`base` digits of y in [0, 1)."""
    digits = []
    num, den = y.numerator, y.denominator
    for _ in range(n):
        num *= base
        digits.append(num // den)
        num %= den
    return digits


def euclid_cf(y: Fraction) -> list:
    """Continued-fraction coefficients of y in [0, 1) by the Euclidean algorithm."""
    out = []
    p, q = y.numerator, y.denominator
    while p:
        out.append(q // p)
        p, q = q % p, p
    return out


def greedy_unit_fractions(y: Fraction, n: int) -> list:
    """Fibonacci-Sylvester greedy algorithm: smallest denominators c with 1/c <= rest."""
    out = []
    rest = y
    for _ in range(n):
        if rest == 0:
            out.append(INF)
            continue
        c = -(-rest.denominator // rest.numerator)
        out.append(c)
        rest -= F(1, c)
    return out


def test_base10_golden_and_long_division() -> None:
    sysm = BaseSystem(10)
    assert coefficient_code(sysm, F(1, 8), 6) == [1, 2, 5, 0, 0, 0]
    rng = random.Random(101)
    for _ in range(100):
        y = F(rng.randrange(0, 9999), 10_000) + F(rng.randrange(0, 97), 9700)
        y -= int(y)
        n = rng.randrange(1, 9)
        assert coefficient_code(sysm, y, n) == long_division_digits(y, 10, n)


def test_base_error_bound() -> None:
    rng = random.Random(102)
    for base in (2, 3, 10, 16):
        sysm = BaseSystem(base)
        for _ in range(25):
            y = F(rng.randrange(0, 10**6), 10**6)
            n = rng.randrange(0, 8)
            approx = convergent(sysm, y, n).value
            assert abs(y - approx) <= F(1, base**n)


def test_base_zero_and_domain() -> None:
    sysm = BaseSystem(10)
    res = order_of(sysm, F(0), 8)
    assert res.finite and res.n == 0
    with pytest.raises(DomainError):
        trajectory(sysm, F(-1, 2), 3)
    with pytest.raises(DomainError):
        trajectory(sysm, F(1), 3)
    with pytest.raises(DomainError):
        BaseSystem(1)


def test_base10_digit_permutation() -> None:
    # sigma(d) = 3d mod 10 is a permutation of the digits; the projection
    # reports the relabeled digit while the expansion still sheds the true one,
    # so the trajectory is untouched and decoding applies sigma inverse.
    sigma = [(3 * d) % 10 for d in range(10)]
    plain = BaseSystem(10)
    shuffled = BaseSystem(10, digit_permutation=sigma)
    assert coefficient_code(shuffled, F(1, 8), 4) == [3, 6, 5, 0]
    rng = random.Random(103)
    for _ in range(50):
        y = F(rng.randrange(0, 10**5), 10**5)
        n = rng.randrange(0, 7)
        assert trajectory(shuffled, y, n) == trajectory(plain, y, n)
        code = coefficient_code(shuffled, y, n)
        assert code == [sigma[d] for d in coefficient_code(plain, y, n)]
        assert convergent(shuffled, y, n).value == convergent(plain, y, n).value


def test_cf_golden_and_termination() -> None:
    sysm = ContinuedFractionSystem()
    assert coefficient_code(sysm, F(7, 10), 4) == [1, 2, 3, INF]
    assert convergent(sysm, F(7, 10), 3).value == F(7, 10)
    assert coefficient_code(sysm, F(0), 3) == [INF, INF, INF]
    rng = random.Random(104)
    for _ in range(100):
        q = rng.randrange(2, 2000)
        y = F(rng.randrange(0, q), q)
        res = order_of(sysm, y, 64)
        assert res.finite
        assert coefficient_code(sysm, y, res.n) == euclid_cf(y)
        # The orbit is Gauss-map iteration, so numerator + denominator
        # strictly decreases until the orbit hits zero.
        traj = trajectory(sysm, y, res.n)
        sizes = [t.numerator + t.denominator for t in traj]
        assert all(a > b for a, b in zip(sizes, sizes[1:]))
        assert traj[-1] == 0


def test_cf_membership() -> None:
    sysm = ContinuedFractionSystem()
    # 1/(1 + 0) = 1 is not in [0, 1): the final coefficient of a rational
    # is never 1, and decoding refuses to build it.
    assert sysm.reconstruct(0, 1, F(0)) is None
    assert sysm.reconstruct(0, 2, F(0)) == F(1, 2)
    assert sysm.reconstruct(0, INF, F(0)) == 0
    assert sysm.reconstruct(0, INF, F(1, 2)) is None


def test_cf_pi_fractional_part() -> None:
    # The two interval widths differ by dozens of orders of magnitude; agreement
    # of the certified codes pins the digits, and the Euclidean expansion of a
    # 60-digit decimal approximant confirms them independently.
    golden = [7, 15, 1, 292, 1]
    sysm = ContinuedFractionSystem()
    for bits in (256, 320):
        y = pi_interval(bits) - 3
        assert coefficient_code(sysm, y, 5) == golden
    approx = F(141592653589793238462643383279502884197169399375105820974944, 10**60)
    assert euclid_cf(approx)[:5] == golden


def test_egyptian_golden_and_greedy() -> None:
    sysm = EgyptianSystem()
    assert coefficient_code(sysm, F(3, 4), 3) == [2, 4, INF]
    assert convergent(sysm, F(3, 4), 2).value == F(3, 4)
    rng = random.Random(105)
    for _ in range(100):
        q = rng.randrange(2, 500)
        y = F(rng.randrange(1, q), q)
        n = rng.randrange(1, 6)
        assert coefficient_code(sysm, y, n) == greedy_unit_fractions(y, n)


def test_egyptian_membership_and_certificate() -> None:
    sysm = EgyptianSystem()
    # A legal tail after shedding 1/c stays below 1/(c(c-1)); anything at or
    # above that bound cannot have had c as its greedy denominator.
    assert sysm.reconstruct(0, 3, F(1, 7)) == F(10, 21)
    assert sysm.reconstruct(0, 3, F(1, 5)) is None
    assert sysm.reconstruct(0, 2, F(1, 2)) is None
    rng = random.Random(106)
    for _ in range(50):
        q = rng.randrange(2, 300)
        y = F(rng.randrange(1, q), q)
        res = order_of(sysm, y, 64)
        assert res.finite
        traj = trajectory(sysm, y, res.n)
        nums = [t.numerator for t in traj]
        assert all(a > b or (a == 0 and b == 0) for a, b in zip(nums, nums[1:]))


def test_engel_golden_identity_membership() -> None:
    sysm = EngelSystem()
    assert coefficient_code(sysm, F(3, 8), 3) == [3, 8, INF]
    # 3/8 = 1/3 + 1/(3*8): the nested product form of the first two terms.
    assert F(1, 3) + F(1, 3 * 8) == F(3, 8)
    assert sysm.reconstruct(0, 3, F(1, 3)) == F(4, 9)
    assert sysm.reconstruct(0, 3, F(1, 2)) is None
    rng = random.Random(107)
    for _ in range(100):
        q = rng.randrange(2, 500)
        y = F(rng.randrange(1, q), q)
        res = order_of(sysm, y, 96)
        assert res.finite
        code = [c for c in coefficient_code(sysm, y, res.n) if c is not INF]
        assert all(a <= b for a, b in zip(code, code[1:]))
        nums = [t.numerator for t in trajectory(sysm, y, res.n)]
        assert all(a >= b for a, b in zip(nums, nums[1:]))
        assert nums[-1] == 0


def test_f_expansion_cross_checks() -> None:
    base_like = base_f_expansion(10)
    cf_like = reciprocal_f_expansion()
    base = BaseSystem(10)
    cf = ContinuedFractionSystem()
    rng = random.Random(108)
    for _ in range(50):
        q = rng.randrange(2, 1000)
        y = F(rng.randrange(0, q), q)
        n = rng.randrange(0, 7)
        assert coefficient_code(base_like, y, n) == coefficient_code(base, y, n)
        assert coefficient_code(cf_like, y, n) == coefficient_code(cf, y, n)
        assert trajectory(cf_like, y, n) == trajectory(cf, y, n)


def test_magnitude_prefix() -> None:
    assert magnitude_prefix(F(125)) == (3, F(1, 8))
    assert magnitude_prefix(F(1)) == (1, F(1, 10))
    assert magnitude_prefix(F(0)) == (0, F(0))
    assert magnitude_prefix(F(1, 100)) == (-1, F(1, 10))
    rng = random.Random(109)
    for _ in range(50):
        y = F(rng.randrange(1, 10**7), rng.randrange(1, 10**4))
        k, rest = magnitude_prefix(y)
        assert y == F(10) ** k * rest
        assert F(1, 10) <= rest < 1
        # k is the smallest exponent pulling y into [1/10, 1).
        assert y >= F(10) ** (k - 1)


def test_interval_backend_matches_exact() -> None:
    systems = [BaseSystem(10), BaseSystem(2), ContinuedFractionSystem(),
               EgyptianSystem(), EngelSystem()]
    rng = random.Random(110)
    for sysm in systems:
        for _ in range(25):
            q = rng.randrange(2, 400)
            y = F(rng.randrange(0, q), q)
            n = rng.randrange(0, 6)
            exact = coefficient_code(sysm, y, n)
            boxed = coefficient_code(sysm, Interval(y, y), n)
            assert boxed == exact


def test_codes_identify_values() -> None:
    # Two values with the same depth-n code share the convergent, and equal
    # inputs always produce bit-identical codes.
    sysm = ContinuedFractionSystem()
    a, b = F(7, 10), F(24, 34)
    ca, cb = coefficient_code(sysm, a, 2), coefficient_code(sysm, b, 2)
    assert ca == cb == [1, 2]
    assert all(sysm.coefficients_equal(i, x, y) for i, (x, y) in enumerate(zip(ca, cb)))
    assert convergent(sysm, a, 2).value == convergent(sysm, b, 2).value
