"""Tests for exact polynomial arithmetic and the certified predicates on
[0, 1]: root isolation, sign checks, and sup-norm enclosures."""

import random
from fractions import Fraction

from expansions import (
    Interval,
    Polynomial,
    argmax_abs_enclosure,
    is_nonneg_on_01,
    isolate_roots_01,
    sup_norm_enclosure,
    sup_norm_le,
)
from expansions.polynomials import (
    divmod_poly,
    gcd_poly,
    refine_root,
    square_free_part,
)

F = Fraction
X = Polynomial.x()
ONE = Polynomial.of(1)


def random_poly(rng: random.Random, degree: int) -> Polynomial:
    return Polynomial.of(*[F(rng.randrange(-8, 9), rng.randrange(1, 5))
                           for _ in range(degree + 1)])


def test_construction_and_evaluation() -> None:
    p = Polynomial.of(F(1, 2), -1, 0, 3)
    assert p.degree == 3
    assert p.coefficient(0) == F(1, 2) and p.coefficient(2) == 0
    assert p(F(1)) == F(5, 2)
    assert p(F(0)) == F(1, 2)
    assert Polynomial.of(0, 0).is_zero() and Polynomial.of(0, 0).degree == -1


def test_arithmetic_shift_reflect() -> None:
    p = X * X + X
    assert (p + p)(F(3)) == 24
    assert (p * p).degree == 4
    assert (X * X).shift(1) == ONE + Polynomial.of(0, 2) + X * X
    # reflect is the involution p |-> -p(-x).
    assert p.reflect() == X - X * X
    assert p.reflect().reflect() == p
    rng = random.Random(301)
    for _ in range(20):
        q = random_poly(rng, rng.randrange(0, 6))
        t = F(rng.randrange(-9, 10), rng.randrange(1, 7))
        a = F(rng.randrange(-4, 5), rng.randrange(1, 4))
        assert q.shift(a)(t) == q(t + a)
        assert q.reflect()(t) == -q(-t)
        assert q.derivative().degree <= max(q.degree - 1, -1)


def test_division_gcd_squarefree() -> None:
    q, r = divmod_poly(X * X - ONE, X - ONE)
    assert q == X + ONE and r.is_zero()
    rng = random.Random(302)
    for _ in range(20):
        a = random_poly(rng, rng.randrange(0, 6))
        b = random_poly(rng, rng.randrange(1, 4))
        if b.is_zero():
            continue
        q, r = divmod_poly(a, b)
        assert q * b + r == a
        assert r.degree < b.degree
    two, three = Polynomial.of(2), Polynomial.of(3)
    g = gcd_poly((X - ONE) * (X - two), (X - ONE) * (X - three))
    assert g(F(1)) == 0 and g.degree == 1
    sf = square_free_part((X - ONE) * (X - ONE) * X)
    assert sf.degree == 2 and sf(F(0)) == 0 and sf(F(1)) == 0


def test_isolate_roots_golden() -> None:
    # Roots at 1/4, 1/2, 3/4: rational roots come back as degenerate brackets.
    p = Polynomial.of(F(-3, 32), F(11, 16), F(-3, 2), 1)
    assert isolate_roots_01(p) == [
        (F(1, 4), F(1, 4)),
        (F(1, 2), F(1, 2)),
        (F(3, 4), F(3, 4)),
    ]
    # The isolation interval is open: endpoint roots are not counted.
    assert isolate_roots_01(X * (X - ONE)) == []


def test_isolate_roots_randomized() -> None:
    rng = random.Random(303)
    for _ in range(30):
        roots = sorted({F(rng.randrange(1, 15), 16) for _ in range(rng.randrange(1, 4))})
        p = ONE
        for r in roots:
            p = p * (X - Polynomial.of(r))
        brackets = isolate_roots_01(p)
        assert len(brackets) == len(roots)
        for (lo, hi), r in zip(brackets, roots):
            assert lo <= r <= hi
        # Brackets are disjoint and ordered.
        for (_, h1), (l2, _) in zip(brackets, brackets[1:]):
            assert h1 < l2


def test_refine_root() -> None:
    p = X * X - Polynomial.of(F(1, 2))
    (bracket,) = isolate_roots_01(p)
    lo, hi = refine_root(p, bracket, F(1, 10**9))
    assert hi - lo <= F(1, 10**9)
    assert p(lo) * p(hi) <= 0


def test_sign_and_norm_predicates() -> None:
    hump = X * (ONE - X)
    assert is_nonneg_on_01(hump)
    assert not is_nonneg_on_01(X - Polynomial.of(F(1, 2)))
    assert sup_norm_le(hump, F(1, 4))
    assert not sup_norm_le(hump, F(1, 5))
    enc = sup_norm_enclosure(hump)
    assert isinstance(enc, Interval)
    assert enc.lo == enc.hi == F(1, 4)
    assert argmax_abs_enclosure(hump) == Interval(F(1, 2), F(1, 2))


def test_norm_enclosure_vs_sampling() -> None:
    rng = random.Random(304)
    for _ in range(15):
        p = random_poly(rng, rng.randrange(1, 6))
        enc = sup_norm_enclosure(p, F(1, 10**4))
        assert enc.hi - enc.lo <= F(1, 10**4)
        sampled = max(abs(p(F(k, 64))) for k in range(65))
        assert sampled <= enc.hi
        assert enc.lo <= sampled + F(1, 10**3) or sampled >= enc.lo
        assert sup_norm_le(p, enc.hi)
        if enc.lo > 0:
            assert not sup_norm_le(p, enc.lo - min(enc.lo, F(1, 10**5)) / 2)
