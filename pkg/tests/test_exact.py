"""Exact scalar field, multivariate polynomials, and linear algebra."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from voaf import linalg
from voaf.multipoly import (
    MultiPoly,
    QuadExtPoint,
    quadext_eval,
    rational_roots,
    resultant,
)
from voaf.scalars import Phase, Scalar

rationals = st.fractions(
    min_value=-10, max_value=10, max_denominator=12
)


def _scalar(mod=None):
    return st.tuples(rationals, rationals).map(
        lambda ab: Scalar.of(ab[0], mod) + Scalar.lam(mod) * Scalar.of(ab[1], mod)
    )


class TestScalar:
    def test_rational_round_trip(self):
        assert Scalar.of(Fraction(3, 7)).as_rat() == Fraction(3, 7)

    def test_lam_square_reduces(self):
        lam = Scalar.lam(Fraction(2))
        assert (lam * lam).as_rat() == 2

    def test_free_lam_has_no_square_reduction(self):
        lam = Scalar.lam(None)
        assert not (lam * lam).is_rational()

    @given(_scalar(Fraction(3)), _scalar(Fraction(3)), _scalar(Fraction(3)))
    @settings(max_examples=60, deadline=None)
    def test_field_axioms_quadratic_extension(self, a, b, c):
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        if not a.is_zero():
            assert (a / a).as_rat() == 1
            assert (b / a) * a == b

    @given(_scalar(Fraction(5, 3)))
    @settings(max_examples=40, deadline=None)
    def test_additive_inverse(self, a):
        assert (a - a).is_zero()

    def test_division_by_zero_divisor_raises(self):
        # lam^2 = 4 makes lam - 2 a zero divisor
        with pytest.raises(ZeroDivisionError):
            Scalar.one(Fraction(4)) / (Scalar.lam(Fraction(4)) - Scalar.of(2, Fraction(4)))

    def test_even_part_polys(self):
        lam = Scalar.lam(None)
        sc = lam ** 4 - lam ** 2 * Fraction(1, 2)
        num, den = sc.even_part_polys()
        assert list(num) == [Fraction(0), Fraction(-1, 2), Fraction(1)]
        assert list(den) == [Fraction(1)]

    def test_even_part_rejects_odd(self):
        with pytest.raises(ValueError):
            Scalar.lam(None).even_part_polys()

    def test_substitute(self):
        lam = Scalar.lam(None)
        assert (lam ** 2 + lam).substitute(Fraction(3)) == 12

    def test_phase_group(self):
        p = Phase(Fraction(1, 16))
        assert (p * p.inverse()).is_one()
        assert (p ** 32).is_one()
        assert Phase(Fraction(1)).as_sign() == -1
        assert Phase(Fraction(2)).as_sign() == 1


class TestMultiPoly:
    def test_arithmetic_and_str(self):
        x, y = MultiPoly.var("x"), MultiPoly.var("y")
        p = (x + y) * (x - y)
        assert p == x * x - y * y
        assert p.total_degree() == 2

    def test_evaluate(self):
        x, z = MultiPoly.var("x"), MultiPoly.var("z")
        p = z - x * x * 4 + x
        assert p.evaluate({"x": Fraction(1, 2), "z": Fraction(3)}) == Fraction(5, 2)

    def test_subs_polynomials(self):
        x, s = MultiPoly.var("x"), MultiPoly.var("s")
        p = x * x + 1
        q = p.subs({"x": s * Fraction(1, 2)})
        assert q == s * s * Fraction(1, 4) + 1

    def test_try_divide(self):
        x, y = MultiPoly.var("x"), MultiPoly.var("y")
        num = (x - y) * (x + y * 2 + 3)
        assert num.try_divide(x - y) == x + y * 2 + 3
        assert num.try_divide(x + y) is None

    def test_proportionality(self):
        x = MultiPoly.var("x")
        p = x * x * 3 - x * 6
        q = x * x - x * 2
        assert p.proportionality(q) == 3
        assert p.proportionality(x * x) is None

    def test_constant_raises_on_nonconstant(self):
        with pytest.raises(ValueError):
            MultiPoly.var("x").constant()

    @given(rationals, rationals, rationals, rationals)
    @settings(max_examples=40, deadline=None)
    def test_resultant_vanishes_iff_common_root(self, a, b, c, d):
        # (x-a)(x-b) and (x-c)(x-d) share a root iff {a,b} meets {c,d}
        x = MultiPoly.var("x")
        p = (x - a) * (x - b)
        q = (x - c) * (x - d)
        r = resultant(p, q, "x")
        shares = bool({a, b} & {c, d})
        assert r.is_zero() == shares

    def test_rational_roots(self):
        x = MultiPoly.var("x")
        p = (x * 2 - 1) * (x + 3) * (x * 3 - 2)
        assert sorted(rational_roots(p)) == [
            Fraction(-3),
            Fraction(1, 2),
            Fraction(2, 3),
        ]

    def test_quadratic_extension_point(self):
        # w^2 = alpha w - beta with alpha = 5, beta = 6 : w in {2, 3}
        alpha, beta = Fraction(5), Fraction(6)
        w = QuadExtPoint(Fraction(0), Fraction(1), alpha, beta)
        prod = (w - Fraction(2)) * (w - Fraction(3))
        assert prod.is_zero()

    def test_quadext_eval(self):
        x, y = MultiPoly.var("x"), MultiPoly.var("y")
        p = x * y - Fraction(6)
        alpha, beta = Fraction(5), Fraction(6)
        w = QuadExtPoint(Fraction(0), Fraction(1), alpha, beta)
        other = Fraction(5) - w  # the conjugate root
        assert quadext_eval(p, {"x": w, "y": other}, alpha, beta).is_zero()


class TestLinalg:
    def _F(self, x):
        return Scalar.of(Fraction(x))

    def test_solve(self):
        zero, one = Scalar.zero(None), Scalar.one(None)
        rows = [[self._F(1), self._F(2)], [self._F(3), self._F(4)]]
        rhs = [self._F(5), self._F(11)]
        sol = linalg.solve(rows, rhs, zero, one)
        assert [c.as_rat() for c in sol] == [1, 2]

    def test_solve_inconsistent(self):
        zero, one = Scalar.zero(None), Scalar.one(None)
        rows = [[self._F(1)], [self._F(2)]]
        rhs = [self._F(1), self._F(3)]
        with pytest.raises(linalg.InconsistentSystem):
            linalg.solve(rows, rhs, zero, one)

    def test_rank(self):
        one = Scalar.one(None)
        rows = [
            [self._F(1), self._F(2), self._F(3)],
            [self._F(2), self._F(4), self._F(6)],
            [self._F(0), self._F(1), self._F(0)],
        ]
        assert linalg.rank(rows, one) == 2

    def test_nullspace(self):
        zero, one = Scalar.zero(None), Scalar.one(None)
        rows = [[self._F(1), self._F(1), self._F(0)]]
        basis = linalg.nullspace(rows, 3, zero, one)
        assert len(basis) == 2
        for vec in basis:
            dot = sum((rows[0][j] * vec[j] for j in range(3)), zero)
            assert dot.is_zero()
