"""Vertex operator modes, the degree-correction table, and zero modes."""

from fractions import Fraction

import pytest
import sympy as sp

from voaf.fock import FockVector, Sector, basis_at_degree
from voaf.labels import mminus, mtheta_minus, mtheta_plus
from voaf.vertexops import (
    J_state,
    cmn_table,
    delta_apply,
    gen_binom,
    mode,
    o_apply,
    omega,
    vacuum,
    vertex_op_coeff,
    weight,
)
from voaf.zhu import star_left

UNT = Sector.untwisted(None)
TW = Sector.twisted_sector()


class TestBasics:
    def test_gen_binom(self):
        assert gen_binom(Fraction(1, 2), 2) == Fraction(-1, 8)
        assert gen_binom(4, 2) == 6
        assert gen_binom(3, 5) == 0

    def test_weight(self):
        assert weight(omega()) == 2
        assert weight(J_state()) == 4

    def test_vacuum_mode_is_identity(self):
        for deg in range(4):
            for part in basis_at_degree(UNT, Fraction(deg)):
                w = FockVector.basis(UNT, part)
                assert mode(vacuum(), -1, w) == w

    def test_heisenberg_field_modes(self):
        h = FockVector.basis(UNT, (1,))
        v = FockVector.basis(UNT, (2,))
        # h_{(n)} agrees with the bare mode action h(n)
        for n in (-2, -1, 0, 1, 2):
            assert mode(h, n, v) == v.apply_mode(Fraction(n))


class TestCmnTable:
    def test_against_logarithmic_taylor_series(self):
        table = cmn_table(8)
        x, y = sp.symbols("x y")
        f = -sp.log((sp.sqrt(1 + x) + sp.sqrt(1 + y)) / 2)
        series = f.series(x, 0, 9).removeO()
        series = sp.expand(
            sum(sp.series(t, y, 0, 9).removeO() for t in sp.Add.make_args(series))
        )
        for m in range(9):
            for n in range(9 - m):
                if m + n == 0:
                    continue
                want = sp.Rational(table.get((m, n), Fraction(0)))
                got = series.coeff(x, m).coeff(y, n)
                assert sp.simplify(got - want) == 0, (m, n)

    def test_symmetry(self):
        table = cmn_table(8)
        for (m, n), c in table.items():
            assert table.get((n, m)) == c

    def test_leading_values(self):
        table = cmn_table(4)
        # c_{11} = 1/16 drives the twisted lowest weight of omega
        assert table[(1, 1)] == Fraction(1, 16)
        assert table[(1, 0)] == Fraction(-1, 4)


class TestDeltaApply:
    def test_vacuum_untouched(self):
        comps = delta_apply(vacuum())
        assert list(comps) == [Fraction(0)]
        assert comps[Fraction(0)] == vacuum()

    def test_omega_correction_constant(self):
        # e^Delta omega = omega + (1/16) z^{-2} |0>; the shift produces the
        # twisted lowest weight 1/16
        comps = delta_apply(omega())
        assert comps[Fraction(2)] == vacuum().scale(Fraction(1, 16))


class TestZeroModes:
    def test_zero_mode_eigenvalues_match_table(self):
        for label, a, b in [
            (mminus(), Fraction(1), Fraction(-6)),
            (mtheta_plus(), Fraction(1, 16), Fraction(3, 128)),
            (mtheta_minus(), Fraction(9, 16), Fraction(-45, 128)),
        ]:
            v = label.top_vector()
            assert o_apply(omega(), v) == v.scale(a)
            assert o_apply(J_state(), v) == v.scale(b)

    @staticmethod
    def _o_mixed(a, v):
        acc = FockVector.zero(v.sector)
        for d in a.degrees():
            acc = acc + o_apply(a.homogeneous_component(d), v)
        return acc

    def test_zero_mode_multiplicative_on_top_level(self):
        # o(a*b) v = o(a) o(b) v on a lowest-weight vector
        v = mminus().top_vector()
        a, b = omega(), omega()
        lhs = self._o_mixed(star_left(a, b), v)
        rhs = o_apply(a, o_apply(b, v))
        assert (lhs - rhs).is_zero()

    def test_zero_mode_multiplicative_twisted(self):
        v = mtheta_minus().top_vector()
        lhs = self._o_mixed(star_left(omega(), omega()), v)
        rhs = o_apply(omega(), o_apply(omega(), v))
        assert (lhs - rhs).is_zero()


class TestTwistedIntertwiner:
    def test_leading_coefficients(self):
        sec = Sector.untwisted(Fraction(2))
        a = FockVector.basis(sec)
        tv = FockVector.basis(TW)
        lead = vertex_op_coeff(a, tv, Fraction(0))
        assert list(lead.terms) == [()]
        assert lead.terms[()].as_rat() == 1
        # annihilation side: coefficient of the lowering power is -lam
        hv = FockVector.basis(TW, (Fraction(1, 2),))
        low = vertex_op_coeff(a, hv, Fraction(-1, 2))
        assert list(low.terms) == [()]
        c0, c1 = low.terms[()].lam_parts()
        assert (c0, c1) == (Fraction(0), Fraction(-1))

    def test_both_parities_hit(self):
        sec = Sector.untwisted(Fraction(1, 3))
        a = FockVector.basis(sec)
        tv = FockVector.basis(TW)
        even = vertex_op_coeff(a, tv, Fraction(0))
        odd = vertex_op_coeff(a, tv, Fraction(1, 2))
        assert not even.is_zero()
        assert not odd.is_zero()
