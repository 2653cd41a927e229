"""Formal q-series and the character identities."""

import json
from fractions import Fraction

import pytest

from voaf.characters import (
    QSeries,
    char_virasoro_c1,
    decomposition_weights,
    eta_inverse,
    graded_dimension,
    jacobi_triple_check,
    twisted_character_identity,
    verify_decomposition,
)

F = Fraction


class TestQSeries:
    def test_grid_enforced(self):
        with pytest.raises(ValueError):
            QSeries({F(1, 49): F(1)})

    def test_arithmetic_min_cutoff(self):
        a = QSeries({F(0): F(1)}, cutoff=5)
        b = QSeries({F(1): F(2)}, cutoff=3)
        assert (a + b).cutoff == 3
        assert (a * b).cutoff == 3

    def test_multiplication(self):
        a = QSeries({F(0): F(1), F(1, 2): F(1)}, cutoff=4)
        sq = a * a
        assert sq.coefficient(F(0)) == 1
        assert sq.coefficient(F(1, 2)) == 2
        assert sq.coefficient(F(1)) == 1

    def test_truncation_drops_high_terms(self):
        a = QSeries({F(0): F(1), F(6): F(1)}, cutoff=6)
        assert a.truncate(3).coeffs == {F(0): F(1)}

    def test_shift(self):
        a = QSeries({F(1): F(3)}, cutoff=4)
        b = a.shift(F(-1, 24))
        assert b.coefficient(F(1) - F(1, 24)) == 3

    def test_json_round_trip(self):
        a = QSeries({F(-1, 24): F(1), F(3, 2): F(5)}, cutoff=8)
        data = json.loads(json.dumps(a.to_json()))
        back = QSeries({F(e): F(c) for e, c in data}, cutoff=8)
        assert back == a

    def test_str_deterministic(self):
        a = QSeries({F(0): F(1), F(1, 2): F(2)}, cutoff=3)
        assert str(a) == "1 + 2 q^{1/2}"


class TestEta:
    def test_partition_numbers(self):
        inv = eta_inverse(12)
        off = -F(1, 24)
        assert inv.coefficient(off + 4) == 5
        assert inv.coefficient(off + 10) == 42

    def test_eta_times_inverse_is_one(self):
        cutoff = F(10)
        inv = eta_inverse(cutoff)
        # eta = q^{1/24} prod (1 - q^k)
        eta = QSeries({F(0): F(1)}, cutoff + 1)
        k = 1
        while k <= cutoff + 1:
            eta = eta * QSeries({F(0): F(1), F(k): F(-1)}, cutoff + 1)
            k += 1
        eta = eta.shift(F(1, 24))
        prod = (eta * inv).truncate(cutoff)
        assert prod == QSeries.one(cutoff)


class TestVirasoroCharacters:
    def test_generic_weight(self):
        ch = char_virasoro_c1(F(1, 6), 6)
        inv = eta_inverse(6)
        assert ch == inv.shift(F(1, 6)).truncate(6)

    def test_quarter_square_weight_subtracts(self):
        ch = char_virasoro_c1(F(1), 8)
        inv = eta_inverse(9)
        want = (inv.shift(F(1)) - inv.shift(F(4))).truncate(8)
        assert ch == want

    def test_vacuum_graded_dims(self):
        # L(1,0): dims 1,0,1,1,2,2 at weights 0..5
        ch = char_virasoro_c1(F(0), 6)
        off = -F(1, 24)
        dims = [ch.coefficient(off + n) for n in range(6)]
        assert dims == [1, 0, 1, 1, 2, 2]


class TestModuleCharacters:
    def test_even_module_dims(self):
        gd = graded_dimension("M+", 6)
        off = -F(1, 24)
        assert [gd.coefficient(off + n) for n in range(5)] == [1, 0, 1, 1, 3]

    def test_full_twisted_dims(self):
        gd = graded_dimension("Mtheta", 4)
        off = F(1, 16) - F(1, 24)
        assert [gd.coefficient(off + F(k, 2)) for k in range(4)] == [1, 1, 1, 2]

    def test_decompositions(self):
        for mod in ["M+", "M-", "Mtheta+", "Mtheta-", "M(s=1/3)", "M(s=2)"]:
            parts = decomposition_weights(mod, 21)
            ok, report = verify_decomposition(mod, parts, 20)
            assert ok, (mod, report)

    def test_decomposition_weights_forms(self):
        assert decomposition_weights("M+", 20) == [(F(0), 1), (F(4), 1), (F(16), 1)]
        assert decomposition_weights("M-", 10) == [(F(1), 1), (F(9), 1)]
        assert decomposition_weights("Mtheta+", 4)[:2] == [
            (F(1, 16), 1),
            (F(49, 16), 1),
        ]
        assert decomposition_weights("Mtheta-", 4)[:2] == [
            (F(9, 16), 1),
            (F(25, 16), 1),
        ]
        assert decomposition_weights("M(s=1/3)", 10) == [(F(1, 6), 1)]
        assert decomposition_weights("M(s=2)", 10) == [
            (F(1), 1),
            (F(4), 1),
            (F(9), 1),
        ]

    def test_mismatch_reported(self):
        ok, report = verify_decomposition("M+", [(F(0), 1)], 6)
        assert not ok
        assert "exponent" in report

    def test_characters_distinct(self):
        names = ["M+", "M-", "Mtheta+", "Mtheta-", "M(s=1/3)"]
        chars = {m: graded_dimension(m, 10) for m in names}
        for i, a in enumerate(names):
            for b in names[i + 1 :]:
                assert not chars[a].agrees_with(chars[b])[0], (a, b)


class TestIdentities:
    def test_jacobi_triple_product(self):
        assert jacobi_triple_check(20)

    def test_twisted_double_identity(self):
        assert twisted_character_identity(20)
