import math

import pytest

from jcalc.errors import UnsupportedForm
from jcalc.kac_table import (
    GroupForm,
    TorsionData,
    constraint_rules,
    expand_table,
    parse_form,
    so_torsion_data,
    spin_torsion_data,
    table_rows,
    torsion_data,
    torsion_primes,
)
from jcalc.root_data import DynkinType


class TestForms:
    def test_parse_and_names(self):
        assert parse_form("E7sc").name == "E7sc"
        assert parse_form("E8ad").name == "E8"  # trivial center
        assert parse_form("A4").name == "A4"
        assert parse_form("A4ad").name == "A4ad"
        assert parse_form("A9mu2").name == "A9mu2"
        assert parse_form("SL10mu2") == parse_form("A9mu2")
        assert parse_form("PGL5") == parse_form("A4ad")
        assert parse_form("Spin11").name == "B5spin"
        assert parse_form("SO16").name == "D8so"
        assert parse_form("PGO14").name == "D7pgo"
        assert parse_form("HalfSpin12").name == "D6halfspin"
        assert parse_form("PGSp8").name == "C4pgsp"
        assert parse_form("Sp8").name == "C4sc"

    def test_validation(self):
        with pytest.raises(UnsupportedForm):
            GroupForm(DynkinType("A", 4), "slmu", 3)  # 3 does not divide 5
        with pytest.raises(UnsupportedForm):
            GroupForm(DynkinType("D", 5), "halfspin")  # odd rank
        with pytest.raises(UnsupportedForm):
            GroupForm(DynkinType("B", 3), "pgsp")
        with pytest.raises(UnsupportedForm):
            parse_form("Q7")

    def test_adjoint_a_series_sets_mu(self):
        form = GroupForm.adjoint(DynkinType("A", 4))
        assert form.mu == 5


class TestTorsionPrimes:
    def test_examples(self):
        assert torsion_primes(parse_form("F4")) == [2, 3]
        assert torsion_primes(parse_form("E8")) == [2, 3, 5]
        assert torsion_primes(parse_form("A2")) == []  # SL_3 is special
        assert torsion_primes(parse_form("Sp8")) == []
        assert torsion_primes(parse_form("PGSp8")) == [2]
        assert torsion_primes(parse_form("A5mu6")) == [2, 3]
        assert torsion_primes(parse_form("G2")) == [2]
        assert torsion_primes(parse_form("E6ad")) == [2, 3]


class TestTorsionData:
    def test_exceptional_rows(self):
        e8 = parse_form("E8")
        assert torsion_data(e8, 5) == TorsionData(5, (6,), (1,))
        assert torsion_data(e8, 3) == TorsionData(3, (4, 10), (1, 1))
        assert torsion_data(e8, 2) == TorsionData(2, (3, 5, 9, 15), (3, 2, 1, 1))
        assert torsion_data(parse_form("E6ad"), 3) == TorsionData(3, (1, 4), (2, 1))
        assert torsion_data(parse_form("E7ad"), 2) == TorsionData(2, (1, 3, 5, 9), (1, 1, 1, 1))
        assert torsion_data(parse_form("G2"), 2) == TorsionData(2, (3,), (1,))

    def test_non_torsion_prime_gives_empty(self):
        assert torsion_data(parse_form("G2"), 5).r == 0
        assert torsion_data(parse_form("A2"), 2).r == 0

    def test_spin_formula(self):
        assert torsion_data(parse_form("Spin7"), 2) == TorsionData(2, (3,), (1,))
        # Spin_17: r = 3, d = (3,5,7), k = (2,1,1)
        assert torsion_data(parse_form("Spin17"), 2) == TorsionData(2, (3, 5, 7), (2, 1, 1))

    def test_so_formula(self):
        # SO_7: r = 2, d = (1,3), k = (2,1)
        assert torsion_data(parse_form("SO7"), 2) == TorsionData(2, (1, 3), (2, 1))
        assert so_torsion_data(7) == TorsionData(2, (1, 3), (2, 1))
        assert so_torsion_data(4) == TorsionData(2, (1,), (1,))
        assert spin_torsion_data(7) == TorsionData(2, (3,), (1,))

    def test_low_spin_groups_are_special(self):
        # Spin_3 = SL_2, Spin_5 = Sp_4, Spin_6 = SL_4: no torsion
        for name in ("Spin5", "B1spin", "D3spin"):
            assert torsion_primes(parse_form(name)) == []

    def test_accidental_isogenies_share_rows(self):
        # SO_6 = SL_4 / mu_2 and PGO_6 = PGL_4
        assert torsion_data(parse_form("SO6"), 2) == torsion_data(parse_form("A3mu2"), 2)
        assert torsion_data(parse_form("PGO6"), 2) == torsion_data(parse_form("PGL4"), 2)
        # SO_3 = PGL_2
        assert torsion_data(parse_form("SO3"), 2) == torsion_data(parse_form("PGL2"), 2)

    def test_pgo_odd_drops_trivial_generator(self):
        # PGO_14: n = 7 odd, the codimension-1 generator has k = 0 and is dropped
        data = torsion_data(parse_form("PGO14"), 2)
        assert data.d[0] == 1 and data.k[0] >= 1
        assert all(k >= 1 for k in data.k)

    def test_pgsp_and_slmu_valuations(self):
        assert torsion_data(parse_form("PGSp8"), 2) == TorsionData(2, (1,), (3,))
        assert torsion_data(parse_form("PGSp12"), 2) == TorsionData(2, (1,), (2,))
        assert torsion_data(parse_form("A8ad"), 3) == TorsionData(3, (1,), (2,))
        assert torsion_data(parse_form("A5mu2"), 2) == TorsionData(2, (1,), (1,))

    def test_halfspin(self):
        data = torsion_data(parse_form("HalfSpin8"), 2)
        assert data == TorsionData(2, (1, 3), (2, 1))


class TestConstraintRules:
    def test_e7sc_chain(self):
        rules = constraint_rules(parse_form("E7sc"), 2)
        assert [str(r) for r in rules] == ["j1 >= j2", "j2 >= j3"]

    def test_e8_rules(self):
        rules = constraint_rules(parse_form("E8"), 2)
        assert [str(r) for r in rules] == [
            "j1 >= j2", "j2 >= j3", "j1 <= j2 + 1", "j2 <= j3 + 1"]

    def test_f4_p3_empty(self):
        assert constraint_rules(parse_form("F4"), 3) == ()

    def test_spin_rules_are_gated(self):
        rules = constraint_rules(parse_form("Spin17"), 2)
        ge = [r for r in rules if r.kind == "ge"]
        le = [r for r in rules if r.kind == "le"]
        assert all(r.gate == (r.i, r.j - r.i) for r in ge)
        assert all(r.j == 2 * r.i and r.offset == 1 for r in le)


class TestRowInvariants:
    @pytest.mark.parametrize("form,p", list(table_rows(8)), ids=lambda x: str(x))
    def test_row_sanity(self, form, p):
        data = torsion_data(form, p)
        assert data.r >= 1
        for d, k in zip(data.d, data.k):
            assert math.gcd(d, p) == 1
            assert k >= 1
            assert d * p ** k >= 2
        assert list(data.d) == sorted(data.d)
        # SO and Spin rows have strictly increasing codimensions; PGO and
        # half-spin rows may carry two codimension-1 generators.
        if form.isogeny in ("so", "spin") and form.base.series in ("B", "D"):
            assert all(a < b for a, b in zip(data.d, data.d[1:]))
        for rule in constraint_rules(form, p):
            assert 1 <= rule.i <= data.r
            assert 1 <= rule.j <= data.r

    def test_determinism(self):
        e8 = parse_form("E8")
        assert torsion_data(e8, 2) == torsion_data(e8, 2)


class TestDump:
    def test_dump_shape(self):
        rows = list(expand_table(4))
        assert rows, "dump is empty"
        for row in rows:
            assert set(row) == {"form", "p", "r", "d", "k", "rules"}
            assert row["r"] == len(row["d"]) == len(row["k"])
            for rule in row["rules"]:
                assert set(rule) == {"kind", "i", "j", "offset", "gate"}

    def test_dump_contains_e8_row(self):
        rows = [r for r in expand_table(4) if r["form"] == "E8" and r["p"] == 5]
        assert rows == [{"form": "E8", "p": 5, "r": 1, "d": [6], "k": [1], "rules": []}]


def test_torsion_data_rejects_bad_inputs():
    with pytest.raises(ValueError):
        torsion_data(parse_form("E8"), 4)
    with pytest.raises(UnsupportedForm):
        torsion_data("E8", 2)
    with pytest.raises(ValueError):
        TorsionData(2, (2,), (1,))  # codimension not coprime to p
    with pytest.raises(ValueError):
        TorsionData(2, (3, 1), (1, 1))  # not nondecreasing
    with pytest.raises(ValueError):
        TorsionData(2, (3,), (0,))  # trivial generator
