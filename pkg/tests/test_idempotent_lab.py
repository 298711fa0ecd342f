import itertools
import random

import pytest

from jcalc.errors import (
    DeterminantNotOne,
    HypothesisViolated,
    NotAFamily,
    NotAlmostIdempotent,
    ParseError,
)
from jcalc.idempotent_lab import (
    GradedEndo,
    ModMatrix,
    crt_split,
    lift_idempotent,
    lift_isomorphism,
    lift_isomorphism_graded,
    lift_orthogonal_family,
    mod_inverse,
    random_idempotent_family,
    random_isomorphism_instance,
    random_unimodular,
    sl_lift,
)


def all_idempotents(modulus, size):
    cells = itertools.product(range(modulus), repeat=size * size)
    for flat in cells:
        m = ModMatrix(modulus, tuple(tuple(flat[i * size:(i + 1) * size])
                                     for i in range(size)))
        if m.is_idempotent:
            yield m


class TestModMatrix:
    def test_canonical_entries(self):
        m = ModMatrix(4, ((5, -1), (8, 3)))
        assert m.entries == ((1, 3), (0, 3))

    def test_det(self):
        assert ModMatrix(6, ((2, 1), (3, 2))).det() == 1
        assert ModMatrix(6, ((2, 4), (1, 2))).det() == 0
        assert ModMatrix(12, ((1, 2, 3), (0, 1, 4), (0, 0, 1))).det() == 1

    def test_text_round_trip(self):
        m = ModMatrix(6, ((1, 2), (3, 4)))
        assert ModMatrix.parse(m.to_text()) == m
        assert ModMatrix.parse("1,2;3,4", modulus=6) == m
        with pytest.raises(ParseError):
            ModMatrix.parse("1,2;3,4")
        with pytest.raises(ParseError):
            ModMatrix.parse("mod 6 size 3\n1,2;3,4")

    def test_mod_inverse(self):
        rng = random.Random(7)
        for _ in range(25):
            u = random_unimodular(rng, 12, 3)
            assert u * mod_inverse(u) == ModMatrix.identity(12, 3)


class TestLiftIdempotent:
    def test_mod2_count_is_eight(self):
        assert sum(1 for _ in all_idempotents(2, 2)) == 8

    @pytest.mark.parametrize("target", [4, 8])
    def test_exhaustive_2x2(self, target):
        for a in all_idempotents(2, 2):
            seed = ModMatrix(target, a.entries)
            e = lift_idempotent(seed)
            assert e.is_idempotent
            assert e.reduce(2) == a

    def test_trivial_fixed_points(self):
        for m in (ModMatrix.identity(8, 3), ModMatrix.zero(8, 3)):
            assert lift_idempotent(m) == m

    def test_high_power_modulus(self):
        a = ModMatrix(2 ** 10, ((1, 3), (0, 0)))
        e = lift_idempotent(a)
        assert e.is_idempotent and e.reduce(2) == a.reduce(2)

    def test_rejects_non_idempotent(self):
        with pytest.raises(NotAlmostIdempotent):
            lift_idempotent(ModMatrix(4, ((1, 0), (1, 1))))

    def test_rejects_composite_modulus(self):
        with pytest.raises(ValueError):
            lift_idempotent(ModMatrix(6, ((1, 0), (0, 0))))


class TestLiftFamily:
    def test_identity_family(self):
        assert lift_orthogonal_family([ModMatrix.identity(8, 2)]) == [
            ModMatrix.identity(8, 2)]

    def test_exact_family_kept_orthogonal(self):
        fam = [ModMatrix(4, ((1, 0), (0, 0))), ModMatrix(4, ((0, 0), (0, 1)))]
        lifted = lift_orthogonal_family(fam)
        assert lifted[0] + lifted[1] == ModMatrix.identity(4, 2)

    def test_randomized_families(self):
        rng = random.Random(11)
        for _ in range(40):
            parts = rng.choice([2, 3])
            fam = random_idempotent_family(rng, 8, 3, parts)
            lifted = lift_orthogonal_family(fam)
            total = lifted[0]
            for e in lifted[1:]:
                total = total + e
            assert total == ModMatrix.identity(8, 3)
            for i, e in enumerate(lifted):
                assert e.is_idempotent
                assert e.reduce(2) == fam[i].reduce(2)

    def test_rejects_non_family(self):
        fam = [ModMatrix(4, ((1, 0), (0, 0))), ModMatrix(4, ((1, 0), (0, 1)))]
        with pytest.raises(NotAFamily):
            lift_orthogonal_family(fam)


class TestLiftIsomorphism:
    def test_exact_inputs_pass_through(self):
        phi = ModMatrix(4, ((1, 0), (0, 0)))
        psi = ModMatrix(4, ((3, 0), (0, 0)))
        t12, t21 = lift_isomorphism(phi, phi, psi, psi)
        assert t12 * t21 == phi and t21 * t12 == phi
        assert t12 == psi  # alpha vanished, the corner map survives

    def test_randomized_planted_instances(self):
        rng = random.Random(5)
        for _ in range(60):
            modulus = rng.choice([4, 8, 9, 27])
            size = rng.choice([2, 3])
            phi1, phi2, psi12, psi21 = random_isomorphism_instance(rng, modulus, size)
            t12, t21 = lift_isomorphism(phi1, phi2, psi12, psi21)
            assert t21 * t12 == phi1
            assert t12 * t21 == phi2

    def test_hypothesis_violations_reported(self):
        phi = ModMatrix(4, ((1, 0), (0, 0)))
        bad = ModMatrix(4, ((0, 1), (0, 0)))
        with pytest.raises(HypothesisViolated):
            lift_isomorphism(phi, phi, bad, bad)
        not_idem = ModMatrix(4, ((1, 1), (1, 1)))
        with pytest.raises(HypothesisViolated):
            lift_isomorphism(not_idem, phi, phi, phi)

    def test_graded_components(self):
        # two slots of degree 0 and 1; a degree-1 map exchanges them
        phi1 = GradedEndo(ModMatrix(4, ((1, 0), (0, 0))), (0, 1))
        phi2 = GradedEndo(ModMatrix(4, ((0, 0), (0, 1))), (0, 1))
        psi12 = GradedEndo(ModMatrix(4, ((0, 0), (3, 0))), (0, 1))
        psi21 = GradedEndo(ModMatrix(4, ((0, 3), (0, 0))), (0, 1))
        assert psi12.matrix.entries[1][0] != 0
        assert psi12.is_homogeneous(-1)
        t12, t21 = lift_isomorphism_graded(phi1, phi2, psi12, psi21, degree=-1)
        assert t21.matrix * t12.matrix == phi1.matrix
        assert t12.matrix * t21.matrix == phi2.matrix
        assert t12.is_homogeneous(-1) and t21.is_homogeneous(1)

    def test_graded_support(self):
        g = GradedEndo(ModMatrix(4, ((1, 2), (0, 3))), (0, 2))
        assert g.support_degrees == [0, 2]
        assert g.component(2).matrix.entries == ((0, 2), (0, 0))


class TestCrt:
    def test_factorizations(self):
        assert crt_split(6).factors == ((2, 1), (3, 1))
        assert crt_split(4).factors == ((2, 2),)

    def test_spec_example(self):
        s = crt_split(6)
        parts = s.split(ModMatrix(6, ((5, 0), (0, 1))))
        assert parts[0] == ModMatrix(2, ((1, 0), (0, 1)))
        assert parts[1] == ModMatrix(3, ((2, 0), (0, 1)))

    def test_round_trip_random(self):
        rng = random.Random(3)
        for _ in range(50):
            m = rng.randrange(2, 1000)
            s = crt_split(m)
            mat = ModMatrix(m, tuple(tuple(rng.randrange(m) for _ in range(2))
                                     for _ in range(2)))
            assert s.combine(s.split(mat)) == mat

    def test_transport_is_multiplicative(self):
        rng = random.Random(9)
        s = crt_split(60)
        for _ in range(25):
            a = ModMatrix(60, tuple(tuple(rng.randrange(60) for _ in range(2))
                                    for _ in range(2)))
            b = ModMatrix(60, tuple(tuple(rng.randrange(60) for _ in range(2))
                                    for _ in range(2)))
            prods = [x * y for x, y in zip(s.split(a), s.split(b))]
            sums = [x + y for x, y in zip(s.split(a), s.split(b))]
            assert s.combine(prods) == a * b
            assert s.combine(sums) == a + b


class TestSlLift:
    def test_identity_and_elementary(self):
        assert sl_lift(ModMatrix(6, ((1, 0), (0, 1)))) == ((1, 0), (0, 1))
        assert sl_lift(ModMatrix(6, ((1, 1), (0, 1)))) == ((1, 1), (0, 1))

    def test_random_sl2_and_sl3(self):
        rng = random.Random(17)
        trials = 0
        while trials < 300:
            size = rng.choice([2, 3])
            modulus = rng.choice([4, 6, 12, 30])
            cand = ModMatrix(modulus, tuple(
                tuple(rng.randrange(modulus) for _ in range(size))
                for _ in range(size)))
            if cand.det() != 1 % modulus:
                continue
            trials += 1
            lifted = sl_lift(cand)
            assert ModMatrix(modulus, lifted) == cand

    def test_rejects_wrong_determinant(self):
        with pytest.raises(DeterminantNotOne):
            sl_lift(ModMatrix(6, ((2, 0), (0, 1))))

    def test_size_one(self):
        assert sl_lift(ModMatrix(5, ((1,),))) == ((1,),)
