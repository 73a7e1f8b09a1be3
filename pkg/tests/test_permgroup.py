import random

import pytest

from essdim.lattice import LatticeSpec, Weight, standard_weight, zero_weight
from essdim.permgroup import (
    GroupTooLarge,
    Perm,
    PermError,
    act,
    center_order_p_elements,
    enumerate_elements,
    legendre_exponent,
    orbit,
    p_adic_digits,
    sylow_subgroup,
)


def random_weight(rng, n, q=0):
    spec = LatticeSpec(n, q)
    ent = [rng.randint(0, max(q - 1, 4)) if q else rng.randint(-4, 4) for _ in range(n - 1)]
    last = (-sum(ent)) % q if q else -sum(ent)
    return Weight.of(ent + [last], spec)


class TestPerm:
    def test_cycle_parser(self):
        g = Perm.from_cycles("(1 2)(3 4)", 4)
        assert g.images == (2, 1, 4, 3)
        assert Perm.from_cycles("(1 2 3)", 3).images == (2, 3, 1)
        assert Perm.from_cycles("()", 3).is_identity()

    def test_cycle_parser_rejects_overlap(self):
        with pytest.raises(PermError):
            Perm.from_cycles("(1 2)(2 3)", 3)

    def test_inverse_and_order(self):
        g = Perm.from_cycles("(1 2 3)", 4)
        assert (g * g.inverse()).is_identity()
        assert g.order() == 3

    def test_cycle_string_roundtrip(self):
        rng = random.Random(1)
        for _ in range(20):
            images = list(range(1, 7))
            rng.shuffle(images)
            g = Perm.of(images)
            assert Perm.from_cycles(g.cycle_string(), 6) == g


class TestSylowConstruction:
    def test_single_p_cycle(self):
        g = sylow_subgroup(3, 3)
        assert [x.cycle_string() for x in g.generators] == ["(1 2 3)"]

    def test_p4_generators_and_order(self):
        g = sylow_subgroup(4, 2)
        assert {x.cycle_string() for x in g.generators} == {"(1 2)", "(1 3)(2 4)"}
        assert len(enumerate_elements(g, 100)) == 8

    def test_trivial_group(self):
        g = sylow_subgroup(1, 5)
        assert g.generators == ()
        assert enumerate_elements(g, 10) == (Perm.identity(1),)

    def test_generators_fix_fixed_points(self):
        for n, p in [(5, 2), (7, 3), (10, 3)]:
            g = sylow_subgroup(n, p)
            for gen in g.generators:
                for pos in range(1, g.structure.fixed_points + 1):
                    assert gen(pos) == pos

    @pytest.mark.parametrize("n", range(1, 10))
    @pytest.mark.parametrize("p", [2, 3])
    def test_closure_order_matches_legendre(self, n, p):
        g = sylow_subgroup(n, p)
        order = len(enumerate_elements(g, 10 ** 5))
        assert order == p ** legendre_exponent(n, p)
        assert g.order_exponent == legendre_exponent(n, p)

    def test_digit_decomposition(self):
        assert p_adic_digits(6, 2) == (0, ((1, 1), (1, 2)))
        assert p_adic_digits(5, 2) == (1, ((1, 2),))
        assert p_adic_digits(8, 2) == (0, ((1, 3),))


class TestAction:
    def test_center_witness_motion(self):
        w = Weight.of([1, 0, -1, 0], LatticeSpec(4))
        g = Perm.from_cycles("(1 2)(3 4)", 4)
        assert act(g, w).entries == (0, 1, 0, -1)

    def test_identity_action(self):
        rng = random.Random(3)
        for _ in range(10):
            w = random_weight(rng, 5)
            assert act(Perm.identity(5), w) == w

    def test_standard_weight_equivariance(self):
        spec = LatticeSpec(3)
        g = Perm.from_cycles("(1 2 3)", 3)
        assert act(g, standard_weight(1, 2, spec)) == standard_weight(2, 3, spec)

    def test_composition_law(self):
        rng = random.Random(11)
        for _ in range(100):
            n = rng.randint(2, 6)
            imgs = list(range(1, n + 1))
            rng.shuffle(imgs)
            g = Perm.of(imgs)
            rng.shuffle(imgs)
            h = Perm.of(imgs)
            w = random_weight(rng, n)
            assert act(g, act(h, w)) == act(g * h, w)

    def test_length_mismatch(self):
        with pytest.raises(PermError):
            act(Perm.identity(3), zero_weight(LatticeSpec(4)))


class TestOrbit:
    def test_big_block_orbit(self):
        g = sylow_subgroup(4, 2)
        orb = orbit(g, standard_weight(1, 3, LatticeSpec(4)))
        assert len(orb) == 8
        # all a[alpha, beta] with alpha, beta in different big blocks
        for w in orb:
            plus = w.entries.index(1) + 1
            minus = w.entries.index(-1) + 1
            assert (plus <= 2) != (minus <= 2)

    def test_zero_orbit(self):
        g = sylow_subgroup(4, 2)
        assert len(orbit(g, zero_weight(LatticeSpec(4)))) == 1

    def test_mixed_block_orbit(self):
        g = sylow_subgroup(6, 2)
        orb = orbit(g, standard_weight(1, 3, LatticeSpec(6)))
        assert len(orb) == 8

    def test_orbit_size_divides_group_order(self):
        rng = random.Random(17)
        cases = [(n, p) for n in (2, 3, 4, 6, 8, 9) for p in (2, 3)]
        count = 0
        while count < 200:
            n, p = rng.choice(cases)
            g = sylow_subgroup(n, p)
            w = random_weight(rng, n)
            size = len(orbit(g, w))
            assert (p ** g.order_exponent) % size == 0
            count += 1


class TestCenter:
    def test_p4_center(self):
        g = sylow_subgroup(4, 2)
        assert [x.cycle_string() for x in center_order_p_elements(g)] == ["(1 2)(3 4)"]

    def test_p6_center(self):
        g = sylow_subgroup(6, 2)
        got = {x.cycle_string() for x in center_order_p_elements(g)}
        assert got == {"(1 2)", "(3 4)(5 6)", "(1 2)(3 4)(5 6)"}

    def test_cyclic_case(self):
        for p in (2, 3, 5):
            g = sylow_subgroup(p, p)
            elems = center_order_p_elements(g)
            assert len(elems) == p - 1
            cyc = g.generators[0]
            powers = set()
            acc = cyc
            for _ in range(p - 1):
                powers.add(acc)
                acc = acc * cyc
            assert set(elems) == powers

    def test_fixed_points_rejected(self):
        with pytest.raises(PermError):
            center_order_p_elements(sylow_subgroup(5, 2))

    def test_commute_and_order(self):
        rng = random.Random(23)
        cases = [(4, 2), (6, 2), (8, 2), (9, 3), (6, 3)]
        checked = 0
        while checked < 100:
            n, p = rng.choice(cases)
            g = sylow_subgroup(n, p)
            z = rng.choice(center_order_p_elements(g))
            assert z.order() == p
            for gen in g.generators:
                assert z * gen == gen * z
            checked += 1


class TestEnumeration:
    def test_cap_exceeded(self):
        with pytest.raises(GroupTooLarge):
            enumerate_elements(sylow_subgroup(8, 2), 10)

    def test_p4_full_list(self):
        elems = enumerate_elements(sylow_subgroup(4, 2), 100)
        assert len(elems) == 8
        assert len(set(elems)) == 8
