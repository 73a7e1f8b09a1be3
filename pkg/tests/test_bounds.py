import random

import pytest

from essdim.bounds import (
    BoundsError,
    BudgetExhausted,
    fiber_check,
    lattice_elements,
    min_invariant_generating_size,
    naive_min_by_subsets,
    naive_min_invariant_generating_size,
    nakayama_filter,
    orbit_decomposition,
    predicted_bound,
    sigma_map,
    verify_lower_bound,
)
from essdim.lattice import LatticeSpec, Weight, WeightSet, spans
from essdim.permgroup import Perm, act, orbit, sylow_subgroup


def random_mod_weight(rng, n, q):
    spec = LatticeSpec(n, q)
    ent = [rng.randint(0, q - 1) for _ in range(n - 1)]
    return Weight.of(ent + [(-sum(ent)) % q], spec)


class TestSigmaMap:
    def test_block_sums(self):
        w = Weight.of([1, 0, 3, 0], LatticeSpec(4, 4))
        assert sigma_map(w, 2).entries == (1, 3)

    def test_zero(self):
        w = Weight.of([0] * 6, LatticeSpec(6, 2))
        assert sigma_map(w, 2).entries == (0, 0, 0)

    def test_mod2_blocks(self):
        w = Weight.of([1, 1, 1, 1, 0, 0], LatticeSpec(6, 2))
        assert sigma_map(w, 2).entries == (0, 0, 0)

    def test_rejects_indivisible(self):
        with pytest.raises(BoundsError):
            sigma_map(Weight.of([1, -1, 0], LatticeSpec(3)), 2)

    def test_homomorphism(self):
        rng = random.Random(41)
        for _ in range(100):
            n, p, q = rng.choice([(4, 2, 4), (6, 2, 2), (6, 3, 3), (9, 3, 3)])
            a = random_mod_weight(rng, n, q)
            b = random_mod_weight(rng, n, q)
            assert sigma_map(a + b, p) == sigma_map(a, p) + sigma_map(b, p)

    def test_equivariance(self):
        rng = random.Random(43)
        # per-small-block rotations collapse under the block-sum map, and
        # block-permuting elements act as the quotient group
        for _ in range(100):
            n, p, q = rng.choice([(4, 2, 4), (8, 2, 4), (9, 3, 3)])
            w = random_mod_weight(rng, n, q)
            # rotation inside small block 1
            images = list(range(1, n + 1))
            for x in range(p):
                images[x] = (x + 1) % p + 1
            rot = Perm.of(images)
            assert sigma_map(act(rot, w), p) == sigma_map(w, p)
            # lift of a small-block swap: swap blocks 1 and 2 pointwise
            images = list(range(1, n + 1))
            for x in range(p):
                images[x], images[p + x] = images[p + x], images[x]
            lifted = Perm.of(images)
            quotient = Perm.of([2, 1] + list(range(3, n // p + 1)))
            assert sigma_map(act(lifted, w), p) == act(quotient, sigma_map(w, p))


class TestNakayama:
    def test_removes_p_multiples(self):
        spec = LatticeSpec(2, 4)
        lam = WeightSet.of([Weight.of([1, 3], spec), Weight.of([2, 2], spec)])
        assert nakayama_filter(lam, 2).to_json() == [[1, 3]]

    def test_disjoint_set_unchanged(self):
        spec = LatticeSpec(2, 4)
        lam = WeightSet.of([Weight.of([1, 3], spec), Weight.of([3, 1], spec)])
        assert nakayama_filter(lam, 2) == lam

    def test_lambda_c_reduction_unchanged(self):
        from essdim.constructions import lambda_c
        lam = lambda_c(2, 2).torus_weights.reduce(4)
        assert nakayama_filter(lam, 2) == lam

    def test_non_generating_rejected(self):
        spec = LatticeSpec(2, 4)
        with pytest.raises(BoundsError):
            nakayama_filter(WeightSet.of([Weight.of([2, 2], spec)]), 2)

    def test_random_invariant_generating_sets(self):
        rng = random.Random(47)
        checked = 0
        while checked < 100:
            n, p, q = rng.choice([(2, 2, 4), (3, 3, 3), (4, 2, 4), (3, 3, 9)])
            spec = LatticeSpec(n, q)
            group = sylow_subgroup(n, p)
            members = set()
            for _ in range(rng.randint(1, 4)):
                members.update(orbit(group, random_mod_weight(rng, n, q)))
            lam = WeightSet.of(members, spec)
            if not spans(lam):
                continue
            assert spans(nakayama_filter(lam, p))
            checked += 1


class TestFiberCheck:
    def test_lambda_c_reduced(self):
        from essdim.constructions import lambda_c
        lam = lambda_c(2, 2).torus_weights.reduce(4)
        report = fiber_check(lam, 2)
        assert report["minimum_count"] == 4
        assert not report["violation"]

    def test_vacuous_scalar_orbit(self):
        spec = LatticeSpec(4, 4)
        lam = WeightSet.of([Weight.of([1, 1, 1, 1], spec), Weight.of([3, 3, 3, 3], spec)])
        report = fiber_check(lam, 2)
        assert report["tested_fibers"] == 0
        assert not report["violation"]

    def test_search_witness_fibers(self):
        result = min_invariant_generating_size(4, 2, 4)
        report = fiber_check(result.witness, 2)
        assert report["minimum_count"] >= 4


class TestSearch:
    @pytest.mark.parametrize("n,p,q,expected", [
        (2, 2, 4, 2),
        (3, 3, 3, 3),
        (4, 2, 4, 8),
        (6, 2, 2, 8),
        (5, 5, 5, 5),
    ])
    def test_exact_minima(self, n, p, q, expected):
        result = min_invariant_generating_size(n, p, q)
        assert result.minimum == expected
        assert len(result.witness) == expected
        assert spans(result.witness)
        # witness is invariant
        group = sylow_subgroup(n, p)
        members = set(result.witness.elements)
        for g in group.generators:
            for w in result.witness:
                assert act(g, w) in members

    def test_degenerate_excluded_case(self):
        result = min_invariant_generating_size(2, 2, 2)
        assert result.minimum == 1
        info = predicted_bound(2, 2, 2)
        assert not info["within_hypothesis"]
        assert "outside stated hypothesis" in info["note"]

    def test_naive_subset_agreement(self):
        for n, p, q in [(2, 2, 4), (2, 2, 2), (3, 2, 2), (3, 3, 3), (5, 2, 2)]:
            assert (min_invariant_generating_size(n, p, q).minimum
                    == naive_min_by_subsets(n, p, q))

    def test_naive_orbit_union_agreement(self):
        for n, p, q in [(4, 2, 4), (6, 2, 2), (3, 3, 3)]:
            assert (min_invariant_generating_size(n, p, q).minimum
                    == naive_min_invariant_generating_size(n, p, q)[0])

    def test_monotone_in_exponent(self):
        # generating mod p^e implies generating mod p
        for n, p in [(2, 2), (3, 3), (4, 2)]:
            hi = min_invariant_generating_size(n, p, p * p).minimum
            lo = min_invariant_generating_size(n, p, p).minimum
            assert hi >= lo

    def test_budget_exhaustion(self):
        with pytest.raises(BudgetExhausted):
            min_invariant_generating_size(4, 2, 4, budget=3)

    def test_infeasible_size_rejected(self):
        with pytest.raises(BoundsError):
            min_invariant_generating_size(25, 2, 2)

    def test_q_mismatch_rejected(self):
        with pytest.raises(BoundsError):
            min_invariant_generating_size(4, 2, 9)

    def test_witness_deterministic(self):
        a = min_invariant_generating_size(4, 2, 4).witness
        b = min_invariant_generating_size(4, 2, 4).witness
        assert a == b


class TestVerify:
    def test_p_power_instances(self):
        for n, p, q, bound in [(3, 3, 3, 3), (4, 2, 4, 8), (5, 5, 5, 5)]:
            report = verify_lower_bound(n, p, q)
            assert report["bound"] == bound
            assert report["tight"]
            assert report["holds"]

    def test_composite_instance(self):
        report = verify_lower_bound(6, 2, 2)
        assert report["bound"] == 8
        assert report["tight"]

    def test_outside_hypothesis_labeled(self):
        report = verify_lower_bound(2, 2, 2)
        assert not report["within_hypothesis"]
        assert report["minimum"] == 1
        assert not report["holds"]
        assert "outside stated hypothesis" in report["note"]


def test_orbit_decomposition_partitions_lattice():
    spec = LatticeSpec(3, 3)
    group = sylow_subgroup(3, 3)
    orbits = orbit_decomposition(group, spec)
    total = [w for o in orbits for w in o]
    assert len(total) == len(set(total)) == 9
    assert sorted(total) == sorted(lattice_elements(spec))
