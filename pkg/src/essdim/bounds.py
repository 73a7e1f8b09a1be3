"""Lower-bound machinery: block-sum homomorphism, Nakayama filter, fiber
counting, and the exact search for the minimal invariant generating set.

The search runs over unions of orbits (exactly the invariant subsets),
branch-and-bound in ascending orbit-size order, pruned by the mod-p rank
deficit; candidate unions are certified by the lift-to-Z span test.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .lattice import (
    LatticeSpec,
    Weight,
    WeightSet,
    in_p_multiple,
    prime_power_root,
    rank_mod_p,
    spans,
)
from .permgroup import PermGroupSpec, act, orbit, sylow_subgroup


class BoundsError(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    """Search node budget ran out before optimality was certified."""


@dataclass(frozen=True)
class SearchResult:
    minimum: int
    witness: WeightSet
    nodes_explored: int
    orbit_count: int
    elapsed: float

    def to_json(self) -> dict:
        return {
            "minimum": self.minimum,
            "witness": self.witness.to_json(),
            "nodes_explored": self.nodes_explored,
            "orbit_count": self.orbit_count,
            "elapsed_ms": int(self.elapsed * 1000),
        }


def sigma_map(w: Weight, p: int) -> Weight:
    """Block-sum homomorphism: entry i of the image is the sum of w's entries
    over the i-th consecutive p-run."""
    n = w.spec.n
    if n % p != 0:
        raise BoundsError(f"p={p} does not divide n={n}")
    sums = [
        sum(w.entries[(i - 1) * p: i * p]) for i in range(1, n // p + 1)
    ]
    return Weight.of(sums, LatticeSpec(n // p, w.spec.modulus, w.spec.zero_sum))


def nakayama_filter(lam: WeightSet, p: int) -> WeightSet:
    """Drop the elements lying in p * X_n; the rest still generates."""
    q = lam.spec.modulus
    if not q or prime_power_root(q) != p:
        raise BoundsError("nakayama_filter needs a mod-p^e lattice")
    if not spans(lam):
        raise BoundsError("input set does not generate the lattice")
    kept = WeightSet.of(
        [w for w in lam.elements if not in_p_multiple(w, p)], lam.spec)
    assert spans(kept), "Nakayama filtering lost generation"
    return kept


def fiber_check(lam: WeightSet, p: int) -> dict:
    """Count preimages in Lambda over each non-p-multiple block-sum image;
    the fiber-counting argument needs every count >= p^2."""
    images: Dict[Weight, int] = {}
    for w in lam.elements:
        s = sigma_map(w, p)
        images[s] = images.get(s, 0) + 1
    tested = {s: c for s, c in images.items() if not in_p_multiple(s, p)}
    if not tested:
        return {
            "tested_fibers": 0,
            "minimum_count": None,
            "attained_at": None,
            "violation": False,
            "note": "no fibers tested: every block-sum image lies in p*X",
        }
    smin = min(tested, key=lambda s: (tested[s], s.entries))
    return {
        "tested_fibers": len(tested),
        "minimum_count": tested[smin],
        "attained_at": list(smin.entries),
        "violation": tested[smin] < p * p,
        "required": p * p,
    }


def lattice_elements(spec: LatticeSpec) -> List[Weight]:
    """All q^(n-1) elements of the zero-sum mod-q lattice, lexicographic."""
    q = spec.modulus
    if not q:
        raise BoundsError("finite enumeration needs a modulus")
    out = []
    for head in itertools.product(range(q), repeat=spec.n - 1):
        last = (-sum(head)) % q
        out.append(Weight.of(list(head) + [last], spec))
    return out


def orbit_decomposition(group: PermGroupSpec, spec: LatticeSpec) -> List[WeightSet]:
    """P_n-orbits of the finite lattice, sorted by (size, representative)."""
    remaining = set(lattice_elements(spec))
    orbits = []
    while remaining:
        seed = min(remaining)
        orb = orbit(group, seed)
        orbits.append(orb)
        remaining -= set(orb.elements)
    orbits.sort(key=lambda o: (len(o), o.elements))
    return orbits


def _search_space_size(n: int, q: int) -> int:
    return q ** (n - 1)


def min_invariant_generating_size(
    n: int,
    p: int,
    q: int,
    budget: int = 10_000_000,
    group: Optional[PermGroupSpec] = None,
) -> SearchResult:
    """Exact minimum size of an invariant generating subset of the zero-sum
    lattice mod q, certified optimal by exhausting all cheaper orbit unions."""
    if prime_power_root(q) != p:
        raise BoundsError(f"q={q} is not a power of p={p}")
    if _search_space_size(n, q) > 2 ** 20:
        raise BoundsError(f"search space q^(n-1) = {q ** (n - 1)} too large")
    start = time.perf_counter()
    spec = LatticeSpec(n, q)
    if group is None:
        group = sylow_subgroup(n, p)
    orbits = [o for o in orbit_decomposition(group, spec)
              if not (len(o) == 1 and o.elements[0].is_zero())]
    target_rank = spec.rank
    sizes = [len(o) for o in orbits]
    suffix_pool: List[List[Weight]] = [[] for _ in range(len(orbits) + 1)]
    for i in range(len(orbits) - 1, -1, -1):
        suffix_pool[i] = suffix_pool[i + 1] + list(orbits[i].elements)

    # greedy seed: cheap upper bound so pruning bites from the start
    best_size = sum(sizes) + 1
    best_choice: Optional[Tuple[int, ...]] = None
    greedy: List[Weight] = []
    greedy_size = 0
    for i, orb in enumerate(orbits):
        if rank_mod_p(greedy, p, target_rank) == target_rank:
            break
        extended = greedy + list(orb.elements)
        if rank_mod_p(extended, p, target_rank) > rank_mod_p(greedy, p, target_rank):
            greedy = extended
            greedy_size += sizes[i]
    if greedy and rank_mod_p(greedy, p, target_rank) == target_rank and spans(
            WeightSet.of(greedy, spec)):
        best_size = greedy_size + 1  # strict-improvement search below re-finds it
    nodes = 0

    def dfs(i: int, chosen: Tuple[int, ...], size: int, members: List[Weight]) -> None:
        nonlocal best_size, best_choice, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted(f"node budget {budget} exhausted")
        rank = rank_mod_p(members, p, target_rank)
        # every further element adds at most one to the mod-p rank
        if size + (target_rank - rank) >= best_size:
            return
        if rank == target_rank:
            if not spans(WeightSet.of(members, spec)):
                # cannot happen for free modules over Z/p^e (Nakayama)
                raise BoundsError("mod-p rank full but lift-to-Z span test failed")
            best_size = size
            best_choice = chosen
            return
        if i == len(orbits):
            return
        # joint rank of chosen + all remaining must be able to reach full rank
        if rank_mod_p(members + suffix_pool[i], p, target_rank) < target_rank:
            return
        dfs(i + 1, chosen + (i,), size + sizes[i], members + list(orbits[i].elements))
        dfs(i + 1, chosen, size, members)

    try:
        dfs(0, (), 0, [])
    except RecursionError as exc:  # orbit counts stay tiny at desk scale
        raise BoundsError("orbit count too large for recursive search") from exc
    if best_choice is None:
        raise BoundsError("no invariant generating subset exists")

    # deterministic witness: first generating union of total size best_size in
    # canonical inclusion order
    witness = None
    for picks in _exact_size_unions(sizes, best_size):
        members = [w for i in picks for w in orbits[i].elements]
        ws = WeightSet.of(members, spec)
        if rank_mod_p(members, p, target_rank) == target_rank and spans(ws):
            witness = ws
            break
    assert witness is not None
    return SearchResult(
        minimum=best_size,
        witness=witness,
        nodes_explored=nodes,
        orbit_count=len(orbits),
        elapsed=time.perf_counter() - start,
    )


def _exact_size_unions(sizes: Sequence[int], total: int):
    """Index subsets with the given total size, lexicographic by index set."""
    def rec(i: int, left: int, acc: Tuple[int, ...]):
        if left == 0:
            yield acc
            return
        if i == len(sizes) or sum(sizes[i:]) < left:
            return
        if sizes[i] <= left:
            yield from rec(i + 1, left - sizes[i], acc + (i,))
        yield from rec(i + 1, left, acc)
    yield from rec(0, total, ())


def naive_min_invariant_generating_size(
    n: int, p: int, q: int, group: Optional[PermGroupSpec] = None
) -> Tuple[int, WeightSet]:
    """Independent oracle: exhaustive enumeration of invariant unions of
    orbits, smallest generating union wins.  No pruning beyond feasibility."""
    spec = LatticeSpec(n, q)
    if group is None:
        group = sylow_subgroup(n, p)
    orbits = [o for o in orbit_decomposition(group, spec)
              if not (len(o) == 1 and o.elements[0].is_zero())]
    if len(orbits) > 20:
        raise BoundsError(f"naive enumeration infeasible: {len(orbits)} orbits")
    best = None
    for k in range(1, len(orbits) + 1):
        for combo in itertools.combinations(range(len(orbits)), k):
            members = [w for i in combo for w in orbits[i].elements]
            if best is not None and len(members) >= best[0]:
                continue
            ws = WeightSet.of(members, spec)
            if spans(ws):
                if best is None or len(members) < best[0]:
                    best = (len(members), ws)
    if best is None:
        raise BoundsError("no invariant generating subset exists")
    return best


def naive_min_by_subsets(n: int, p: int, q: int) -> int:
    """Fully naive oracle: every subset of the lattice, filtered to invariant
    and generating.  Only feasible for lattices with at most ~16 elements."""
    spec = LatticeSpec(n, q)
    group = sylow_subgroup(n, p)
    elements = lattice_elements(spec)
    if len(elements) > 16:
        raise BoundsError("subset enumeration infeasible")
    best = None
    members = set(elements)
    for mask in range(1, 1 << len(elements)):
        subset = [elements[i] for i in range(len(elements)) if mask >> i & 1]
        if best is not None and len(subset) >= best:
            continue
        subset_set = set(subset)
        if any(act(g, w) not in subset_set for g in group.generators for w in subset):
            continue
        if spans(WeightSet.of(subset, spec)):
            best = len(subset)
    if best is None:
        raise BoundsError("no invariant generating subset exists")
    return best


def predicted_bound(n: int, p: int, q: int) -> dict:
    """The applicable published lower bound and its hypothesis status."""
    e_q = 0
    m = q
    while m % p == 0:
        m //= p
        e_q += 1
    r = 0
    m = n
    while m % p == 0:
        m //= p
        r += 1
    is_p_power = m == 1 and r >= 1
    if is_p_power:
        bound = p ** (2 * r - 1)
        source = "p-power bound (minimal invariant generating sets in X_{p^r})"
        within = e_q >= (2 if p == 2 else 1)
        note = "" if within else "outside stated hypothesis: q must be >= p^2 when p = 2"
    else:
        e = r  # highest power of p dividing n
        bound = p ** e * (n - p ** e)
        source = "composite-n bound p^e(n - p^e)"
        within = q == p
        note = "" if within else "outside stated hypothesis: composite-n bound assumes q = p"
    return {"bound": bound, "source": source, "within_hypothesis": within, "note": note}


def verify_lower_bound(n: int, p: int, q: int, budget: int = 10_000_000) -> dict:
    """Run the exact search and compare against the published bound."""
    info = predicted_bound(n, p, q)
    result = min_invariant_generating_size(n, p, q, budget=budget)
    report = {
        "n": n,
        "p": p,
        "q": q,
        "bound": info["bound"],
        "bound_source": info["source"],
        "within_hypothesis": info["within_hypothesis"],
        "minimum": result.minimum,
        "tight": result.minimum == info["bound"],
        "witness": result.witness.to_json(),
        "nodes_explored": result.nodes_explored,
        "orbit_count": result.orbit_count,
        "holds": result.minimum >= info["bound"],
    }
    if info["note"]:
        report["note"] = info["note"]
    if info["within_hypothesis"] and result.minimum < info["bound"]:
        raise BoundsError(
            f"lower bound violated within hypothesis: minimum {result.minimum} "
            f"< bound {info['bound']} for (n={n}, p={p}, q={q})")
    return report
