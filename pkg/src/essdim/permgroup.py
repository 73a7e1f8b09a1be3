"""Sylow p-subgroups of S_n as iterated wreath products, acting on weights.

The block layout is fixed: the n mod p leftover positions (base-p digit at
exponent 0) come first and are fixed by the whole group, then one block per
remaining digit unit, in increasing size order.  Within a block of size p^r
the recursive wreath structure uses consecutive sub-blocks of size p^(r-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .lattice import Weight, WeightSet


class PermError(ValueError):
    pass


class GroupTooLarge(RuntimeError):
    """Raised when a closure exceeds its element cap."""


@dataclass(frozen=True, order=True)
class Perm:
    """Permutation of {1..n}; images[i-1] is the image of i."""

    images: Tuple[int, ...]

    @classmethod
    def of(cls, images: Sequence[int]) -> "Perm":
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise PermError(f"not a bijection of 1..{len(images)}: {images}")
        return cls(images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> "Perm":
        """Parse cycle notation like "(1 2)(3 4)"; points are whitespace
        separated, fixed points may be omitted."""
        images = list(range(1, n + 1))
        text = text.strip()
        if text and text not in ("()", "e", "id"):
            if not (text.startswith("(") and text.endswith(")")):
                raise PermError(f"bad cycle notation: {text!r}")
            for chunk in text[1:-1].split(")("):
                pts = [int(t) for t in chunk.replace(",", " ").split()]
                if len(set(pts)) != len(pts) or any(not 1 <= x <= n for x in pts):
                    raise PermError(f"bad cycle {chunk!r} for n={n}")
                for a, b in zip(pts, pts[1:] + pts[:1]):
                    images[a - 1] = b
        if sorted(images) != list(range(1, n + 1)):
            raise PermError(f"cycles overlap in {text!r}")
        return cls.of(images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        """Composition: (self * other)(i) = self(other(i))."""
        if self.n != other.n:
            raise PermError("degree mismatch")
        return Perm(tuple(self.images[other.images[i] - 1] for i in range(self.n)))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(self.images[i] == i + 1 for i in range(self.n))

    def order(self) -> int:
        k = 1
        g = self
        while not g.is_identity():
            g = g * self
            k += 1
        return k

    def cycles(self) -> List[Tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cyc)


@dataclass(frozen=True)
class BlockStructure:
    """Base-p digit decomposition of n and the induced tiling of {1..n}."""

    p: int
    n: int
    digits: Tuple[Tuple[int, int], ...]  # (multiplicity n_i, exponent e_i), e_i >= 1
    blocks: Tuple[Tuple[int, int], ...]  # inclusive 1-based intervals, increasing size
    fixed_points: int  # count of leading positions fixed by the whole group

    def block_of(self, pos: int) -> Optional[int]:
        for idx, (lo, hi) in enumerate(self.blocks):
            if lo <= pos <= hi:
                return idx
        return None


@dataclass(frozen=True)
class PermGroupSpec:
    """Generating set plus block metadata; order_exponent is v_p(|group|)."""

    generators: Tuple[Perm, ...]
    structure: Optional[BlockStructure]
    order_exponent: int
    p: int
    n: int
    is_p_group: bool = True


def p_adic_digits(n: int, p: int) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    """(n mod-p fixed count, ((n_i, e_i), ...)) with e_i >= 1 increasing."""
    digits = []
    e = 0
    fixed = 0
    while n:
        d = n % p
        if d:
            if e == 0:
                fixed = d
            else:
                digits.append((d, e))
        n //= p
        e += 1
    return fixed, tuple(digits)


def legendre_exponent(n: int, p: int) -> int:
    """v_p(n!) = sum of floor(n / p^i)."""
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


def _wreath_generators(offset: int, r: int, p: int, n: int) -> List[Perm]:
    """Generators of the Sylow subgroup on the block [offset+1, offset+p^r]."""
    if r == 0:
        return []
    sub = p ** (r - 1)
    gens = _wreath_generators(offset, r - 1, p, n)
    images = list(range(1, n + 1))
    for t in range(p):
        for x in range(sub):
            images[offset + t * sub + x] = offset + ((t + 1) % p) * sub + x + 1
    gens.append(Perm.of(images))
    return gens


def sylow_subgroup(n: int, p: int) -> PermGroupSpec:
    """The Sylow p-subgroup P_n of S_n, as a direct product of iterated
    wreath products, one per base-p digit unit of n."""
    if n < 1:
        raise PermError("n must be positive")
    fixed, digits = p_adic_digits(n, p)
    blocks: List[Tuple[int, int]] = []
    pos = fixed
    gens: List[Perm] = []
    for mult, e in digits:
        size = p ** e
        for _ in range(mult):
            blocks.append((pos + 1, pos + size))
            gens.extend(_wreath_generators(pos, e, p, n))
            pos += size
    assert pos == n
    structure = BlockStructure(p=p, n=n, digits=digits, blocks=tuple(blocks), fixed_points=fixed)
    return PermGroupSpec(
        generators=tuple(gens),
        structure=structure,
        order_exponent=legendre_exponent(n, p),
        p=p,
        n=n,
    )


def symmetric_group(m: int, p: int) -> PermGroupSpec:
    """Full S_m (used as the finite part acting on the dual basis weights)."""
    gens: List[Perm] = []
    if m >= 2:
        gens.append(Perm.from_cycles("(1 2)", m))
    if m >= 3:
        gens.append(Perm.of(list(range(2, m + 1)) + [1]))
    return PermGroupSpec(
        generators=tuple(gens),
        structure=None,
        order_exponent=legendre_exponent(m, p),
        p=p,
        n=max(m, 1),
        is_p_group=m < 3,
    )


def act(g: Perm, w: Weight) -> Weight:
    """Permute entries: the image has w's i-th entry at position g(i)."""
    if g.n != w.spec.n:
        raise PermError(f"degree {g.n} vs lattice length {w.spec.n}")
    ent = [0] * g.n
    for i in range(1, g.n + 1):
        ent[g(i) - 1] = w.entries[i - 1]
    return Weight.of(ent, w.spec)


def orbit(group: PermGroupSpec, w: Weight) -> WeightSet:
    """Closure of {w} under the generators (breadth-first, sorted frontier)."""
    seen = {w}
    frontier = [w]
    while frontier:
        nxt = []
        for x in sorted(frontier):
            for g in group.generators:
                y = act(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return WeightSet.of(seen, w.spec)


def _block_rotation(block: Tuple[int, int], p: int, n: int) -> Perm:
    """Product of the disjoint p-cycles rotating each consecutive p-run of the
    block; generates the center of the wreath product on that block."""
    lo, hi = block
    images = list(range(1, n + 1))
    for start in range(lo, hi + 1, p):
        for x in range(p):
            images[start + x - 1] = start + (x + 1) % p
    return Perm.of(images)


def center_order_p_elements(group: PermGroupSpec) -> Tuple[Perm, ...]:
    """All non-identity elements of the center's p-torsion: per block, powers
    of the product-of-p-cycles rotation; count p^(#blocks) - 1."""
    st = group.structure
    if st is None:
        raise PermError("center_order_p_elements needs a Sylow block structure")
    if st.fixed_points:
        raise PermError("group has fixed points; center elements require p | n")
    rotations = [_block_rotation(b, st.p, st.n) for b in st.blocks]
    out: List[Perm] = []
    exps = [0] * len(rotations)
    total = st.p ** len(rotations)
    for code in range(1, total):
        c = code
        g = Perm.identity(st.n)
        for rot in rotations:
            k = c % st.p
            c //= st.p
            for _ in range(k):
                g = g * rot
        out.append(g)
    return tuple(sorted(out))


def enumerate_elements(group: PermGroupSpec, cap: int) -> Tuple[Perm, ...]:
    """Full element list by generator closure; errors past the cap."""
    ident = Perm.identity(group.n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in group.generators:
                y = g * x
                if y not in seen:
                    if len(seen) >= cap:
                        raise GroupTooLarge(f"cap {cap} exceeded during closure")
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))
