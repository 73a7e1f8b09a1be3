"""Zero-sum weight lattices over Z and Z/q with exact integer linear algebra.

The ambient lattice is either Z^n or (Z/q)^n (q a prime power); the working
sublattice is the rank n-1 zero-sum part, coordinatized in the fixed basis
a[1,2], a[2,3], ..., a[n-1,n].  All arithmetic is exact (Python ints).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple


class LatticeError(ValueError):
    pass


def prime_power_root(q: int) -> Optional[int]:
    """Return p if q = p^e for a prime p and e >= 1, else None."""
    if q < 2:
        return None
    p = None
    m = q
    for d in itertools.chain([2], range(3, q + 1, 2)):
        if d * d > m:
            if m > 1:
                p = m if p is None or p == m else None
            break
        if m % d == 0:
            p = d
            while m % d == 0:
                m //= d
            if m != 1:
                return None
            break
    return p


@dataclass(frozen=True)
class LatticeSpec:
    """Ambient length n plus coefficient modulus (0 = integers, q = p^e)."""

    n: int
    modulus: int = 0
    zero_sum: bool = True

    def __post_init__(self) -> None:
        if self.n < 1:
            raise LatticeError(f"ambient length must be positive, got {self.n}")
        if self.modulus < 0:
            raise LatticeError("modulus must be non-negative")
        if self.modulus and prime_power_root(self.modulus) is None:
            raise LatticeError(f"modulus {self.modulus} is not a prime power")

    @property
    def prime(self) -> Optional[int]:
        return prime_power_root(self.modulus) if self.modulus else None

    @property
    def rank(self) -> int:
        return self.n - 1 if self.zero_sum else self.n


@dataclass(frozen=True, order=True)
class Weight:
    """Element of the character lattice: length-n integer vector.

    Entries sum to zero (modulus 0) or to 0 mod q, and are stored reduced to
    [0, q) when a modulus is present, so equality and hashing are canonical.
    """

    entries: Tuple[int, ...]
    spec: LatticeSpec

    @classmethod
    def of(cls, entries: Sequence[int], spec: LatticeSpec) -> "Weight":
        entries = tuple(int(e) for e in entries)
        if len(entries) != spec.n:
            raise LatticeError(f"expected {spec.n} entries, got {len(entries)}")
        if spec.modulus:
            entries = tuple(e % spec.modulus for e in entries)
            if spec.zero_sum and sum(entries) % spec.modulus != 0:
                raise LatticeError(f"entries {entries} do not sum to 0 mod {spec.modulus}")
        elif spec.zero_sum and sum(entries) != 0:
            raise LatticeError(f"entries {entries} do not sum to 0")
        return cls(entries, spec)

    def __add__(self, other: "Weight") -> "Weight":
        if self.spec != other.spec:
            raise LatticeError("mixed lattice specs")
        return Weight.of([a + b for a, b in zip(self.entries, other.entries)], self.spec)

    def __neg__(self) -> "Weight":
        return Weight.of([-a for a in self.entries], self.spec)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def lift(self) -> Tuple[int, ...]:
        """Integer representative; for zero-sum mod-q weights the last entry
        absorbs the defect so the lift sums to zero exactly."""
        if not self.modulus_q():
            return self.entries
        ent = list(self.entries)
        if self.spec.zero_sum:
            ent[-1] -= sum(ent)
        return tuple(ent)

    def modulus_q(self) -> int:
        return self.spec.modulus

    def reduce(self, q: int) -> "Weight":
        """Entrywise reduction into the mod-q lattice of the same length."""
        return Weight.of(self.entries, LatticeSpec(self.spec.n, q, self.spec.zero_sum))


@dataclass(frozen=True)
class WeightSet:
    """Deduplicated, canonically sorted collection of weights over one spec."""

    elements: Tuple[Weight, ...]
    spec: LatticeSpec

    @classmethod
    def of(cls, weights: Iterable[Weight], spec: Optional[LatticeSpec] = None) -> "WeightSet":
        ws = sorted(set(weights))
        if ws:
            specs = {w.spec for w in ws}
            if len(specs) > 1:
                raise LatticeError("mixed lattice specs in weight set")
            found = next(iter(specs))
            if spec is not None and spec != found:
                raise LatticeError("weight set spec mismatch")
            spec = found
        elif spec is None:
            raise LatticeError("empty weight set needs an explicit spec")
        return cls(tuple(ws), spec)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Weight]:
        return iter(self.elements)

    def __contains__(self, w: Weight) -> bool:
        return w in set(self.elements)

    def index(self, w: Weight) -> int:
        return self.elements.index(w)

    def reduce(self, q: int) -> "WeightSet":
        return WeightSet.of([w.reduce(q) for w in self.elements])

    def to_json(self) -> list:
        return [list(w.entries) for w in self.elements]


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...]

    @classmethod
    def of(cls, grid: Sequence[Sequence[int]]) -> "IntegerMatrix":
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        if any(len(r) != cols for r in grid):
            raise LatticeError("ragged matrix")
        return cls(rows, cols, tuple(tuple(int(x) for x in r) for r in grid))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls.of([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise LatticeError("dimension mismatch in matrix product")
        grid = [
            [sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
             for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntegerMatrix.of(grid) if grid else IntegerMatrix(0, other.cols, ())

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))


@dataclass(frozen=True)
class KernelDescription:
    """Integer generators of Ker(phi: Z[Lambda] -> X), indexed by the
    canonical order of Lambda."""

    basis: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.basis)


def standard_weight(i: int, j: int, spec: LatticeSpec) -> Weight:
    """The weight a[i,j]: +1 at position i, -1 at position j (1-based)."""
    if not (1 <= i <= spec.n and 1 <= j <= spec.n):
        raise LatticeError(f"index out of range for n={spec.n}: ({i}, {j})")
    if i == j:
        raise LatticeError("a[i,j] requires i != j")
    ent = [0] * spec.n
    ent[i - 1] = 1
    ent[j - 1] = -1
    return Weight.of(ent, spec)


def smith_normal_form(m: IntegerMatrix) -> Tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return (diagonal, left, right) with left*m*right = diagonal,
    left/right unimodular and non-negative diagonal d1 | d2 | ... ."""
    rows, cols = m.rows, m.cols
    a = [list(r) for r in m.entries]
    left = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    right = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):  # row dst += f * row src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + f * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, f):
        for r in a:
            r[dst] += f * r[src]
        for r in right:
            r[dst] += f * r[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    t = 0
    while t < rows and t < cols:
        # pick smallest nonzero pivot in the remaining block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t] % a[t][t]:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
                elif a[i][t]:
                    add_row(t, i, -(a[i][t] // a[t][t]))
            for j in range(t + 1, cols):
                if a[t][j] % a[t][t]:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
                elif a[t][j]:
                    add_col(t, j, -(a[t][j] // a[t][t]))
            if dirty:
                continue
            # pivot must divide the rest of the block
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    # move zero diagonal entries to the end (divisibility then holds)
    diag = IntegerMatrix.of(a) if rows else IntegerMatrix(0, cols, ())
    return (
        diag,
        IntegerMatrix.of(left) if rows else IntegerMatrix(0, 0, ()),
        IntegerMatrix.of(right) if cols else IntegerMatrix(0, 0, ()),
    )


def _basis_coordinates(w: Weight) -> Tuple[int, ...]:
    """Coordinates of an (exactly lifted) weight in the canonical chart.

    Zero-sum lattices use the basis a[1,2], ..., a[n-1,n]; the coordinate
    vector is the prefix-sum sequence of the lifted entries.  Full lattices
    use the standard basis, i.e. the entries themselves.
    """
    ent = w.lift()
    if not w.spec.zero_sum:
        return ent
    coords = []
    acc = 0
    for e in ent[:-1]:
        acc += e
        coords.append(acc)
    return tuple(coords)


def coordinate_matrix(lam: WeightSet) -> IntegerMatrix:
    """rank x |Lambda| matrix whose columns are the chart coordinates of the
    elements of Lambda, lifted to Z; mod-q sets get q times each basis vector
    appended so integer surjectivity matches surjectivity over Z/q."""
    rank = lam.spec.rank
    cols = [_basis_coordinates(w) for w in lam.elements]
    if lam.spec.modulus:
        q = lam.spec.modulus
        for i in range(rank):
            cols.append(tuple(q if j == i else 0 for j in range(rank)))
    grid = [[c[i] for c in cols] for i in range(rank)]
    return IntegerMatrix.of(grid) if rank else IntegerMatrix(0, len(cols), ())


def spans(lam: WeightSet) -> bool:
    """True iff Lambda generates the full (zero-sum) lattice over Z or Z/q."""
    rank = lam.spec.rank
    if rank == 0:
        return True
    if not lam.elements and not lam.spec.modulus:
        return False
    mat = coordinate_matrix(lam)
    diag, _, _ = smith_normal_form(mat)
    d = diag.diagonal()
    return len(d) == rank and all(x == 1 for x in d)


def kernel_basis(lam: WeightSet) -> KernelDescription:
    """Integer basis of {c in Z[Lambda] : sum c_i * lambda_i = 0} (modulus 0)."""
    if lam.spec.modulus:
        raise LatticeError("kernel_basis requires modulus 0; see kernel_generators_mod")
    s = len(lam)
    mat = coordinate_matrix(lam)
    diag, _, right = smith_normal_form(mat)
    d = diag.diagonal()
    r = sum(1 for x in d if x != 0)
    basis = tuple(right.column(j) for j in range(r, s))
    return KernelDescription(basis)


def kernel_generators_mod(lam: WeightSet) -> KernelDescription:
    """Generators of {c in Z[Lambda] : sum c_i * lambda_i = 0 in (Z/q)-lattice}.

    Computed as the projection of the integer kernel of [A | q*I] onto the
    Z[Lambda] coordinates.
    """
    q = lam.spec.modulus
    if not q:
        return kernel_basis(lam)
    s = len(lam)
    mat = coordinate_matrix(lam)  # already has q*I columns appended
    diag, _, right = smith_normal_form(mat)
    d = diag.diagonal()
    r = sum(1 for x in d if x != 0)
    gens = [right.column(j)[:s] for j in range(r, mat.cols)]
    # q * e_i always lies in the kernel; make sure generation is not lost to
    # projection by including them explicitly.
    for i in range(s):
        gens.append(tuple(q if j == i else 0 for j in range(s)))
    return KernelDescription(tuple(gens))


def rank_mod_p(lam: Iterable[Weight], p: int, rank: int) -> int:
    """F_p-rank of the chart coordinates of the given weights (Gaussian
    elimination, exact)."""
    pivots: dict = {}
    for w in lam:
        v = [c % p for c in _basis_coordinates(w)]
        while True:
            lead = next((i for i, x in enumerate(v) if x), None)
            if lead is None:
                break
            if lead in pivots:
                f = v[lead]
                v = [(x - f * y) % p for x, y in zip(v, pivots[lead])]
            else:
                inv = pow(v[lead], -1, p)
                pivots[lead] = [x * inv % p for x in v]
                break
        if len(pivots) == rank:
            break
    return len(pivots)


def in_p_multiple(w: Weight, p: int) -> bool:
    """True iff w lies in p * X_n, i.e. every entry is divisible by p in Z/q."""
    q = w.spec.modulus
    if not q:
        raise LatticeError("in_p_multiple requires a mod-q lattice")
    if w.spec.prime != p:
        raise LatticeError(f"prime {p} does not match modulus {q}")
    return all(e % p == 0 for e in w.entries)


def zero_weight(spec: LatticeSpec) -> Weight:
    return Weight.of([0] * spec.n, spec)
