"""Matroids on ground sets {0, ..., m-1} with subsets encoded as int bitmasks.

Two backends share one interface: :class:`LinearMatroid` (columns of a
matrix over GF(p)) and :class:`BasisMatroid` (an explicit basis list).
Everything else (closure, flats, circuits, duals, ...) is derived from the
rank oracle.
"""
from __future__ import annotations

import threading
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from . import gf
from .errors import NotAMatroidError, ResourceError

ENUM_CAP = 20


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def to_mask(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_key(mask: int) -> tuple[int, ...]:
    """Canonical (lexicographic) order on subsets: compare sorted element tuples."""
    return tuple(bits(mask))


def fmt_mask(mask: int) -> str:
    return "{" + ",".join(map(str, bits(mask))) + "}"


class Flat(NamedTuple):
    mask: int
    rank: int

    @property
    def elements(self) -> list[int]:
        return bits(self.mask)


class Matroid:
    """Base class; subclasses implement ``_rank``."""

    def __init__(self, m: int, names: Sequence[str] | None = None):
        if m < 0:
            raise ValueError("ground set size must be non-negative")
        self.m = m
        self.names = tuple(names) if names is not None else None
        self._rank_cache: dict[int, int] = {}
        self._lock = threading.Lock()

    # --- rank oracle -----------------------------------------------------
    def _rank(self, mask: int) -> int:
        raise NotImplementedError

    def rank(self, mask: int | None = None) -> int:
        if mask is None:
            mask = self.full
        r = self._rank_cache.get(mask)
        if r is None:
            r = self._rank(mask)
            self._rank_cache[mask] = r
        return r

    @property
    def full(self) -> int:
        return (1 << self.m) - 1

    @cached_property
    def r(self) -> int:
        return self.rank(self.full)

    def _require_cap(self, cap: int = ENUM_CAP):
        if self.m > cap:
            raise ResourceError(f"ground set of size {self.m} exceeds enumeration cap {cap}")

    # --- basic predicates ------------------------------------------------
    def is_independent(self, mask: int) -> bool:
        return self.rank(mask) == popcount(mask)

    def is_basis(self, mask: int) -> bool:
        return popcount(mask) == self.r and self.rank(mask) == self.r

    def closure(self, mask: int) -> Flat:
        rk = self.rank(mask)
        cl = mask
        for e in range(self.m):
            if not cl >> e & 1 and self.rank(mask | 1 << e) == rk:
                cl |= 1 << e
        return Flat(cl, rk)

    def is_flat(self, mask: int) -> bool:
        return self.closure(mask).mask == mask

    @cached_property
    def loops(self) -> int:
        return to_mask(e for e in range(self.m) if self.rank(1 << e) == 0)

    @cached_property
    def parallel_classes(self) -> list[int]:
        """Parallel classes of non-loop elements, as masks in canonical order."""
        seen = self.loops
        classes = []
        for e in range(self.m):
            if seen >> e & 1:
                continue
            cls = 1 << e
            for f in range(e + 1, self.m):
                if not seen >> f & 1 and self.rank(1 << e | 1 << f) == 1:
                    cls |= 1 << f
            seen |= cls
            classes.append(cls)
        return classes

    @property
    def is_simple(self) -> bool:
        return self.loops == 0 and len(self.parallel_classes) == self.m

    # --- enumerations ----------------------------------------------------
    @cached_property
    def flats_by_rank(self) -> list[list[Flat]]:
        self._require_cap()
        bottom = self.closure(0)
        layers = [[bottom]]
        for k in range(self.r):
            nxt = set()
            for F in layers[-1]:
                for e in range(self.m):
                    if not F.mask >> e & 1:
                        nxt.add(self.closure(F.mask | 1 << e).mask)
            layers.append([Flat(x, k + 1) for x in sorted(nxt, key=mask_key)])
        return layers

    @property
    def flats(self) -> list[Flat]:
        return [F for layer in self.flats_by_rank for F in layer]

    @property
    def hyperplanes(self) -> list[Flat]:
        if self.r == 0:
            return []
        return list(self.flats_by_rank[self.r - 1])

    @property
    def cocircuits(self) -> list[int]:
        return [self.full & ~H.mask for H in self.hyperplanes]

    @cached_property
    def circuits(self) -> list[int]:
        self._require_cap()
        found: list[int] = []
        for k in range(1, self.r + 2):
            for combo in combinations(range(self.m), k):
                S = to_mask(combo)
                if self.rank(S) != k - 1:
                    continue
                if all(self.rank(S & ~(1 << e)) == k - 1 for e in combo):
                    found.append(S)
        return found

    @cached_property
    def bases(self) -> list[int]:
        self._require_cap()
        return [to_mask(c) for c in combinations(range(self.m), self.r) if self.rank(to_mask(c)) == self.r]

    # --- constructions ---------------------------------------------------
    def dual(self) -> "Matroid":
        raise NotImplementedError

    def restrict(self, keep: Sequence[int]) -> "Matroid":
        """Restriction to the elements ``keep``, relabelled 0..len(keep)-1 in the given order."""
        raise NotImplementedError

    def rank_table(self) -> list[int]:
        """Rank of every subset, indexed by mask (for exhaustive comparisons)."""
        self._require_cap()
        return [self.rank(S) for S in range(1 << self.m)]

    def __repr__(self):
        return f"{type(self).__name__}(m={self.m}, r={self.r})"


class LinearMatroid(Matroid):
    """Vector matroid M[A]; column i is element i. Rows are kept at full row rank."""

    def __init__(self, A: gf.MatrixF, names=None):
        if A.nrows and A.ncols:
            red, _, rk = gf.rref(A)
            if rk < A.nrows:
                # row count must equal the rank (normal vectors need full row rank)
                rows = red.rows[:rk]
                A = gf.MatrixF(A.p, tuple(tuple(r[j] for r in rows) for j in range(A.ncols)), rk)
        elif A.nrows:
            A = gf.MatrixF(A.p, (), 0)
        super().__init__(A.ncols, names)
        self.matrix = A
        self.p = A.p

    def _rank(self, mask: int) -> int:
        return gf.vectors_rank((self.matrix.columns[i] for i in bits(mask)), self.p)

    @cached_property
    def r(self) -> int:
        return self.matrix.nrows

    def dual(self) -> "LinearMatroid":
        if self.m == 0:
            return LinearMatroid(gf.MatrixF(self.p, (), 0), self.names)
        if self.matrix.nrows == 0:
            kernel = [tuple(1 if j == i else 0 for j in range(self.m)) for i in range(self.m)]
        else:
            kernel = gf.kernel_basis(self.matrix)
        cols = tuple(tuple(v[j] for v in kernel) for j in range(self.m))
        return LinearMatroid(gf.MatrixF(self.p, cols, len(kernel)), self.names)

    def restrict(self, keep):
        cols = tuple(self.matrix.columns[i] for i in keep)
        names = [self.names[i] for i in keep] if self.names else None
        return LinearMatroid(gf.MatrixF(self.p, cols, self.matrix.nrows), names)


class BasisMatroid(Matroid):
    def __init__(self, m: int, bases: Iterable[int], names=None, validate: bool = True):
        super().__init__(m, names)
        bl = sorted(set(bases), key=mask_key)
        if not bl:
            raise NotAMatroidError("basis list must be nonempty")
        sizes = {popcount(b) for b in bl}
        if len(sizes) != 1:
            raise NotAMatroidError(f"bases of different sizes: {sorted(sizes)}")
        if any(b >> m for b in bl):
            raise NotAMatroidError("basis mentions an element outside the ground set")
        self._bases = bl
        if validate:
            _check_exchange(bl)

    def _rank(self, mask: int) -> int:
        return max(popcount(mask & b) for b in self._bases)

    @cached_property
    def bases(self) -> list[int]:
        return list(self._bases)

    def dual(self) -> "BasisMatroid":
        return BasisMatroid(self.m, [self.full & ~b for b in self._bases], self.names, validate=False)

    def restrict(self, keep):
        keep = list(keep)
        sub = to_mask(keep)
        k = self.rank(sub)
        new_bases = set()
        for b in self._bases:
            inter = b & sub
            if popcount(inter) == k:
                new_bases.add(to_mask(keep.index(e) for e in bits(inter)))
        names = [self.names[i] for i in keep] if self.names else None
        return BasisMatroid(len(keep), new_bases, names, validate=False)


def _check_exchange(bases: list[int]):
    """Basis exchange: for B1, B2 and x in B1\\B2 some y in B2\\B1 has B1-x+y a basis."""
    family = set(bases)
    for b1 in bases:
        for b2 in bases:
            for x in bits(b1 & ~b2):
                base = b1 & ~(1 << x)
                if not any(base | 1 << y in family for y in bits(b2 & ~b1)):
                    raise NotAMatroidError(
                        f"basis exchange fails for {fmt_mask(b1)}, {fmt_mask(b2)} removing {x}"
                    )


# --- constructors ----------------------------------------------------------

def from_matrix(A: gf.MatrixF | Sequence[Sequence[int]], p: int | None = None, names=None) -> LinearMatroid:
    if not isinstance(A, gf.MatrixF):
        if p is None:
            raise ValueError("a prime p is required when passing raw rows")
        A = gf.MatrixF.from_rows(A, p)
    return LinearMatroid(A, names)


def from_columns(columns: Sequence[Sequence[int]], p: int, names=None) -> LinearMatroid:
    return LinearMatroid(gf.MatrixF.from_columns(columns, p), names)


def from_bases(m: int, bases: Iterable[Iterable[int] | int], names=None) -> BasisMatroid:
    masks = [b if isinstance(b, int) else to_mask(b) for b in bases]
    return BasisMatroid(m, masks, names)


def uniform(r: int, n: int) -> BasisMatroid:
    """Abstract U_{r,n}."""
    return BasisMatroid(n, [to_mask(c) for c in combinations(range(n), r)], validate=False)


def direct_sum(M1: Matroid, M2: Matroid) -> Matroid:
    if M1.m + M2.m > ENUM_CAP:
        raise ResourceError(f"direct sum would have {M1.m + M2.m} > {ENUM_CAP} elements")
    names = None
    if M1.names or M2.names:
        names = list(M1.names or map(str, range(M1.m))) + list(M2.names or map(str, range(M2.m)))
    if isinstance(M1, LinearMatroid) and isinstance(M2, LinearMatroid) and M1.p == M2.p:
        r1, r2 = M1.matrix.nrows, M2.matrix.nrows
        cols = [c + (0,) * r2 for c in M1.matrix.columns] + [(0,) * r1 + c for c in M2.matrix.columns]
        return LinearMatroid(gf.MatrixF(M1.p, tuple(cols), r1 + r2), names)
    bases = [b1 | b2 << M1.m for b1 in M1.bases for b2 in M2.bases]
    return BasisMatroid(M1.m + M2.m, bases, names, validate=False)


def simplify(M: Matroid) -> tuple[Matroid, list[int | None]]:
    """Drop loops and all but the least-index element of each parallel class.

    Returns the simple matroid and the map old element -> new element (None for loops).
    """
    keep = [bits(c)[0] for c in M.parallel_classes]
    keep.sort()
    index = {e: i for i, e in enumerate(keep)}
    emap: list[int | None] = [None] * M.m
    for c in M.parallel_classes:
        rep = index[bits(c)[0]]
        for e in bits(c):
            emap[e] = rep
    if len(keep) == M.m:
        return M, emap
    return M.restrict(keep), emap


def components(M: Matroid) -> list[int]:
    """Connected components (masks) of the non-loop elements; coloops are singletons."""
    parent = list(range(M.m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for C in M.circuits:
        els = bits(C)
        for e in els[1:]:
            a, b = find(els[0]), find(e)
            if a != b:
                parent[max(a, b)] = min(a, b)
    blocks: dict[int, int] = {}
    for e in range(M.m):
        if M.loops >> e & 1:
            continue
        blocks[find(e)] = blocks.get(find(e), 0) | 1 << e
    return sorted(blocks.values(), key=mask_key)


def is_connected(M: Matroid) -> bool:
    return M.loops == 0 and len(components(M)) == 1
