"""Finite lattices, the geometric lattice of flats, and modularity tests.

A :class:`Lattice` stores its order as up-set/down-set bitmasks over the
element indices, so meets and joins reduce to intersecting bitmasks.
"""
from __future__ import annotations

from collections import Counter
from functools import cached_property
from typing import Hashable, Sequence

from .errors import InternalConsistencyError, MatroidError, ResourceError
from .matroid import Flat, Matroid, bits, popcount

LATTICE_CAP = 1 << 14


class NotSimpleError(MatroidError, ValueError):
    pass


class Lattice:
    """A finite lattice given by its elements and its order relation.

    ``up[i]`` is the bitmask of all j with i <= j; ``down[i]`` of all j <= i.
    """

    def __init__(self, labels: Sequence[Hashable], up: Sequence[int]):
        if len(labels) > LATTICE_CAP:
            raise ResourceError(f"lattice of size {len(labels)} exceeds cap {LATTICE_CAP}")
        self.labels = list(labels)
        self.up = list(up)
        n = len(self.labels)
        down = [0] * n
        for i, u in enumerate(self.up):
            for j in bits(u):
                down[j] |= 1 << i
        self.down = down

    def __len__(self):
        return len(self.labels)

    @classmethod
    def from_leq(cls, labels, leq) -> "Lattice":
        n = len(labels)
        up = []
        for i in range(n):
            u = 0
            for j in range(n):
                if leq(labels[i], labels[j]):
                    u |= 1 << j
            up.append(u)
        return cls(labels, up)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    @cached_property
    def bottom(self) -> int:
        return next(i for i in range(len(self)) if popcount(self.up[i]) == len(self))

    @cached_property
    def top(self) -> int:
        return next(i for i in range(len(self)) if popcount(self.down[i]) == len(self))

    @cached_property
    def upper_covers(self) -> list[list[int]]:
        """upper_covers[i] = elements covering i."""
        out = []
        for i in range(len(self)):
            strict = self.up[i] & ~(1 << i)
            covers = [j for j in bits(strict) if not any(
                k != j and self.up[k] >> j & 1 for k in bits(strict))]
            out.append(covers)
        return out

    @cached_property
    def lower_covers(self) -> list[list[int]]:
        out = [[] for _ in range(len(self))]
        for i, cs in enumerate(self.upper_covers):
            for j in cs:
                out[j].append(i)
        return out

    @cached_property
    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, cs in enumerate(self.upper_covers) for j in cs]

    @cached_property
    def height(self) -> list[int]:
        """Length of the longest chain from the bottom to each element."""
        h = [0] * len(self)
        order = sorted(range(len(self)), key=lambda i: popcount(self.down[i]))
        for i in order:
            for j in self.upper_covers[i]:
                h[j] = max(h[j], h[i] + 1)
        return h

    @property
    def atoms(self) -> list[int]:
        return list(self.upper_covers[self.bottom])

    @property
    def coatoms(self) -> list[int]:
        return list(self.lower_covers[self.top])

    def _least(self, mask: int) -> int | None:
        for i in bits(mask):
            if self.up[i] & mask == mask:
                return i
        return None

    def _greatest(self, mask: int) -> int | None:
        for i in bits(mask):
            if self.down[i] & mask == mask:
                return i
        return None

    def join(self, i: int, j: int) -> int:
        z = self._least(self.up[i] & self.up[j])
        if z is None:
            raise ValueError("not a lattice: no least upper bound")
        return z

    def meet(self, i: int, j: int) -> int:
        z = self._greatest(self.down[i] & self.down[j])
        if z is None:
            raise ValueError("not a lattice: no greatest lower bound")
        return z

    def join_all(self, items) -> int:
        mask = (1 << len(self)) - 1
        for i in items:
            mask &= self.up[i]
        return self._least(mask)

    def covers(self, i: int, j: int) -> bool:
        """True iff i covers j."""
        return i in self.upper_covers[j]

    def opposite(self) -> "Lattice":
        return OppositeLattice(self)


class OppositeLattice(Lattice):
    """The same elements with the order reversed; meet and join are swapped."""

    def __init__(self, base: Lattice):
        self.base = base
        self.labels = base.labels
        self.up = base.down
        self.down = base.up

    def meet(self, i, j):
        return self.base.join(i, j)

    def join(self, i, j):
        return self.base.meet(i, j)

    def opposite(self) -> Lattice:
        return self.base


class FlatLattice(Lattice):
    """L(M) for a simple matroid M: flats ordered by inclusion."""

    def __init__(self, M: Matroid, verify: bool = True):
        if not M.is_simple:
            raise NotSimpleError("matroid is not simple; simplify first")
        self.matroid = M
        flats = M.flats
        self.flats: list[Flat] = flats
        self.index = {F.mask: i for i, F in enumerate(flats)}
        up = []
        for F in flats:
            u = 0
            for j, G in enumerate(flats):
                if F.mask & ~G.mask == 0:
                    u |= 1 << j
            up.append(u)
        super().__init__([F.mask for F in flats], up)
        if verify:
            self._verify()

    def meet(self, i, j):
        return self.index[self.flats[i].mask & self.flats[j].mask]

    def join(self, i, j):
        return self.index[self.matroid.closure(self.flats[i].mask | self.flats[j].mask).mask]

    def rank_of(self, i: int) -> int:
        return self.flats[i].rank

    def _verify(self):
        n = len(self)
        for i in range(n):
            for j in range(i, n):
                if self.meet(i, j) != Lattice.meet(self, i, j) or self.join(i, j) != Lattice.join(self, i, j):
                    raise InternalConsistencyError(
                        "meet/join of flats disagrees with the inclusion order",
                        (self.flats[i], self.flats[j]))
        if any(self.height[i] != F.rank for i, F in enumerate(self.flats)):
            raise InternalConsistencyError("lattice of flats is not graded by rank")
        ok, witness = is_geometric(self, check_semimodular=self.matroid.m <= 12)
        if not ok:
            raise InternalConsistencyError("lattice of flats is not geometric", witness)


def build_lattice(M: Matroid) -> FlatLattice:
    return FlatLattice(M)


def opposite(L: Lattice) -> Lattice:
    return L.opposite()


def is_geometric(L: Lattice, check_semimodular: bool = True) -> tuple[bool, tuple | None]:
    """Graded, atomic and (upper) semimodular; on failure returns a witness tuple."""
    if len(L) > LATTICE_CAP:
        raise ResourceError("lattice too large")
    h = L.height
    for i, j in L.cover_pairs:
        if h[j] != h[i] + 1:
            return False, ("not graded", i, j)
    atoms = L.atoms
    for x in range(len(L)):
        below = [a for a in atoms if L.leq(a, x)]
        if x != L.bottom and L.join_all(below) != x:
            return False, ("not atomic", x)
    if check_semimodular:
        for x in range(len(L)):
            for y in range(len(L)):
                if x == y:
                    continue
                if L.covers(x, L.meet(x, y)) and not L.covers(L.join(x, y), y):
                    return False, ("not semimodular", x, y)
    return True, None


def is_modular_pair(M: Matroid, X: int, Y: int) -> bool:
    join = M.closure(X | Y).mask
    return M.rank(join) + M.rank(X & Y) == M.rank(X) + M.rank(Y)


def modular_pair_violation(M: Matroid) -> tuple[int, int] | None:
    flats = [F.mask for F in M.flats]
    for i, X in enumerate(flats):
        for Y in flats[i + 1:]:
            if not is_modular_pair(M, X, Y):
                return X, Y
    return None


def is_modular(M: Matroid) -> bool:
    """Pairwise modular-pair test, cross-checked against the count |H(M)| = |E(M)|."""
    if not M.is_simple:
        raise NotSimpleError("matroid is not simple; simplify first")
    pairwise = modular_pair_violation(M) is None
    greene = len(M.hyperplanes) == M.m
    if pairwise != greene:
        raise InternalConsistencyError(
            f"modular-pair test says {pairwise} but |H|={len(M.hyperplanes)}, |E|={M.m}")
    return pairwise


def _fingerprints(L: Lattice) -> list[tuple]:
    return [(L.height[i], len(L.upper_covers[i]), len(L.lower_covers[i]),
             popcount(L.up[i]), popcount(L.down[i])) for i in range(len(L))]


def lattice_iso(L1: Lattice, L2: Lattice) -> dict[int, int] | None:
    """An order isomorphism L1 -> L2 as an index map, or None."""
    if len(L1) != len(L2):
        return None
    f1, f2 = _fingerprints(L1), _fingerprints(L2)
    if Counter(f1) != Counter(f2):
        return None
    buckets: dict[tuple, list[int]] = {}
    for j, fp in enumerate(f2):
        buckets.setdefault(fp, []).append(j)
    order = sorted(range(len(L1)), key=lambda i: (len(buckets[f1[i]]), L1.height[i], i))
    # prefer elements adjacent to already-ordered ones for early pruning
    order = _connected_order(L1, order)
    assign: dict[int, int] = {}
    used = set()

    def consistent(i, j):
        for k, l in assign.items():
            if L1.leq(i, k) != L2.leq(j, l) or L1.leq(k, i) != L2.leq(l, j):
                return False
        return True

    def search(pos):
        if pos == len(order):
            return True
        i = order[pos]
        for j in buckets[f1[i]]:
            if j not in used and consistent(i, j):
                assign[i] = j
                used.add(j)
                if search(pos + 1):
                    return True
                del assign[i]
                used.discard(j)
        return False

    return dict(assign) if search(0) else None


def _connected_order(L: Lattice, order: list[int]) -> list[int]:
    rank_in = {x: k for k, x in enumerate(order)}
    seen, out = set(), []
    frontier: list[int] = []
    for start in order:
        if start in seen:
            continue
        frontier = [start]
        seen.add(start)
        while frontier:
            frontier.sort(key=rank_in.get)
            x = frontier.pop(0)
            out.append(x)
            for y in L.upper_covers[x] + L.lower_covers[x]:
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
    return out


def intersection_property_violation(L: Lattice):
    """For distinct atoms x, y and any z with x <= y v z, some atom w <= (x v y) ^ z."""
    atoms = L.atoms
    for x in atoms:
        for y in atoms:
            if x == y:
                continue
            xy = L.join(x, y)
            for z in range(len(L)):
                if L.leq(x, L.join(y, z)):
                    target = L.meet(xy, z)
                    if not any(L.leq(w, target) for w in atoms):
                        return x, y, z
    return None


def to_dot(L: Lattice, name: str = "lattice", label=None) -> str:
    """Hasse diagram in DOT: one node per element, one edge per cover (lower -> upper)."""
    if label is None:
        label = lambda i: str(L.labels[i])  # noqa: E731
    lines = [f'digraph "{name}" {{']
    for i in range(len(L)):
        lines.append(f'  N{i}[label="{label(i)}"];')
    for i, j in L.cover_pairs:
        lines.append(f"  N{i} -> N{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
