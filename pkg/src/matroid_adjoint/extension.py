"""Linear subclasses and the extension lattice.

A linear subclass is a set of hyperplanes closed under: if H1, H2 are in it
and meet in a flat of rank r-2, every hyperplane through that flat is in it.
Subsets of hyperplanes are bitmasks over the canonical hyperplane order.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import Refutation, ResourceError
from .lattice import Lattice, NotSimpleError, is_modular
from .matroid import Matroid, bits, popcount

HYPERPLANE_CAP = 13


def _pencils(M: Matroid) -> list[tuple[int, int, int]]:
    """(i, j, mask of hyperplanes containing H_i & H_j) for pairs meeting in rank r-2."""
    hyps = [H.mask for H in M.hyperplanes]
    out = []
    for i in range(len(hyps)):
        for j in range(i + 1, len(hyps)):
            X = hyps[i] & hyps[j]
            if M.rank(X) == M.r - 2:
                through = sum(1 << k for k, H in enumerate(hyps) if X & ~H == 0)
                out.append((i, j, through))
    return out


def is_linear_subclass(M: Matroid, S: int, pencils=None) -> tuple[bool, tuple[int, int, int] | None]:
    """Returns (ok, witness); the witness is a violating hyperplane-index triple."""
    if pencils is None:
        pencils = _pencils(M)
    for i, j, through in pencils:
        if S >> i & 1 and S >> j & 1 and through & ~S:
            missing = bits(through & ~S)[0]
            return False, (i, j, missing)
    return True, None


@dataclass
class ExtensionLattice:
    matroid: Matroid
    subclasses: list[int]  # hyperplane-index masks, ordered by size then value

    def __len__(self):
        return len(self.subclasses)

    def as_lattice(self) -> Lattice:
        up = []
        for a in self.subclasses:
            up.append(sum(1 << j for j, b in enumerate(self.subclasses) if a & ~b == 0))
        return Lattice(self.subclasses, up)

    def label(self, i: int) -> str:
        S = self.subclasses[i]
        width = len(self.matroid.hyperplanes)
        return f"{popcount(S)}:" + "".join(str(S >> k & 1) for k in range(width))


def enumerate_linear_subclasses(M: Matroid) -> ExtensionLattice:
    h = len(M.hyperplanes)
    if h > HYPERPLANE_CAP:
        raise ResourceError(f"{h} hyperplanes exceed cap {HYPERPLANE_CAP}")
    pencils = _pencils(M)
    subs = [S for S in range(1 << h) if is_linear_subclass(M, S, pencils)[0]]
    subs.sort(key=lambda S: (popcount(S), S))
    return ExtensionLattice(M, subs)


def hyperplanes_above(M: Matroid, X: int) -> int:
    """H_X(M): hyperplanes containing the flat X, as an index mask."""
    return sum(1 << k for k, H in enumerate(M.hyperplanes) if X & ~H.mask == 0)


@dataclass
class LambdaMap:
    images: dict[int, int]  # flat mask -> subclass mask
    extension: ExtensionLattice
    injective: bool
    surjective: bool
    order_iso: bool
    missing: list[int]  # subclasses not of the form H_X

    @property
    def is_isomorphism(self) -> bool:
        return self.injective and self.surjective and self.order_iso


def lambda_map(M: Matroid, require_modular: bool = True) -> LambdaMap:
    """X -> H_X(M) from the opposite lattice of flats into the extension lattice.

    For modular M this must be an order isomorphism; a failure raises
    :class:`Refutation`. With ``require_modular=False`` the map is built for
    any simple matroid and the report says where bijectivity breaks.
    """
    if not M.is_simple:
        raise NotSimpleError("matroid is not simple; simplify first")
    modular = is_modular(M)
    if require_modular and not modular:
        raise ValueError("the flat/linear-subclass isomorphism requires a modular matroid")
    ext = enumerate_linear_subclasses(M)
    flats = M.flats
    images = {F.mask: hyperplanes_above(M, F.mask) for F in flats}
    subclass_set = set(ext.subclasses)
    for X, S in images.items():
        if S not in subclass_set:
            raise Refutation("a set of hyperplanes above a flat is not a linear subclass", X)
    injective = len(set(images.values())) == len(images)
    missing = sorted(subclass_set - set(images.values()), key=lambda S: (popcount(S), S))
    order_iso = all(
        (X.mask & ~Y.mask == 0) == (images[Y.mask] & ~images[X.mask] == 0)
        for X in flats for Y in flats
    )
    result = LambdaMap(images, ext, injective, not missing, order_iso, missing)
    if modular and not result.is_isomorphism:
        raise Refutation("modular matroid whose extension lattice is not its opposite lattice of flats",
                         missing)
    return result
