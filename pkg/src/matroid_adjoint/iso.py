"""Exact isomorphism testing for small matroids.

The search assigns ground-set elements one at a time, restricted to
elements with the same invariant profile, and prunes as soon as a circuit
of one side maps onto a non-circuit of the other.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

from .errors import InternalConsistencyError, ResourceError
from .matroid import Matroid, bits, popcount, to_mask

ISO_CAP = 16


@dataclass(frozen=True)
class Fingerprint:
    m: int
    rank: int
    flat_counts: tuple[int, ...]
    circuit_sizes: tuple[tuple[int, int], ...]
    profiles: tuple[tuple, ...]


def element_profiles(M: Matroid) -> list[tuple]:
    """Per element: flats of each rank containing it, then circuits of each size containing it."""
    prof = []
    for e in range(M.m):
        flats = tuple(sum(1 for F in layer if F.mask >> e & 1) for layer in M.flats_by_rank)
        circ = Counter(popcount(C) for C in M.circuits if C >> e & 1)
        prof.append((flats, tuple(sorted(circ.items()))))
    return prof


def fingerprint(M: Matroid) -> Fingerprint:
    return Fingerprint(
        m=M.m,
        rank=M.r,
        flat_counts=tuple(len(layer) for layer in M.flats_by_rank),
        circuit_sizes=tuple(sorted(Counter(popcount(C) for C in M.circuits).items())),
        profiles=tuple(sorted(element_profiles(M))),
    )


def _circuits_by_element(M: Matroid) -> list[list[int]]:
    out = [[] for _ in range(M.m)]
    for C in M.circuits:
        for e in bits(C):
            out[e].append(C)
    return out


def matroid_iso(M: Matroid, N: Matroid, verify: bool = True, seed: int = 0) -> list[int] | None:
    """A bijection f (as a list, f[e] = image of e) with rank(S) = rank(f(S)), or None."""
    if M.m > ISO_CAP or N.m > ISO_CAP:
        raise ResourceError(f"isomorphism search is capped at {ISO_CAP} elements")
    if M.m != N.m or M.r != N.r:
        return None
    if fingerprint(M) != fingerprint(N):
        return None
    pm, pn = element_profiles(M), element_profiles(N)
    cand: dict[tuple, list[int]] = {}
    for y, pr in enumerate(pn):
        cand.setdefault(pr, []).append(y)
    circ_m, circ_n = set(M.circuits), set(N.circuits)
    by_el_m, by_el_n = _circuits_by_element(M), _circuits_by_element(N)

    # rarest profile first, then grow along shared small circuits
    order: list[int] = []
    remaining = set(range(M.m))
    while remaining:
        placed = to_mask(order)

        def score(e):
            links = sum(1 for C in by_el_m[e] if C & placed and popcount(C & ~placed) == 1)
            return (-links, len(cand[pm[e]]), e)

        e = min(remaining, key=score)
        order.append(e)
        remaining.discard(e)

    f = [-1] * M.m
    used = 0

    def ok(e, y):
        dom = to_mask(x for x in order if f[x] >= 0) | 1 << e
        img = used | 1 << y
        for C in by_el_m[e]:
            if C & ~dom == 0:
                image = to_mask(f[x] if x != e else y for x in bits(C))
                if image not in circ_n:
                    return False
        inv = {f[x]: x for x in order if f[x] >= 0}
        inv[y] = e
        for D in by_el_n[y]:
            if D & ~img == 0:
                if to_mask(inv[z] for z in bits(D)) not in circ_m:
                    return False
        return True

    def search(pos):
        nonlocal used
        if pos == M.m:
            return True
        e = order[pos]
        for y in cand[pm[e]]:
            if used >> y & 1 or not ok(e, y):
                continue
            f[e] = y
            used |= 1 << y
            if search(pos + 1):
                return True
            f[e] = -1
            used &= ~(1 << y)
        return False

    if not search(0):
        return None
    if verify:
        check_rank_preserving(M, N, f, seed=seed)
    return f


def image(f: list[int], S: int) -> int:
    return to_mask(f[e] for e in bits(S))


def check_rank_preserving(M: Matroid, N: Matroid, f: list[int], samples: int = 10_000, seed: int = 0):
    """Exhaustive for m <= 10, otherwise a seeded random sample of subsets."""
    if M.m <= 10:
        subsets = range(1 << M.m)
    else:
        rng = random.Random(seed)
        subsets = (rng.getrandbits(M.m) for _ in range(samples))
    for S in subsets:
        if M.rank(S) != N.rank(image(f, S)):
            raise InternalConsistencyError("isomorphism does not preserve rank", S)
