"""Circuit vectors, the circuit-vector derived matroid and the combinatorial derived matroid."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import gf
from .adjoint import AdjointCertificate, hyperplane_normals
from .errors import InternalConsistencyError, Refutation, ResourceError
from .matroid import (BasisMatroid, LinearMatroid, Matroid, bits, fmt_mask, mask_key,
                      popcount, to_mask)

OW_CIRCUIT_CAP = 512
COMB_CIRCUIT_CAP = 16
DUALITY_CIRCUIT_CAP = 14


@dataclass(frozen=True)
class CircuitVector:
    circuit: int
    vector: tuple[int, ...]


def circuit_vector(M: LinearMatroid, C: int) -> CircuitVector:
    if C not in set(M.circuits):
        raise ValueError(f"{fmt_mask(C)} is not a circuit")
    els = bits(C)
    if M.matrix.nrows == 0:
        sub_kernel = [(1,)]  # a single loop
    else:
        sub = gf.MatrixF(M.p, tuple(M.matrix.columns[i] for i in els), M.matrix.nrows)
        sub_kernel = gf.kernel_basis(sub)
    if len(sub_kernel) != 1:
        raise InternalConsistencyError(f"circuit {fmt_mask(C)} has a {len(sub_kernel)}-dim kernel")
    v = [0] * M.m
    for i, x in zip(els, sub_kernel[0]):
        v[i] = x
    vec = gf.normalize(v, M.p)
    if to_mask(i for i, x in enumerate(vec) if x) != C:
        raise InternalConsistencyError(f"circuit vector support differs from {fmt_mask(C)}")
    return CircuitVector(C, vec)


def delta_ow(M: LinearMatroid) -> tuple[LinearMatroid, tuple[int, ...]]:
    """Vector matroid of all circuit vectors, labelled by circuits (canonical circuit order)."""
    circuits = M.circuits
    if not circuits:
        raise ValueError("matroid has no circuits")
    if len(circuits) > OW_CIRCUIT_CAP:
        raise ResourceError(f"{len(circuits)} circuits exceed cap {OW_CIRCUIT_CAP}")
    vecs = tuple(circuit_vector(M, C).vector for C in circuits)
    return LinearMatroid(gf.MatrixF(M.p, vecs, M.m)), tuple(circuits)


# --- combinatorial derived matroid ----------------------------------------

@dataclass
class DependentFamily:
    """Up-closed family of subsets of the circuit list, stored by its minimal members."""

    universe: tuple[int, ...]
    minimal: list[int]

    def __contains__(self, D: int) -> bool:
        for m in self.minimal:
            if m & ~D == 0:
                return True
        return False

    def add(self, D: int) -> bool:
        if D in self:
            return False
        self.minimal = [m for m in self.minimal if D & ~m != 0] + [D]
        return True


def _union_support(circuits, D: int) -> int:
    u = 0
    for i in bits(D):
        u |= circuits[i]
    return u


def _in_seed(M: Matroid, circuits, D: int) -> bool:
    u = _union_support(circuits, D)
    return popcount(D) > popcount(u) - M.rank(u)


def seed_family(M: Matroid, circuits) -> DependentFamily:
    fam = DependentFamily(tuple(circuits), [])
    n = len(circuits)
    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            D = to_mask(combo)
            if D not in fam and _in_seed(M, circuits, D):
                fam.add(D)
    return fam


def epsilon_step(fam: DependentFamily, all_witnesses: bool = True) -> list[int]:
    """New sets produced by one elimination round against a snapshot of ``fam``.

    Only pairs of minimal members are needed: for supersets D1' of D1 and D2'
    of D2, either the produced set already contains D1 or D2, or it contains
    the set produced by (D1, D2), whose intersection is also outside the family.
    """
    produced = []
    mins = sorted(fam.minimal, key=mask_key)
    member: dict[int, bool] = {}
    for a, D1 in enumerate(mins):
        for D2 in mins[a + 1:]:
            common = D1 & D2
            if not common:
                continue
            inside = member.get(common)
            if inside is None:
                inside = member[common] = common in fam
            if inside:
                continue
            witnesses = bits(common) if all_witnesses else bits(common)[:1]
            for c in witnesses:
                produced.append((D1 | D2) & ~(1 << c))
    return produced


def epsilon_closure(fam: DependentFamily, all_witnesses: bool = True) -> DependentFamily:
    """Apply elimination rounds until a round adds nothing.

    The firing condition (intersection outside the family) is not monotone,
    so each round is computed against the family as it stood before the round.
    With ``all_witnesses`` every circuit in D1 & D2 is removed in turn;
    otherwise only the least-index one.
    """
    while True:
        added = False
        for D in epsilon_step(fam, all_witnesses):
            added |= fam.add(D)
        if not added:
            return fam


def independence_violation(n: int, dependent) -> tuple | None:
    """Check that the complement of an up-closed family is a matroid's independent sets.

    Uses the rank function r(X) = max size of an independent subset of X and
    tests local submodularity r(X) + r(X+e+f) <= r(X+e) + r(X+f), which holds
    for all X, e, f exactly when the independence system is a matroid.
    """
    if n > COMB_CIRCUIT_CAP:
        raise ResourceError(f"{n} elements exceed cap {COMB_CIRCUIT_CAP}")
    size = 1 << n
    rank = [0] * size
    for X in range(1, size):
        if not dependent(X):
            rank[X] = popcount(X)
        else:
            rank[X] = max(rank[X & ~(1 << e)] for e in bits(X))
    if dependent(0):
        return ("empty set dependent",)
    for X in range(size):
        for e in range(n):
            if X >> e & 1:
                continue
            for f in range(e + 1, n):
                if X >> f & 1:
                    continue
                if rank[X] + rank[X | 1 << e | 1 << f] > rank[X | 1 << e] + rank[X | 1 << f]:
                    return (X, e, f)
    return None


@dataclass
class CombinatorialDerived:
    matroid: BasisMatroid
    labeling: tuple[int, ...]
    family: DependentFamily


def literal_first_round(M: Matroid, circuits, all_witnesses: bool = True) -> DependentFamily:
    """Minimal members of the first round when the seed family is taken as is.

    The seed family is not up-closed in general, so the first round tests
    intersections against the seed sets themselves; later rounds only ever see
    up-closed families.
    """
    n = len(circuits)
    seed = [D for D in range(1, 1 << n) if _in_seed(M, circuits, D)]
    seed_set = set(seed)
    fam = DependentFamily(tuple(circuits), [])
    for D in sorted(seed, key=popcount):
        fam.add(D)
    for a, D1 in enumerate(seed):
        for D2 in seed[a + 1:]:
            common = D1 & D2
            if not common or common in seed_set:
                continue
            for c in (bits(common) if all_witnesses else bits(common)[:1]):
                fam.add((D1 | D2) & ~(1 << c))
    return fam


def delta_comb(M: Matroid, all_witnesses: bool = True, literal_seed: bool = False) -> CombinatorialDerived:
    """Combinatorial derived matroid on the circuits of M (canonical circuit order).

    By default the seed family enters up-closed (only its minimal members are
    kept); ``literal_seed`` runs the first round on the seed sets as given.
    """
    circuits = tuple(M.circuits)
    n = len(circuits)
    if n > COMB_CIRCUIT_CAP:
        raise ResourceError(f"{n} circuits exceed cap {COMB_CIRCUIT_CAP}")
    if literal_seed:
        start = literal_first_round(M, circuits, all_witnesses)
    else:
        start = seed_family(M, circuits)
    fam = epsilon_closure(start, all_witnesses)
    bad = independence_violation(n, fam.__contains__)
    if bad is not None:
        raise Refutation("combinatorial derived family is not a matroid", bad)
    indep = [X for X in range(1 << n) if X not in fam]
    top = max(popcount(X) for X in indep)
    bases = [X for X in indep if popcount(X) == top]
    D = BasisMatroid(n, bases, validate=False)
    if sorted(D.circuits, key=mask_key) != sorted(fam.minimal, key=mask_key):
        raise InternalConsistencyError("circuits of the derived matroid differ from minimal dependents")
    return CombinatorialDerived(D, circuits, fam)


def delta_comb_literal(M: Matroid, all_witnesses: bool = True, cap: int = 8) -> set[int]:
    """Dependent sets computed straight from the set-family definition (small oracle).

    Every family is materialized. The seed family is used exactly as defined,
    without up-closing it, and each round takes the up-closure of the
    elimination step applied to every pair of members.
    """
    circuits = tuple(M.circuits)
    n = len(circuits)
    if n > cap:
        raise ResourceError(f"literal construction capped at {cap} circuits")
    fam = {D for D in range(1 << n) if _in_seed(M, circuits, D)}
    union = set(fam)
    while True:
        eps = set(fam)
        for D1 in fam:
            for D2 in fam:
                common = D1 & D2
                if not common or common in fam:
                    continue
                for c in (bits(common) if all_witnesses else bits(common)[:1]):
                    eps.add((D1 | D2) & ~(1 << c))
        nxt = {D for D in range(1 << n) if any(E & ~D == 0 for E in eps)}
        if nxt == fam:
            return union
        fam = nxt
        union |= nxt


# --- duality ---------------------------------------------------------------

@dataclass
class DualityReport:
    ok: bool
    identity_ok: bool
    subsets_checked: int
    counterexample: int | None = None


def verify_duality(M: LinearMatroid, exhaustive: bool = True) -> DualityReport:
    """delta_OW(M) versus sigma(M*) under c_C <-> h_{E minus C}."""
    circuits = M.circuits
    if len(circuits) > DUALITY_CIRCUIT_CAP:
        raise ResourceError(f"{len(circuits)} circuits exceed cap {DUALITY_CIRCUIT_CAP}")
    Mstar = M.dual()
    Aprime = Mstar.matrix  # rows: a kernel basis of A
    normal_of = {H: v for v, H in hyperplane_normals(Mstar)}
    cvecs, hvecs = [], []
    identity_ok = True
    for C in circuits:
        c = circuit_vector(M, C).vector
        h = normal_of.get(M.full & ~C)
        if h is None:
            raise Refutation(f"complement of circuit {fmt_mask(C)} is not a hyperplane of the dual", C)
        hA = gf.normalize([gf.dot(h, col, M.p) for col in Aprime.columns], M.p)
        if hA != c:
            identity_ok = False
        cvecs.append(c)
        hvecs.append(h)
    OW = LinearMatroid(gf.MatrixF(M.p, tuple(cvecs), M.m))
    SG = LinearMatroid(gf.MatrixF(M.p, tuple(hvecs), Aprime.nrows))
    checked = 0
    if exhaustive or not identity_ok:
        for S in range(1 << len(circuits)):
            checked += 1
            if OW.rank(S) != SG.rank(S):
                return DualityReport(False, identity_ok, checked, S)
    return DualityReport(identity_ok or checked > 0, identity_ok, checked)


# --- fundamental circuits and cocircuits ------------------------------------

def fundamental_circuit(M: Matroid, B: int, e: int) -> int:
    if not M.is_basis(B):
        raise ValueError(f"{fmt_mask(B)} is not a basis")
    if B >> e & 1:
        raise ValueError(f"{e} lies in the basis")
    Be = B | 1 << e
    return (1 << e) | to_mask(f for f in bits(B) if M.rank(Be & ~(1 << f)) == M.r)


def fundamental_cocircuit(M: Matroid, B: int, e: int) -> int:
    if not M.is_basis(B):
        raise ValueError(f"{fmt_mask(B)} is not a basis")
    if not B >> e & 1:
        raise ValueError(f"{e} is not in the basis")
    return M.full & ~M.closure(B & ~(1 << e)).mask


def check_cocircuit_basis(cert: AdjointCertificate, B: int) -> bool:
    """Relabel the adjoint by cocircuits and test that the fundamental cocircuits form a basis."""
    M, N = cert.base, cert.candidate
    by_cocircuit = {M.full & ~H: j for j, H in enumerate(cert.labeling)}
    S = to_mask(by_cocircuit[fundamental_cocircuit(M, B, e)] for e in bits(B))
    return popcount(S) == M.r and N.is_basis(S)


def check_fundamental_circuit_basis(M: LinearMatroid, B: int, ow=None) -> bool:
    """{C(e;B) : e not in B} is a basis of the circuit-vector derived matroid."""
    OW, labels = ow if ow is not None else delta_ow(M)
    where = {C: j for j, C in enumerate(labels)}
    S = to_mask(where[fundamental_circuit(M, B, e)] for e in bits(M.full & ~B))
    return popcount(S) == M.m - M.r and OW.is_basis(S)


# --- experiment harness ------------------------------------------------------

def conjecture_record(name: str, M: Matroid) -> dict:
    """Evidence about the combinatorial derived matroid versus an adjoint of the dual.

    A record only reports what was observed; nothing here is asserted.
    """
    from .adjoint import sigma
    from .iso import ISO_CAP, matroid_iso

    circuits = M.circuits
    rec = {"fixture": name, "m": M.m, "r": M.r, "circuits": len(circuits),
           "m_minus_r": M.m - M.r, "rank_delta": None, "rank_delta_ow": None,
           "delta_iso_sigma_dual": None, "delta_ow_iso_sigma_dual": None, "note": ""}
    try:
        D = delta_comb(M).matroid
        rec["rank_delta"] = D.r
    except (ResourceError, Refutation) as exc:
        D = None
        rec["note"] = str(exc)
    if not isinstance(M, LinearMatroid) or not circuits:
        return rec
    OW, _ = delta_ow(M)
    rec["rank_delta_ow"] = OW.r
    Mstar = M.dual()
    if not Mstar.is_simple or Mstar.r == 0:
        rec["note"] = (rec["note"] + "; " if rec["note"] else "") + "dual is not simple"
        return rec
    S, _ = sigma(Mstar)
    if S.m <= ISO_CAP:
        rec["delta_ow_iso_sigma_dual"] = matroid_iso(OW, S) is not None
        if D is not None:
            rec["delta_iso_sigma_dual"] = matroid_iso(D, S) is not None
    return rec
