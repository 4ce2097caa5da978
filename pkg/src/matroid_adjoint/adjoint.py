"""Adjoints: certificates, the adjoint map, type I adjoints and adjoint sequences.

An adjoint candidate N is always paired with a *labeling*: a tuple whose
j-th entry is the hyperplane mask of M that element j of N stands for.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import gf
from .errors import InternalConsistencyError, MatroidError, Refutation, ResourceError
from .iso import ISO_CAP, fingerprint, matroid_iso
from .lattice import NotSimpleError, is_modular
from .matroid import (ENUM_CAP, Flat, LinearMatroid, Matroid, bits, direct_sum,
                      fmt_mask, is_connected, popcount, simplify, to_mask)


@dataclass
class AdjointCertificate:
    base: Matroid
    candidate: Matroid
    labeling: tuple[int, ...]
    rank_ok: bool
    element_ok: dict[int, bool]
    failure: int | None = None  # first element e of M whose H[e] is not a hyperplane

    @property
    def ok(self) -> bool:
        return self.rank_ok and all(self.element_ok.values())

    def pull_back(self, hyperplane_masks) -> int:
        """Mask over the candidate of the elements labelled by the given hyperplanes."""
        wanted = set(hyperplane_masks)
        return to_mask(j for j, H in enumerate(self.labeling) if H in wanted)

    def H_of(self, e: int) -> int:
        """H[e]: candidate elements whose hyperplane contains e."""
        return to_mask(j for j, H in enumerate(self.labeling) if H >> e & 1)


def verify_adjoint(M: Matroid, N: Matroid, labeling: Sequence[int | Flat]) -> AdjointCertificate:
    labeling = tuple(H.mask if isinstance(H, Flat) else H for H in labeling)
    if M.loops:
        raise ValueError(f"base matroid has loops {fmt_mask(M.loops)}; remove them first")
    hyps = {H.mask for H in M.hyperplanes}
    if len(labeling) != N.m or len(set(labeling)) != len(labeling) or set(labeling) != hyps:
        raise ValueError("labeling is not a bijection from E(N) onto the hyperplanes of M")
    rank_ok = N.r == M.r
    element_ok = {}
    failure = None
    for e in range(M.m):
        He = to_mask(j for j, H in enumerate(labeling) if H >> e & 1)
        good = N.rank(He) == N.r - 1 and N.is_flat(He)
        element_ok[e] = good
        if not good and failure is None:
            failure = e
    return AdjointCertificate(M, N, labeling, rank_ok, element_ok, failure)


@dataclass
class AdjointMap:
    certificate: AdjointCertificate
    image: dict[int, int]  # flat mask of M -> flat mask of N

    def __call__(self, X: int) -> int:
        return self.image[X]


def adjoint_map(cert: AdjointCertificate) -> AdjointMap:
    """phi(X) = {H : X subset of H}; every listed property is checked on the way."""
    if not cert.ok:
        raise Refutation("certificate is not valid", cert.failure)
    M, N = cert.base, cert.candidate
    r = M.r
    flats = M.flats
    image = {F.mask: to_mask(j for j, H in enumerate(cert.labeling) if F.mask & ~H == 0) for F in flats}

    def fail(msg, *w):
        raise InternalConsistencyError(f"adjoint map: {msg}", w)

    if len(set(image.values())) != len(image):
        fail("not injective")
    for F in flats:
        phi = image[F.mask]
        if not N.is_flat(phi):
            fail("image is not a flat", F.mask)
        if N.rank(phi) != r - F.rank:
            fail("rank is not complemented", F.mask)
    for X in flats:
        for Y in flats:
            px, py = image[X.mask], image[Y.mask]
            if X.mask & ~Y.mask == 0:
                if py & ~px:
                    fail("not order reversing", X.mask, Y.mask)
                if Y.rank == X.rank + 1:
                    # Y covers X => phi(X) covers phi(Y)
                    if N.rank(px) != N.rank(py) + 1:
                        fail("cover not reversed", X.mask, Y.mask)
            join = M.closure(X.mask | Y.mask).mask
            if px & py != image[join]:
                fail("meet of images is not the image of the join", X.mask, Y.mask)
            nj = N.closure(px | py).mask
            if N.rank(px) + N.rank(py) != N.rank(px & py) + N.rank(nj):
                fail("images do not form a modular pair", X.mask, Y.mask)
    _check_chains(cert, fail)
    return AdjointMap(cert, image)


def _check_chains(cert: AdjointCertificate, fail):
    """Hyperplanes whose running intersections strictly decrease label an independent set."""
    M, N = cert.base, cert.candidate
    label_of = {H: j for j, H in enumerate(cert.labeling)}
    hyps = [H.mask for H in M.hyperplanes]
    seen = set()
    stack = [(M.full, 0)]
    while stack:
        inter, chosen = stack.pop()
        for H in hyps:
            nxt = inter & H
            if nxt == inter:
                continue
            labels = chosen | 1 << label_of[H]
            if labels in seen:
                continue
            seen.add(labels)
            if not N.is_independent(labels):
                fail("chain of hyperplanes gives a dependent set", labels)
            stack.append((nxt, labels))


def fundamental_hyperplane(M: Matroid, B: int, e: int) -> Flat:
    if not M.is_basis(B):
        raise ValueError(f"{fmt_mask(B)} is not a basis")
    if not B >> e & 1:
        raise ValueError(f"{e} is not in the basis")
    return M.closure(B & ~(1 << e))


def check_fundamental_basis(cert: AdjointCertificate, B: int) -> bool:
    M, N = cert.base, cert.candidate
    S = cert.pull_back(fundamental_hyperplane(M, B, e).mask for e in bits(B))
    return popcount(S) == M.r and N.is_basis(S)


# --- type I adjoint --------------------------------------------------------

def hyperplane_normals(M: LinearMatroid) -> list[tuple[tuple[int, ...], int]]:
    """(normalized normal vector, hyperplane mask) for every hyperplane, canonical order."""
    r, p = M.r, M.p
    out = []
    for H in M.hyperplanes:
        cols = [M.matrix.columns[i] for i in bits(H.mask)]
        normal = gf.orthogonal_complement(cols, r, p)
        if len(normal) != 1:
            raise InternalConsistencyError(
                f"span of hyperplane {fmt_mask(H.mask)} has dimension {r - len(normal)} != {r - 1}")
        out.append((normal[0], H.mask))
    return out


def sigma(M: Matroid) -> tuple[LinearMatroid, tuple[int, ...]]:
    """The type I adjoint and its natural labeling (element j <-> j-th hyperplane)."""
    if not isinstance(M, LinearMatroid):
        raise TypeError("the type I adjoint needs a represented (linear) matroid")
    if not M.is_simple:
        warnings.warn("input is not simple; removing loops and parallel elements "
                      "(adjoints ignore them)", stacklevel=2)
        M, _ = simplify(M)
    if M.r == 0:
        raise ValueError("rank-0 matroid has no hyperplanes")
    normals = hyperplane_normals(M)
    N = LinearMatroid(gf.MatrixF(M.p, tuple(v for v, _ in normals), M.r))
    labeling = tuple(H for _, H in normals)
    if len(set(v for v, _ in normals)) != len(normals):
        raise InternalConsistencyError("two hyperplanes share a normal vector")
    cert = verify_adjoint(M, N, labeling)
    if not cert.ok:
        raise Refutation("type I adjoint failed the hyperplane characterization", cert.failure)
    return N, labeling


def sigma_certificate(M: LinearMatroid) -> AdjointCertificate:
    N, labeling = sigma(M)
    return verify_adjoint(M, N, labeling)


def embedding_into_second_adjoint(M: LinearMatroid) -> tuple[LinearMatroid, list[int]]:
    """sigma^2 M and the map e -> H[e] -> element of sigma^2 M labelled by H[e]."""
    N1, lab1 = sigma(M)
    N2, lab2 = sigma(N1)
    where = {H: j for j, H in enumerate(lab2)}
    emap = []
    for e in range(M.m):
        He = to_mask(j for j, H in enumerate(lab1) if H >> e & 1)
        if He not in where:
            raise Refutation(f"H[{e}] is not a hyperplane of the adjoint", e)
        emap.append(where[He])
    return N2, emap


# --- projective geometries -------------------------------------------------

@dataclass(frozen=True)
class ProjectiveKind:
    rank: int
    q: int | None = None
    tag: str | None = None

    def __str__(self):
        if self.tag:
            return self.tag
        return f"PG({self.rank - 1},{self.q})"


def recognize_projective(M: Matroid) -> ProjectiveKind | None:
    if not M.is_simple:
        raise NotSimpleError("matroid is not simple; simplify first")
    if M.r == 1 and M.m == 1:
        return ProjectiveKind(1, tag="U_{1,1}")
    if M.r == 2:
        return ProjectiveKind(2, tag=f"U_{{2,{M.m}}}")
    if M.r < 3 or not is_connected(M) or not is_modular(M):
        return None
    line_sizes = {popcount(F.mask) for F in M.flats_by_rank[2]}
    if len(line_sizes) != 1:
        raise InternalConsistencyError(f"modular connected matroid with line sizes {line_sizes}")
    q = line_sizes.pop() - 1
    if M.m != (q ** M.r - 1) // (q - 1):
        raise InternalConsistencyError(f"|E|={M.m} does not match PG({M.r - 1},{q})")
    return ProjectiveKind(M.r, q)


# --- direct sums -----------------------------------------------------------

def compose_direct_sum_adjoint(cert1: AdjointCertificate, cert2: AdjointCertificate) -> AdjointCertificate:
    M1, M2 = cert1.base, cert2.base
    M = direct_sum(M1, M2)
    N = direct_sum(cert1.candidate, cert2.candidate)
    lab = [H | M2.full << M1.m for H in cert1.labeling]
    lab += [M1.full | H << M1.m for H in cert2.labeling]
    return verify_adjoint(M, N, lab)


# --- adjoint sequences -----------------------------------------------------

@dataclass
class Iterate:
    size: int
    rank: int
    modular: bool | None
    projective: ProjectiveKind | None
    fingerprint: object | None


@dataclass
class SequenceReport:
    iterates: list[Iterate] = field(default_factory=list)
    verdict: str = "cap-exceeded"
    index: int | None = None
    matroids: list[Matroid] = field(default_factory=list, repr=False)
    note: str = ""

    @property
    def sizes(self) -> list[int]:
        return [it.size for it in self.iterates]

    def check_growth(self) -> bool:
        """Sizes two steps apart never shrink (M embeds in its second adjoint)."""
        s = self.sizes
        return all(s[i + 2] >= s[i] for i in range(len(s) - 2))


def _describe(M: Matroid) -> Iterate:
    try:
        mod = is_modular(M)
        proj = recognize_projective(M)
        fp = fingerprint(M) if M.m <= ISO_CAP else None
    except ResourceError:
        mod, proj, fp = None, None, None
    return Iterate(M.m, M.r, mod, proj, fp)


def sigma_sequence(M: LinearMatroid, max_iter: int = 8, size_cap: int = 2000,
                   iso: Callable[[Matroid, Matroid], object] = matroid_iso,
                   step: Callable[[Matroid], Matroid] | None = None) -> SequenceReport:
    """Iterate the type I adjoint until an iterate repeats (period 1 or 2) or a cap is hit.

    ``iso`` and ``step`` are injectable so the period-2 branch can be exercised
    with a mocked oracle.
    """
    if step is None:
        step = lambda X: sigma(X)[0]  # noqa: E731
    report = SequenceReport()
    cur = M
    report.matroids.append(cur)
    report.iterates.append(_describe(cur))
    for i in range(1, max_iter + 1):
        try:
            cur = step(cur)
        except ResourceError as exc:
            report.note = str(exc)
            return report
        report.matroids.append(cur)
        report.iterates.append(_describe(cur))
        if cur.m > size_cap:
            report.note = f"iterate {i} has {cur.m} > {size_cap} elements"
            return report
        try:
            if iso(cur, report.matroids[i - 1]) is not None:
                report.verdict, report.index = "stabilized", i - 1
                return report
            if i >= 2 and iso(cur, report.matroids[i - 2]) is not None:
                report.verdict, report.index = "two-cycle", i - 2
                return report
        except ResourceError as exc:
            report.note = str(exc)
            return report
    report.note = f"no repetition within {max_iter} iterations"
    return report


__all__ = [
    "AdjointCertificate", "AdjointMap", "ProjectiveKind", "SequenceReport", "adjoint_map",
    "check_fundamental_basis", "compose_direct_sum_adjoint", "embedding_into_second_adjoint",
    "fundamental_hyperplane", "hyperplane_normals", "recognize_projective", "sigma",
    "sigma_certificate", "sigma_sequence", "verify_adjoint", "ENUM_CAP", "MatroidError",
]
