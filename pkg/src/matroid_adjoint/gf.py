"""Exact linear algebra over prime fields GF(p).

Vectors are plain tuples of residues; matrices are stored column-major
because matroid elements are columns.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_PRIME = 251

Vector = tuple  # tuple[int, ...], every entry reduced mod p


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not 2 <= p <= MAX_PRIME or not is_prime(p):
        raise ValueError(f"modulus must be a prime in [2, {MAX_PRIME}], got {p!r}")
    return p


def inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"no inverse of 0 modulo {p}")
    return pow(a, p - 2, p)


def normalize(v: Sequence[int], p: int) -> Vector:
    """Scale ``v`` so that its first nonzero entry is 1 (projective canonical form)."""
    v = [x % p for x in v]
    for x in v:
        if x:
            inv = inverse(x, p)
            return tuple(y * inv % p for y in v)
    return tuple(v)


def _rref_rows(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    rows = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    lead = 0
    for c in range(ncols):
        pr = next((i for i in range(lead, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[lead], rows[pr] = rows[pr], rows[lead]
        inv = inverse(rows[lead][c], p)
        rows[lead] = [x * inv % p for x in rows[lead]]
        piv = rows[lead]
        for i, row in enumerate(rows):
            if i != lead and row[c]:
                f = row[c]
                rows[i] = [(x - f * y) % p for x, y in zip(row, piv)]
        pivots.append(c)
        lead += 1
        if lead == len(rows):
            break
    return rows, pivots


@dataclass(frozen=True)
class MatrixF:
    """An r x m matrix over GF(p), stored as a tuple of m columns."""

    p: int
    columns: tuple[Vector, ...]
    nrows: int

    def __post_init__(self):
        check_prime(self.p)
        cols = tuple(tuple(int(x) % self.p for x in c) for c in self.columns)
        if any(len(c) != self.nrows for c in cols):
            raise ValueError("all columns must have length nrows")
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> "MatrixF":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix needs at least one row and one column")
        m = len(rows[0])
        if any(len(r) != m for r in rows):
            raise ValueError("ragged rows")
        return cls(p, tuple(tuple(r[j] for r in rows) for j in range(m)), len(rows))

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], p: int, nrows: int | None = None) -> "MatrixF":
        cols = [tuple(c) for c in columns]
        if nrows is None:
            if not cols:
                raise ValueError("cannot infer row count of an empty column list")
            nrows = len(cols[0])
        return cls(p, tuple(cols), nrows)

    @property
    def ncols(self) -> int:
        return len(self.columns)

    @property
    def rows(self) -> list[list[int]]:
        return [[c[i] for c in self.columns] for i in range(self.nrows)]

    def __matmul__(self, v: Sequence[int]) -> Vector:
        out = [0] * self.nrows
        for c, x in zip(self.columns, v):
            if x:
                for i, a in enumerate(c):
                    out[i] += a * x
        return tuple(y % self.p for y in out)


def rref(A: MatrixF) -> tuple[MatrixF, list[int], int]:
    rows, pivots = _rref_rows(A.rows, A.ncols, A.p)
    return MatrixF.from_rows(rows, A.p), pivots, len(pivots)


def kernel_basis(A: MatrixF) -> list[Vector]:
    """Basis of the right null space, each vector projectively normalized."""
    p, m = A.p, A.ncols
    rows, pivots = _rref_rows(A.rows, m, p)
    free = [c for c in range(m) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * m
        v[f] = 1
        for row, pc in zip(rows, pivots):
            v[pc] = -row[f] % p
        basis.append(normalize(v, p))
    return basis


def vectors_rank(vectors: Iterable[Sequence[int]], p: int) -> int:
    """Rank of a family of vectors (incremental elimination, no matrix object)."""
    basis: dict[int, list[int]] = {}  # pivot index -> reduced vector with 1 at pivot
    rank = 0
    for v in vectors:
        w = [x % p for x in v]
        for i in range(len(w)):
            if w[i]:
                b = basis.get(i)
                if b is None:
                    inv = inverse(w[i], p)
                    basis[i] = [x * inv % p for x in w]
                    rank += 1
                    break
                f = w[i]
                w = [(x - f * y) % p for x, y in zip(w, b)]
    return rank


def subset_rank(A: MatrixF, S: Iterable[int]) -> int:
    return vectors_rank((A.columns[i] for i in S), A.p)


def orthogonal_complement(vectors: Sequence[Sequence[int]], dim: int, p: int) -> list[Vector]:
    """Normalized basis of {h : h . v = 0 for all v}, computed as a kernel of the transpose."""
    if not vectors:
        return [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    return kernel_basis(MatrixF.from_rows([list(v) for v in vectors], p))


def dot(u: Sequence[int], v: Sequence[int], p: int) -> int:
    return sum(a * b for a, b in zip(u, v)) % p
