"""Built-in fixture catalogue.

Names: ``fano``, ``nonfano``, ``vamos``, ``pg:N,q`` (all points of PG(N, q)),
``u:r,n`` / ``uniform:r,n`` with optional ``:p=P``, and direct sums joined
by ``+`` (e.g. ``fano+u:2,3:p=2``).
"""
from __future__ import annotations

from itertools import combinations, product

from . import gf
from .errors import MatroidError
from .matroid import Matroid, direct_sum, from_bases, from_columns, to_mask


class UnknownFixture(MatroidError, KeyError):
    pass


def projective_points(dim: int, p: int) -> list[tuple[int, ...]]:
    """All normalized nonzero vectors of GF(p)^dim, in lexicographic order."""
    return [v for v in product(range(p), repeat=dim) if any(v) and gf.normalize(v, p) == v]


def fano() -> Matroid:
    # element i is the binary expansion of i + 1: 001, 010, 011, ..., 111
    cols = [tuple((i + 1) >> k & 1 for k in (2, 1, 0)) for i in range(7)]
    return from_columns(cols, 2, names=["".join(map(str, c)) for c in cols])


def nonfano() -> Matroid:
    cols = [tuple((i + 1) >> k & 1 for k in (2, 1, 0)) for i in range(7)]
    return from_columns(cols, 3)


def pg(n: int, q: int) -> Matroid:
    """PG(n, q) for prime q: the points of GF(q)^(n+1)."""
    return from_columns(projective_points(n + 1, q), q)


def vamos() -> Matroid:
    pairs = [(0, 1), (2, 3), (4, 5), (6, 7)]
    nonbases = {to_mask(pairs[i] + pairs[j]) for i, j in combinations(range(4), 2) if (i, j) != (2, 3)}
    bases = [to_mask(c) for c in combinations(range(8), 4) if to_mask(c) not in nonbases]
    return from_bases(8, bases, names=["a", "a'", "b", "b'", "c", "c'", "d", "d'"])


def generic_columns(r: int, n: int, p: int) -> list[tuple[int, ...]] | None:
    """Columns over GF(p) in which every r of them are independent, or None.

    Starts from the identity and extends by backtracking over normalized
    vectors in lexicographic order.
    """
    if r == 0:
        return [()] * n
    if r == 1:
        return [(1,)] * n
    if n <= r:
        return [tuple(int(i == j) for i in range(r)) for j in range(n)]
    ident = [tuple(int(i == j) for i in range(r)) for j in range(r)]
    pool = [v for v in projective_points(r, p) if v not in ident]
    chosen = list(ident)

    def ok(v):
        return all(gf.vectors_rank(list(c) + [v], p) == r for c in combinations(chosen, r - 1))

    def extend(start):
        if len(chosen) == n:
            return True
        for i in range(start, len(pool)):
            if ok(pool[i]):
                chosen.append(pool[i])
                if extend(i + 1):
                    return True
                chosen.pop()
        return False

    return chosen if extend(0) else None


def uniform_linear(r: int, n: int, p: int | None = None) -> Matroid:
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    primes = [p] if p is not None else [q for q in range(2, gf.MAX_PRIME + 1) if gf.is_prime(q)]
    for q in primes:
        gf.check_prime(q)
        cols = generic_columns(r, n, q)
        if cols is not None:
            return from_columns(cols, q) if r else _rank_zero(n, q)
    raise ValueError(f"U_{{{r},{n}}} has no generic representation over GF({p})")


def _rank_zero(n: int, p: int) -> Matroid:
    from .matroid import LinearMatroid

    return LinearMatroid(gf.MatrixF(p, ((),) * n, 0))


def _parse_single(name: str) -> Matroid:
    name = name.strip().lower()
    if name in ("fano", "pg:2,2"):
        return fano()
    if name == "nonfano":
        return nonfano()
    if name == "vamos":
        return vamos()
    head, _, rest = name.partition(":")
    if head == "pg" and rest:
        n, q = (int(x) for x in rest.split(","))
        return pg(n, q)
    if head in ("u", "uniform") and rest:
        params, _, opt = rest.partition(":")
        r, n = (int(x) for x in params.split(","))
        p = None
        if opt:
            key, _, val = opt.partition("=")
            if key != "p":
                raise UnknownFixture(f"unknown fixture option {opt!r}")
            p = int(val)
        return uniform_linear(r, n, p)
    raise UnknownFixture(f"unknown fixture {name!r}")


def fixture(name: str) -> Matroid:
    parts = name.split("+")
    M = _parse_single(parts[0])
    for part in parts[1:]:
        M = direct_sum(M, _parse_single(part))
    return M
