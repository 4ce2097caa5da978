"""Brute-force reference computations, deliberately independent of the package internals."""
from itertools import product


def span(vectors, p):
    """Every linear combination of ``vectors`` over GF(p) (exponential; tiny inputs only)."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return set()
    dim = len(vectors[0])
    out = set()
    for coeffs in product(range(p), repeat=len(vectors)):
        out.add(tuple(sum(c * v[i] for c, v in zip(coeffs, vectors)) % p for i in range(dim)))
    return out


def span_rank(vectors, p):
    """Rank as log_p of the size of the span."""
    if not vectors:
        return 0
    n = len(span(vectors, p))
    k = 0
    while p ** k < n:
        k += 1
    return k


def brute_flats(rank, m):
    """All closed sets, from the rank oracle alone."""
    flats = []
    for S in range(1 << m):
        rs = rank(S)
        if all(rank(S | 1 << e) > rs for e in range(m) if not S >> e & 1):
            flats.append(S)
    return flats


def brute_circuits(rank, m):
    """Minimal dependent sets by scanning every subset."""
    dep = [S for S in range(1 << m) if rank(S) < bin(S).count("1")]
    return sorted((S for S in dep if not any(T != S and T & ~S == 0 for T in dep)),
                  key=lambda S: (bin(S).count("1"), [i for i in range(m) if S >> i & 1]))
