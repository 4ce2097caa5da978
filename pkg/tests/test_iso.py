import random

import pytest

from matroid_adjoint import fixtures as fx
from matroid_adjoint.adjoint import sigma
from matroid_adjoint.errors import InternalConsistencyError, ResourceError
from matroid_adjoint.iso import check_rank_preserving, fingerprint, image, matroid_iso
from matroid_adjoint.matroid import BasisMatroid, LinearMatroid, from_columns, uniform

FIXTURES = ["fano", "nonfano", "u:2,4:p=5", "u:3,4:p=3", "u:3,6", "vamos", "pg:2,3",
            "u:2,3:p=2+u:2,3:p=2", "fano+u:2,3:p=2"]


def relabel(M, perm):
    """Element e of M becomes element perm[e]."""
    if isinstance(M, LinearMatroid):
        cols = [None] * M.m
        for e, c in enumerate(M.matrix.columns):
            cols[perm[e]] = c
        return from_columns(cols, M.p)
    return BasisMatroid(M.m, [image(perm, B) for B in M.bases])


@pytest.mark.parametrize("name", FIXTURES)
def test_fingerprint_invariant_under_relabeling(name):
    M = fx.fixture(name)
    fp = fingerprint(M)
    rng = random.Random(name)
    for _ in range(100):
        perm = list(range(M.m))
        rng.shuffle(perm)
        assert fingerprint(relabel(M, perm)) == fp


@pytest.mark.parametrize("name", FIXTURES)
def test_iso_reflexive_and_relabeled(name):
    M = fx.fixture(name)
    assert matroid_iso(M, M) is not None
    rng = random.Random(1)
    perm = list(range(M.m))
    rng.shuffle(perm)
    N = relabel(M, perm)
    f = matroid_iso(M, N)
    g = matroid_iso(N, M)
    assert f is not None and g is not None
    if M.m <= 10:
        for S in range(1 << M.m):
            assert M.rank(S) == N.rank(image(f, S))


def test_iso_examples(fano, u24):
    assert matroid_iso(fano, sigma(fano)[0]) is not None
    assert matroid_iso(u24, uniform(1, 4)) is None
    assert matroid_iso(fano, fx.nonfano()) is None
    assert matroid_iso(fano, uniform(3, 7)) is None
    assert fingerprint(fano) != fingerprint(uniform(3, 7))


def test_iso_symmetric_on_pairs():
    names = ["fano", "nonfano", "u:3,7:p=11", "u:2,4:p=5", "u:2,4:p=7"]
    Ms = [fx.fixture(n) for n in names]
    for A in Ms:
        for B in Ms:
            assert (matroid_iso(A, B) is None) == (matroid_iso(B, A) is None)
    assert matroid_iso(Ms[3], Ms[4]) is not None


def test_iso_cap():
    with pytest.raises(ResourceError):
        big = from_columns([(1,)] * 17, 2)
        matroid_iso(big, big)


def test_rank_check_rejects_bad_map():
    U = fx.fixture("u:1,2:p=3")
    M = from_columns([(1, 0), (0, 1), (1, 0)], 3)
    with pytest.raises(InternalConsistencyError):
        check_rank_preserving(M, M, [1, 0, 2])
    check_rank_preserving(U, U, [1, 0])
