from itertools import combinations

import pytest

from matroid_adjoint import fixtures as fx
from matroid_adjoint.errors import NotAMatroidError, ResourceError
from matroid_adjoint.matroid import (BasisMatroid, components, direct_sum, from_bases, from_columns,
                                     from_matrix, is_connected, popcount, simplify, to_mask, uniform)

from oracles import brute_circuits, brute_flats

SMALL = ["fano", "nonfano", "u:2,4:p=5", "u:3,4:p=3", "u:1,2:p=3", "u:2,3:p=2+u:2,3:p=2",
         "u:3,5:p=5", "vamos", "u:1,1:p=2", "u:3,3:p=2"]


@pytest.fixture(params=SMALL, scope="module")
def small(request):
    return fx.fixture(request.param)


def test_from_matrix(fano, u24):
    assert (fano.r, fano.m, fano.loops) == (3, 7, 0)
    M = from_columns([(1, 0), (0, 0), (0, 1)], 3)
    assert M.loops == 0b010
    assert u24.r == 2
    assert all(u24.is_independent(to_mask(c)) for c in combinations(range(4), 2))


def test_from_matrix_reduces_rows():
    M = from_matrix([[1, 0, 1], [0, 1, 1], [1, 1, 2]], 3)
    assert M.matrix.nrows == M.r == 2


def test_from_bases():
    assert from_bases(2, [[0], [1]]).r == 1
    U = from_bases(4, list(combinations(range(4), 2)))
    assert all(U.rank(to_mask(c)) == 2 for c in combinations(range(4), 3))
    V = fx.vamos()
    assert (V.m, V.r, len(V.bases)) == (8, 4, 65)


def test_from_bases_rejects_non_matroid():
    with pytest.raises(NotAMatroidError, match="exchange"):
        from_bases(4, [[0, 1], [2, 3]])
    with pytest.raises(NotAMatroidError):
        from_bases(3, [[0], [1, 2]])


def test_rank_and_closure(fano, u24):
    assert fano.rank(0) == 0
    assert fano.rank(0b0000111) == 2
    assert all(u24.rank(to_mask(c)) == 2 for c in combinations(range(4), 3))
    assert fano.closure(0b011).mask == 0b111
    assert fano.closure(fano.full).mask == fano.full
    assert u24.closure(1).mask == 1


@pytest.mark.parametrize("name,sizes", [("fano", [1, 7, 7, 1]), ("u:2,4:p=5", [1, 4, 1]),
                                        ("pg:2,3", [1, 13, 13, 1]), ("pg:3,2", [1, 15, 35, 15, 1])])
def test_flats_by_rank(name, sizes):
    M = fx.fixture(name)
    assert [len(layer) for layer in M.flats_by_rank] == sizes


def test_flats_against_brute_force(small):
    assert sorted(F.mask for F in small.flats) == brute_flats(small.rank, small.m)


def test_hyperplanes(fano, u24):
    assert len(fano.hyperplanes) == 7 and {popcount(H.mask) for H in fano.hyperplanes} == {3}
    assert [H.mask for H in u24.hyperplanes] == [1, 2, 4, 8]
    assert [H.mask for H in fx.fixture("u:1,1:p=2").hyperplanes] == [0]


def test_circuits(fano, u24):
    assert u24.circuits == [to_mask(c) for c in combinations(range(4), 3)]
    assert sorted(popcount(C) for C in fano.circuits) == [3] * 7 + [4] * 7
    assert fx.fixture("u:3,3:p=2").circuits == []


def test_circuits_against_brute_force(small):
    assert small.circuits == brute_circuits(small.rank, small.m)


def test_cocircuits(fano, u24):
    assert sorted(u24.cocircuits) == sorted(to_mask(c) for c in combinations(range(4), 3))
    assert all(popcount(C) == 4 for C in fano.cocircuits) and len(fano.cocircuits) == 7
    assert fx.fixture("u:1,1:p=2").cocircuits == [1]


def test_dual_examples(fano, u24):
    D = u24.dual()
    assert D.r == 2 and D.circuits == u24.circuits
    U13 = fx.fixture("u:1,3:p=2").dual()
    assert U13.r == 2 and U13.circuits == [0b111]
    F = fano.dual()
    assert F.r == 4
    assert sorted(F.circuits) == sorted(fano.full & ~H.mask for H in fano.hyperplanes)


def test_direct_sum():
    U11 = fx.fixture("u:1,1:p=2")
    S = direct_sum(U11, U11)
    assert S.r == 2 and S.circuits == []
    U23 = fx.fixture("u:2,3:p=2")
    T = direct_sum(U23, U23)
    assert (T.m, T.r, len(components(T))) == (6, 4, 2)
    mixed = direct_sum(fx.fixture("u:2,3:p=3"), fx.vamos())
    assert isinstance(mixed, BasisMatroid) and mixed.r == 6
    with pytest.raises(ResourceError):
        direct_sum(fx.pg(3, 2), fx.vamos())


def test_simplify():
    F = fx.fano()
    S, emap = simplify(F)
    assert S is F and emap == list(range(7))
    M = from_columns([(1, 0), (0, 1), (2, 0), (0, 0), (1, 1)], 3)
    S, emap = simplify(M)
    assert S.m == 3 and emap == [0, 1, 0, None, 2]
    assert S.is_simple


def test_components(fano):
    U23 = fx.fixture("u:2,3:p=2")
    assert components(direct_sum(U23, U23)) == [0b000111, 0b111000]
    assert components(fano) == [fano.full] and is_connected(fano)
    assert components(fx.fixture("u:3,3:p=2")) == [1, 2, 4]
    assert not is_connected(from_columns([(1,), (0,)], 2))


# --- exhaustive axiom checks -------------------------------------------------

def test_rank_axioms(small):
    M = small
    rk = M.rank_table()
    for S in range(1 << M.m):
        assert 0 <= rk[S] <= popcount(S)
        for e in range(M.m):
            assert rk[S] <= rk[S | 1 << e] <= rk[S] + 1
    for S in range(1 << M.m):
        for T in range(S, 1 << M.m):
            assert rk[S | T] + rk[S & T] <= rk[S] + rk[T]


def test_closure_axioms(small):
    M = small
    for S in range(1 << M.m):
        cl = M.closure(S).mask
        assert S & ~cl == 0
        assert M.closure(cl).mask == cl
        for e in range(M.m):
            assert cl & ~M.closure(S | 1 << e).mask == 0
    if M.m <= 8:
        for S in range(1 << M.m):
            cl = M.closure(S).mask
            for f in range(M.m):
                clf = M.closure(S | 1 << f).mask
                for e in range(M.m):
                    if clf >> e & 1 and not cl >> e & 1:
                        assert M.closure(S | 1 << e).mask >> f & 1


def test_circuit_elimination(small):
    circ = small.circuits
    for C1, C2 in combinations(circ, 2):
        for e in range(small.m):
            if C1 & C2 >> e & 1:
                U = (C1 | C2) & ~(1 << e)
                assert any(C & ~U == 0 for C in circ)


def test_duality_relations(small):
    M = small
    D = M.dual()
    assert sorted(M.cocircuits) == sorted(D.circuits)
    DD = D.dual()
    for S in range(1 << M.m):
        assert DD.rank(S) == M.rank(S)
        assert D.rank(S) == popcount(S) - M.r + M.rank(M.full & ~S)


def test_uniform_abstract_matches_linear():
    A, L = uniform(2, 4), fx.fixture("u:2,4:p=5")
    assert A.rank_table() == L.rank_table()


def test_enumeration_cap():
    M = from_columns([(1,)] * 21, 2)
    with pytest.raises(ResourceError):
        M.flats_by_rank
