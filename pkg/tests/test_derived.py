import random

import pytest

from matroid_adjoint import fixtures as fx
from matroid_adjoint.adjoint import sigma, sigma_certificate
from matroid_adjoint.derived import (DependentFamily, check_cocircuit_basis,
                                     check_fundamental_circuit_basis, circuit_vector,
                                     conjecture_record, delta_comb, delta_comb_literal, delta_ow,
                                     epsilon_step, fundamental_circuit, fundamental_cocircuit,
                                     independence_violation, seed_family, verify_duality)
from matroid_adjoint.errors import Refutation, ResourceError
from matroid_adjoint.iso import matroid_iso
from matroid_adjoint.matroid import bits, from_matrix, is_connected, to_mask, uniform

from oracles import span_rank

LINEAR = ["fano", "nonfano", "u:2,4:p=5", "u:1,2:p=3", "u:2,3:p=2", "u:3,5:p=5", "u:2,5:p=7",
          "u:3,4:p=3", "u:2,3:p=2+u:2,3:p=2", "pg:2,3"]
SMALL_COMB = ["u:2,4:p=5", "u:2,3:p=2", "u:1,2:p=3", "u:3,5:p=5", "u:2,3:p=2+u:2,3:p=2",
              "u:3,4:p=3", "u:1,3:p=2"]


def test_circuit_vector_examples(u24):
    M = from_matrix([[1, 0, 1], [0, 1, 1]], 2)
    assert circuit_vector(M, 0b111).vector == (1, 1, 1)
    v = circuit_vector(u24, 0b0111).vector
    assert v[3] == 0 and all(v[:3]) and v[0] == 1
    with pytest.raises(ValueError):
        circuit_vector(u24, 0b0011)


@pytest.mark.parametrize("name", LINEAR)
def test_circuit_vector_support_and_kernel(name):
    M = fx.fixture(name)
    for C in M.circuits:
        v = circuit_vector(M, C).vector
        assert to_mask(i for i, x in enumerate(v) if x) == C
        for row in M.matrix.rows:
            assert sum(a * b for a, b in zip(row, v)) % M.p == 0


def test_delta_ow_examples(fano, u24):
    OW, labels = delta_ow(u24)
    assert (OW.m, OW.r) == (4, 2) and matroid_iso(OW, u24) is not None
    OW, labels = delta_ow(fx.fixture("u:1,2:p=3"))
    assert (OW.m, OW.r, labels) == (1, 1, (0b11,))
    OW, labels = delta_ow(fano)
    assert (OW.m, OW.r) == (14, 4)
    with pytest.raises(ValueError):
        delta_ow(fx.fixture("u:3,3:p=2"))


@pytest.mark.parametrize("name", ["u:2,4:p=5", "u:2,3:p=2", "u:3,4:p=3", "u:1,2:p=3"])
def test_delta_ow_against_span_oracle(name):
    M = fx.fixture(name)
    OW, _ = delta_ow(M)
    cols = OW.matrix.columns
    for S in range(1 << OW.m):
        assert OW.rank(S) == span_rank([cols[i] for i in bits(S)], M.p)


@pytest.mark.parametrize("name", LINEAR)
def test_delta_ow_rank(name):
    M = fx.fixture(name)
    OW, _ = delta_ow(M)
    assert OW.r <= M.m - M.r
    if is_connected(M):
        assert OW.r == M.m - M.r


def test_dependent_family_antichain():
    fam = DependentFamily((1, 2, 4, 8), [])
    assert fam.add(0b0110)
    assert not fam.add(0b1110)
    assert fam.add(0b0010)
    assert fam.minimal == [0b0010]
    assert 0b1010 in fam and 0b0101 not in fam


def test_seed_u24(u24):
    fam = seed_family(u24, u24.circuits)
    assert sorted(fam.minimal) == sorted(to_mask(c) for c in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    assert all(D in fam for D in epsilon_step(fam))


def test_delta_comb_examples(u24):
    D = delta_comb(fx.fixture("u:1,1:p=2"))
    assert (D.matroid.m, D.matroid.r) == (0, 0)
    D = delta_comb(u24)
    assert (D.matroid.m, D.matroid.r) == (4, 2)
    assert matroid_iso(D.matroid, uniform(2, 4)) is not None
    D = delta_comb(fx.fixture("u:2,3:p=2"))
    assert (D.matroid.m, D.matroid.r) == (1, 1)


@pytest.mark.parametrize("name,rank", [("u:3,5:p=5", 2), ("u:2,5:p=7", 3), ("u:2,3:p=2+u:2,3:p=2", 2),
                                       ("u:1,2:p=3", 1), ("u:3,4:p=3", 1)])
def test_delta_comb_frozen_ranks(name, rank):
    assert delta_comb(fx.fixture(name)).matroid.r == rank


def test_delta_comb_accepts_abstract():
    D = delta_comb(uniform(2, 4))
    assert D.matroid.r == 2


@pytest.mark.parametrize("name", SMALL_COMB)
def test_delta_comb_invariants(name):
    M = fx.fixture(name)
    res = delta_comb(M)
    fam = res.family
    n = len(res.labeling)
    for a in fam.minimal:
        for b in fam.minimal:
            assert a == b or a & ~b != 0
    assert all(D in fam for D in epsilon_step(fam))
    assert independence_violation(n, fam.__contains__) is None
    for X in range(1 << n):
        assert (X in fam) == (not res.matroid.is_independent(X))
    assert sorted(res.matroid.circuits) == sorted(fam.minimal)


@pytest.mark.parametrize("name", SMALL_COMB)
def test_delta_comb_matches_literal_oracle(name):
    M = fx.fixture(name)
    res = delta_comb(M)
    lit = delta_comb_literal(M)
    n = len(res.labeling)
    assert {X for X in range(1 << n) if X in res.family} == lit


@pytest.mark.parametrize("name", ["u:2,4:p=5", "u:2,3:p=2", "u:3,5:p=5", "u:1,2:p=3"])
def test_epsilon_variants_agree(name):
    M = fx.fixture(name)
    ranks = {delta_comb(M, all_witnesses=w, literal_seed=s).matroid.r
             for w in (True, False) for s in (True, False)}
    assert len(ranks) == 1


def test_one_witness_variant_reported_on_fano(fano):
    with pytest.raises(Refutation, match="not a matroid"):
        delta_comb(fano, all_witnesses=False)


def test_delta_comb_cap():
    with pytest.raises(ResourceError):
        delta_comb(fx.pg(2, 3))


def test_independence_violation_detects_bad_family():
    parallel = lambda X: X & 0b011 == 0b011  # noqa: E731
    assert independence_violation(3, parallel) is None
    # {0,1} independent but neither 0 nor 1 extends {2}: augmentation fails
    bad = lambda X: X & 0b101 == 0b101 or X & 0b110 == 0b110  # noqa: E731
    assert independence_violation(3, bad) is not None
    assert independence_violation(2, lambda X: True) == ("empty set dependent",)


@pytest.mark.parametrize("name", ["u:2,4:p=5", "u:1,2:p=3", "fano"])
def test_verify_duality(name):
    rep = verify_duality(fx.fixture(name))
    assert rep.ok and rep.identity_ok and rep.counterexample is None
    assert rep.subsets_checked == 1 << len(fx.fixture(name).circuits)


@pytest.mark.parametrize("name", ["u:2,3:p=2", "u:3,4:p=3", "u:2,5:p=7", "u:3,5:p=5"])
def test_verify_duality_connected(name):
    assert verify_duality(fx.fixture(name)).ok


def test_duality_cap():
    with pytest.raises(ResourceError):
        verify_duality(fx.pg(2, 3))


def test_fundamental_circuit(fano, u24):
    assert fundamental_circuit(u24, 0b0011, 2) == 0b0111
    # basis {001, 010, 100} = {0, 1, 3}; 011 is element 2
    assert fundamental_circuit(fano, 0b1011, 2) == 0b0111
    for B in fano.bases:
        for e in bits(fano.full & ~B):
            C = fundamental_circuit(fano, B, e)
            assert C >> e & 1 and C in fano.circuits and C & ~(B | 1 << e) == 0
    with pytest.raises(ValueError):
        fundamental_circuit(u24, 0b0011, 0)


def test_fundamental_cocircuit(fano, u24):
    assert fundamental_cocircuit(u24, 0b0011, 1) == 0b1110
    assert fundamental_cocircuit(fano, 0b1011, 3) == 0b1111000
    cocirc = set(fano.cocircuits)
    for B in fano.bases:
        for e in bits(B):
            C = fundamental_cocircuit(fano, B, e)
            assert C == fano.full & ~fano.closure(B & ~(1 << e)).mask
            assert C in cocirc and C & B == 1 << e
    with pytest.raises(ValueError):
        fundamental_cocircuit(u24, 0b0011, 2)


@pytest.mark.parametrize("name", ["fano", "u:2,4:p=5", "pg:2,3"])
def test_cocircuit_basis(name):
    M = fx.fixture(name)
    cert = sigma_certificate(M)
    bases = M.bases
    if len(bases) > 200:
        bases = random.Random(0).sample(bases, 200)
    assert all(check_cocircuit_basis(cert, B) for B in bases)


@pytest.mark.parametrize("name", ["u:2,4:p=5", "fano", "u:3,5:p=5"])
def test_fundamental_circuit_basis(name):
    M = fx.fixture(name)
    ow = delta_ow(M)
    assert all(check_fundamental_circuit_basis(M, B, ow) for B in M.bases)


def test_delta_comb_iso_sigma_dual(u24):
    D = delta_comb(u24).matroid
    S, _ = sigma(u24.dual())
    assert matroid_iso(D, S) is not None


def test_conjecture_records():
    rec = conjecture_record("u:2,4", fx.fixture("u:2,4:p=5"))
    assert rec["rank_delta"] == rec["m_minus_r"] == 2
    assert rec["delta_iso_sigma_dual"] and rec["delta_ow_iso_sigma_dual"]
    rec = conjecture_record("u:2,3", fx.fixture("u:2,3:p=2"))
    assert rec["rank_delta"] == 1 and rec["rank_delta_ow"] == 1
    rec = conjecture_record("pg:2,3", fx.pg(2, 3))
    assert rec["rank_delta"] is None and "cap" in rec["note"]
    rec = conjecture_record("vamos", fx.vamos())
    assert rec["rank_delta_ow"] is None


@pytest.mark.slow
def test_conjecture_record_fano_frozen(fano):
    rec = conjecture_record("fano", fano)
    assert rec["circuits"] == 14 and rec["m_minus_r"] == 4
    assert rec["rank_delta"] == 3
    assert rec["rank_delta_ow"] == 4
    assert rec["delta_ow_iso_sigma_dual"] is True and rec["delta_iso_sigma_dual"] is False
