import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ring
from ringlab.errors import CharIsP, NotAChainRing, NotCommutative
from ringlab.perm import (
    brute_prpol_count,
    chain_redundancy_suite,
    cherper_suite,
    commutative_lambda_equiv_check,
    compute_L,
    count_prpol_dual,
    expected_L_field,
    field_counterexample,
    is_pp,
    is_pp_dual,
    lambda_local_perm,
    null_lambda_sum_suite,
    pa_zero_square_check,
    redundancy_search,
)
from ringlab.poly import Poly, dual_null_degree, eval_right, lambda_eval
from ringlab.rings import make_dual


def brute_L(R):
    """Distinct (function, lambda) pairs with a bijective function and bijective lambda rows."""
    d = dual_null_degree(R, 1)
    els = range(R.size)
    found = set()
    for coeffs in itertools.product(els, repeat=d):
        f = Poly(R, coeffs)
        F = tuple(eval_right(f, a) for a in els)
        if len(set(F)) < R.size:
            continue
        lam = tuple(tuple(lambda_eval(f, a, b) for b in els) for a in els)
        if all(len(set(row)) == R.size for row in lam):
            found.add((F, lam))
    return len(found)


def test_is_pp_and_lambda_witness():
    R = ring("zn:8")
    assert is_pp(Poly(R, (1, 3)))
    assert not is_pp(Poly(R, (0, 0, 1)))
    f = Poly(R, (0, 1, 4))  # lambda(a, b) = (1 + 8a) b = b
    assert lambda_local_perm(f) == (True, None)
    ok, w = lambda_local_perm(Poly(R, (0, 2)))
    assert not ok
    assert lambda_eval(Poly(R, (0, 2)), w["a"], w["b1"]) == lambda_eval(Poly(R, (0, 2)), w["a"], w["b2"])
    assert w["b1"] != w["b2"]


def test_perm_test_examples():
    gf2 = ring("gf:2")
    v = is_pp_dual([Poly(gf2, (0, 0, 1)), Poly(gf2, ())])
    assert (v.is_pp_base, v.lambda_local, v.is_pp_dual, v.brute_force) == (True, False, False, False)
    assert "lambda" in v.witness
    zn4 = ring("zn:4")
    v = is_pp_dual([Poly(zn4, (0, 1)), Poly(zn4, ())])
    assert v.is_pp_base and v.lambda_local and v.is_pp_dual and v.brute_force
    v = is_pp_dual([Poly(zn4, (0, 1)), Poly(zn4, (3, 2, 1))])
    assert v.is_pp_dual and v.brute_force
    v = is_pp_dual([Poly(zn4, (0, 0, 1)), Poly(zn4, ())])
    assert not v.is_pp_base and not v.brute_force and "base_collision" in v.witness


@settings(max_examples=60, deadline=None)
@given(spec=st.sampled_from(["zn:4", "gf:3", "ut:2:gf:2"]), k=st.integers(1, 2), data=st.data())
def test_criterion_matches_brute_force(spec, k, data):
    base = ring(spec)
    if base.size ** (k + 1) > 512:
        k = 1
    coeff = st.lists(st.integers(0, base.size - 1), max_size=5)
    parts = [Poly(base, data.draw(coeff)) for _ in range(k + 1)]
    v = is_pp_dual(parts, base, k)
    assert v.agrees
    # the tail components never matter
    bare = is_pp_dual([parts[0]] + [Poly(base, ())] * k, base, k)
    assert bare.is_pp_dual == v.is_pp_dual == v.brute_force


@pytest.mark.parametrize("spec,d", [("gf:3", 3), ("zn:8", 3), ("prod:gf:2+gf:2", 4)])
def test_cherper_suite(spec, d):
    rep = cherper_suite(ring(spec), d, 1)
    assert rep.passed and rep.mode == "exhaustive"


def test_cherper_suite_k2():
    rep = cherper_suite(ring("gf:2"), 4, 2)
    assert rep.passed
    names = {c.name for c in rep.checks}
    assert {"pp_on_R_beta1_matches", "pp_on_R_beta2_matches", "pp_on_R1_matches_R2"} <= names


@pytest.mark.parametrize("spec", ["gf:2", "gf:4", "gf:3"])
def test_field_power_is_not_pp_on_dual(spec):
    f, v = field_counterexample(ring(spec))
    assert f.degree == ring(spec).size
    assert v.is_pp_base and not v.is_pp_dual and v.brute_force is False


@pytest.mark.parametrize("spec", ["zn:4", "zn:8"])
def test_chain_redundancy(spec):
    rep = chain_redundancy_suite(ring(spec), 1)
    assert rep.passed and rep.mode == "exhaustive"


def test_chain_suite_preconditions():
    with pytest.raises(CharIsP):
        chain_redundancy_suite(ring("gf:4"))
    with pytest.raises(NotAChainRing):
        chain_redundancy_suite(ring("ut:2:gf:2"))
    with pytest.raises(NotAChainRing):
        null_lambda_sum_suite(ring("prod:gf:2+gf:2"))


@pytest.mark.parametrize("spec", ["zn:4", "zn:8", "zn:9", "zn:27"])
def test_pa_zero_implies_square_zero(spec):
    ok, witness = pa_zero_square_check(ring(spec))
    assert ok and witness is None


def test_pa_zero_fails_without_chain_hypothesis():
    # every element of F_2 x F_2 has 2a = 0 while a^2 = a
    ok, witness = pa_zero_square_check(ring("prod:gf:2+gf:2"))
    assert not ok and witness is not None


@pytest.mark.parametrize("spec", ["zn:4", "zn:8", "zn:9"])
def test_null_lambda_sums(spec):
    assert null_lambda_sum_suite(ring(spec)).passed


@pytest.mark.parametrize("spec", ["gf:2", "zn:4"])
def test_L_against_pure_python(spec):
    R = ring(spec)
    assert compute_L(R).L == brute_L(R)


@pytest.mark.parametrize("spec,L", [("gf:2", 2), ("gf:3", 48), ("gf:4", 1944), ("zn:4", 32),
                                    ("ut:2:gf:2", 256), ("prod:gf:2+gf:2", 4)])
def test_L_values(spec, L):
    R = ring(spec)
    assert compute_L(R).L == L
    if R.kind == "gf":
        assert expected_L_field(R.size) == L
    if R.size <= 4:
        assert compute_L(R, method="enumerate").L == L


@pytest.mark.parametrize("spec,k,count", [("gf:2", 1, 8), ("gf:2", 2, 32), ("zn:4", 1, 2048), ("gf:3", 1, 1296)])
def test_prpol_dual_count(spec, k, count):
    pc = count_prpol_dual(ring(spec), k)
    assert pc.count == count
    assert pc.crosscheck == "pass" and pc.brute_force == count


def test_prpol_brute_force_pure_python_gf2():
    base = ring("gf:2")
    dual = make_dual(base, 1)
    seen = set()
    for c in itertools.product(range(4), repeat=4):
        tab = tuple(eval_right(Poly(dual, c), x) for x in range(4))
        if len(set(tab)) == 4:
            seen.add(tab)
    assert len(seen) == 8 == brute_prpol_count(base, 1)


def test_commutative_lambda_equivalence():
    assert commutative_lambda_equiv_check(ring("zn:8")).passed
    assert commutative_lambda_equiv_check(ring("gf:4")).passed
    with pytest.raises(NotCommutative):
        commutative_lambda_equiv_check(ring("ut:2:gf:2"))


# lifting permutation polynomials are exactly the pairs counted by L
@pytest.mark.parametrize("spec,pairs,every", [("zn:4", 32, True), ("zn:8", 8192, True), ("gf:3", 162, False),
                                              ("ut:2:gf:2", 1024, False), ("prod:gf:2+gf:2", 64, False)])
def test_redundancy_search(spec, pairs, every):
    R = ring(spec)
    rep = redundancy_search(R, 1)
    assert rep.passed and rep.mode == "exhaustive"
    assert rep.counts["pp_pairs"] == pairs and rep.counts["lift"] == compute_L(R).L
    assert rep.counts["every_pp_lifts"] is every
    if not every:
        f = Poly(R, rep.counts["first_non_lifting"])
        assert is_pp(f) and not is_pp_dual([f, Poly(R, ())], R, 1).brute_force


def test_redundancy_search_with_no_candidates_claims_nothing():
    rep = redundancy_search(ring("mat:2:gf:2"), 1, mode="sampled", samples=50)
    assert rep.counts["pp_pairs"] == 0 and rep.counts["every_pp_lifts"] is None
