import itertools

import pytest

from conftest import ring
from ringlab.rings import Ring, make_dual
from ringlab.structure import (
    additive_order,
    center,
    chain_analysis,
    dual_structure_check,
    inverse,
    jacobson_radical,
    semicommutativity_check,
    sum_of_units_reachable,
    unit_set,
    validate_axioms,
)


def brute_units(R):
    return sorted(a for a in range(R.size)
                  if any(R.mul(a, b) == R.one and R.mul(b, a) == R.one for b in range(R.size)))


def brute_center(R):
    return sorted(a for a in range(R.size) if all(R.mul(a, b) == R.mul(b, a) for b in range(R.size)))


def brute_radical(R):
    # x is in J iff 1 - r x s is a unit for all r, s
    units = set(brute_units(R))
    return sorted(x for x in range(R.size)
                  if all(R.sub(R.one, R.mul(R.mul(r, x), s)) in units
                         for r, s in itertools.product(range(R.size), repeat=2)))


# frozen from the brute-force helpers above
STRUCTURE = {
    "zn:4": (2, 4, 2, True),
    "zn:8": (4, 8, 4, True),
    "zn:9": (6, 9, 3, True),
    "gf:2": (1, 2, 1, True),
    "gf:4": (3, 4, 1, True),
    "ut:2:gf:2": (2, 2, 2, False),
    "mat:2:gf:2": (6, 2, 1, True),
    "prod:gf:2+gf:2": (1, 4, 1, False),
}


@pytest.mark.parametrize("spec", sorted(STRUCTURE))
def test_units_center_radical_sum_of_units(spec):
    R = ring(spec)
    n_units, n_center, n_rad, sums = STRUCTURE[spec]
    assert len(unit_set(R)) == n_units
    assert len(center(R)) == n_center
    assert len(jacobson_radical(R)) == n_rad
    assert sum_of_units_reachable(R) is sums


@pytest.mark.parametrize("spec", ["zn:4", "ut:2:gf:2", "mat:2:gf:2", "prod:gf:2+gf:2"])
def test_structure_matches_brute_force(spec):
    R = ring(spec)
    assert unit_set(R).tolist() == brute_units(R)
    assert sorted(center(R).tolist()) == brute_center(R)
    assert sorted(jacobson_radical(R).tolist()) == brute_radical(R)


def test_one_sided_radical_test_agrees_with_two_sided():
    R = ring("dual:1:ut:2:gf:2")
    one = sorted(jacobson_radical(R, method="one-sided").tolist())
    two = sorted(jacobson_radical(R, method="two-sided").tolist())
    assert one == two and len(one) == 2 * 8


def test_inverse():
    R = ring("zn:9")
    for a in unit_set(R).tolist():
        assert R.mul(a, inverse(R, a)) == 1


@pytest.mark.parametrize("spec,N,e,q", [("zn:4", 2, 1, 2), ("zn:8", 3, 1, 2), ("zn:9", 2, 1, 3),
                                        ("zn:27", 3, 1, 3), ("gf:4", 1, None, 4)])
def test_chain_rings(spec, N, e, q):
    info = chain_analysis(ring(spec))
    assert info.is_local and info.is_chain
    assert (info.N, info.e, info.q) == (N, e, q)


@pytest.mark.parametrize("spec", ["ut:2:gf:2", "prod:gf:2+gf:2", "mat:2:gf:2"])
def test_non_local_rings(spec):
    assert not chain_analysis(ring(spec)).is_local


@pytest.mark.parametrize("spec", ["zn:8", "zn:9", "zn:27"])
def test_additive_order_formula(spec):
    R = ring(spec)
    for a in range(R.size):
        got = additive_order(R, a)
        brute = next(n for n in range(1, R.size + 1) if R.scalar(n, a) == 0)
        assert got.order == brute
        assert got.agree


def test_semicommutativity_witness_on_matrices():
    assert semicommutativity_check(ring("zn:8")).passed
    rep = semicommutativity_check(ring("mat:2:gf:2"))
    assert not rep.passed
    w = rep.checks[0].counterexample
    R = ring("mat:2:gf:2")
    assert R.mul(w["a"], w["b"]) == 0
    assert R.mul(R.mul(w["a"], w["r"]), w["b"]) != 0


@pytest.mark.parametrize("spec", ["zn:4", "ut:2:gf:2", "prod:gf:2+gf:2"])
def test_sum_of_units_same_on_dual(spec):
    R = ring(spec)
    assert sum_of_units_reachable(make_dual(R, 1)) == sum_of_units_reachable(R)


@pytest.mark.parametrize("spec,k", [("zn:4", 1), ("zn:4", 2), ("gf:3", 1), ("ut:2:gf:2", 1)])
def test_dual_structure_check(spec, k):
    rep = dual_structure_check(ring(spec), k)
    assert rep.passed, [c for c in rep.checks if c.status == "fail"]


def test_axiom_validation_finds_broken_table():
    R = ring("zn:4")
    rep = validate_axioms(R)
    assert rep.passed and rep.mode == "exhaustive"
    # a*b + a is not associative
    broken = Ring("broken", (4,), lambda a, b: (a * b + a) % 4, 1, kind="zn", materialize=True)
    bad = validate_axioms(broken)
    assert not bad.passed
    failed = {c.name for c in bad.checks if c.status == "fail"}
    assert "mul_associative" in failed
    sampled = validate_axioms(ring("dual:1:ut:2:gf:2"), mode="sampled", n=2000, seed=3)
    assert sampled.passed and sampled.mode == "sampled" and sampled.seed == 3
