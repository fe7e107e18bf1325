import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ring
from ringlab.cache import TableCache
from ringlab.errors import BudgetExceeded, NotIrreducible, ParseError, WrongRing
from ringlab.rings import (
    construct_ring,
    is_irreducible,
    make_dual,
    matrix_element,
    matrix_entries,
    parse_spec,
)


def gf_mul_oracle(a, b, p, w, mod):
    """Schoolbook product of base-p digit vectors reduced by a monic modulus."""
    da = [(a // p**i) % p for i in range(w)]
    db = [(b // p**i) % p for i in range(w)]
    prod = [0] * (2 * w - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    for top in range(2 * w - 2, w - 1, -1):
        c = prod[top]
        if c:
            for i, m in enumerate(mod):
                prod[top - w + i] = (prod[top - w + i] - c * m) % p
    return sum(prod[i] * p**i for i in range(w))


@pytest.mark.parametrize("n", [2, 4, 6, 8, 9])
def test_zn_tables_match_integer_arithmetic(n):
    R = ring(f"zn:{n}")
    for a, b in itertools.product(range(n), repeat=2):
        assert R.add(a, b) == (a + b) % n
        assert R.mul(a, b) == (a * b) % n
    assert R.char == n
    assert R.commutative


@pytest.mark.parametrize("spec,p,w,mod", [("gf:4", 2, 2, (1, 1, 1)), ("gf:8", 2, 3, (1, 0, 1, 1)),
                                          ("gf:9", 3, 2, (1, 0, 1))])
def test_gf_multiplication_against_schoolbook(spec, p, w, mod):
    R = construct_ring(spec)
    for a, b in itertools.product(range(p**w), repeat=2):
        assert R.mul(a, b) == gf_mul_oracle(a, b, p, w, mod)
    units = [a for a in range(1, R.size) if any(R.mul(a, b) == R.one for b in range(R.size))]
    assert len(units) == R.size - 1


def test_gf_explicit_modulus_and_reducible_rejected():
    R = construct_ring("gf:2:2:1,1,1")
    assert R.size == 4 and R.mul(2, 2) == 3
    assert is_irreducible((1, 1, 1), 2)
    assert not is_irreducible((1, 0, 1), 2)
    with pytest.raises(NotIrreducible):
        construct_ring("gf:2:2:1,0,1")


@pytest.mark.parametrize("spec,n", [("ut:2:gf:2", 2), ("mat:2:gf:2", 2), ("mat:2:zn:3", 2)])
def test_matrix_rings_match_numpy_products(spec, n):
    R = ring(spec)
    q = R.parts[0].size
    mats = [np.array(matrix_entries(R, x)) for x in range(R.size)]
    for x, y in itertools.product(range(R.size), repeat=2):
        assert matrix_entries(R, R.mul(x, y)) == ((mats[x] @ mats[y]) % q).tolist()
        assert matrix_entries(R, R.add(x, y)) == ((mats[x] + mats[y]) % q).tolist()
    assert matrix_element(R, np.eye(n, dtype=int)) == R.one
    if R.kind == "ut":
        with pytest.raises(WrongRing):
            matrix_element(R, [[0, 0], [1, 0]])


def test_product_ring_is_componentwise():
    R = ring("prod:gf:2+zn:3")
    for a, b in itertools.product(range(6), repeat=2):
        la, ra, lb, rb = a // 3, a % 3, b // 3, b % 3
        assert R.mul(a, b) == ((la * lb) % 2) * 3 + (ra * rb) % 3
        assert R.add(a, b) == ((la + lb) % 2) * 3 + (ra + rb) % 3


@pytest.mark.parametrize("base_spec,k", [("zn:4", 1), ("zn:4", 2), ("ut:2:gf:2", 1), ("gf:3", 2)])
def test_dual_product_law(base_spec, k):
    base = ring(base_spec)
    dual = make_dual(base, k)
    s = base.size
    assert dual.size == s ** (k + 1)
    rng = np.random.default_rng(1)
    xs = rng.integers(0, dual.size, size=300)
    ys = rng.integers(0, dual.size, size=300)
    for x, y in zip(xs.tolist(), ys.tolist()):
        a = [(x // s**i) % s for i in range(k + 1)]
        b = [(y // s**i) % s for i in range(k + 1)]
        want = [base.mul(a[0], b[0])]
        want += [base.add(base.mul(a[0], b[i]), base.mul(a[i], b[0])) for i in range(1, k + 1)]
        assert dual.mul(x, y) == sum(c * s**i for i, c in enumerate(want))


def test_structural_and_materialized_duals_agree():
    base = ring("ut:2:gf:2")
    lazy = make_dual(base, 1)
    full = make_dual(base, 1, materialize=True)
    assert lazy.storage_mode == "structural"
    assert full.storage_mode == "materialized-tables"
    assert np.array_equal(lazy.table("mul"), full.table("mul"))
    assert np.array_equal(lazy.table("add"), full.table("add"))


@pytest.mark.parametrize("text", ["", "zz:3", "zn:", "zn:1", "gf:4:2", "gf:2:1:1,1,0", "mat:0:zn:2",
                                  "prod:zn:2", "dual:0:zn:2", "zn:4 extra"])
def test_bad_specs_raise_parse_error(text):
    with pytest.raises((ParseError, NotIrreducible)):
        construct_ring(text)


def test_spec_canonical_forms():
    assert construct_ring("gf:2").spec == "gf:2:1"
    assert construct_ring("gf:4").spec == "gf:2:2"
    assert parse_spec("dual:2:zn:4").kind == "dual"


def test_size_budget():
    with pytest.raises(BudgetExceeded):
        construct_ring("mat:3:zn:4")


@settings(max_examples=60, deadline=None)
@given(spec=st.sampled_from(["zn:8", "gf:4", "ut:2:zn:3", "mat:2:gf:2", "dual:1:zn:4", "dual:2:gf:2"]),
       data=st.data())
def test_ring_axioms_hold_on_random_triples(spec, data):
    R = ring(spec)
    a, b, c = (data.draw(st.integers(0, R.size - 1)) for _ in range(3))
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.mul(R.add(a, b), c) == R.add(R.mul(a, c), R.mul(b, c))
    assert R.add(a, R.neg(a)) == 0
    assert R.mul(R.one, a) == a == R.mul(a, R.one)


def test_table_cache_round_trip(tmp_path):
    cache = TableCache(tmp_path)
    add = np.array([[0, 1], [1, 0]])
    mul = np.array([[0, 0], [0, 1]])
    assert cache.load("zn:2", 2) is None
    cache.store("zn:2", add, mul)
    got = cache.load("zn:2", 2)
    assert got is not None
    assert np.array_equal(got[0], add) and np.array_equal(got[1], mul)
    # a file for another spec or of the wrong size is ignored
    assert cache.load("zn:2", 3) is None
    cache.path("zn:2").write_text("{not json")
    assert cache.load("zn:2", 2) is None
