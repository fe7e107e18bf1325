import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ring
from ringlab.funspace import (
    count_polyfun,
    count_polyfun_dual,
    equiv_criterion_check,
    equiv_dual_criterion,
    dual_tables_equal,
    ideal_stats,
    is_anull,
    is_null,
    is_nullprime,
    null_decomposition_check,
    pair_classes,
    pair_space,
)
from ringlab.poly import Poly, dual_null_degree, eval_right, lambda_eval
from ringlab.span import AbelianSpan, bfs_span_order


def brute_pairs(R, d):
    """Distinct (function, lambda) tables over all coefficient tuples of length d, in pure Python."""
    funcs, pairs = set(), set()
    els = range(R.size)
    for coeffs in itertools.product(els, repeat=d):
        f = Poly(R, coeffs)
        F = tuple(eval_right(f, a) for a in els)
        lam = tuple(lambda_eval(f, a, b) for a in els for b in els)
        funcs.add(F)
        pairs.add((F, lam))
    return len(funcs), len(pairs)


@pytest.mark.parametrize("spec", ["gf:2", "zn:4"])
def test_pair_counts_against_pure_python(spec):
    R = ring(spec)
    d = dual_null_degree(R, 1)
    stats = ideal_stats(R, "span")
    assert brute_pairs(R, d) == (stats.idx_null, stats.idx_anull)


# frozen from ideal_stats with both routes (span and enumerate agree where enumerable)
IDEALS = {
    "gf:2": (4, 16, 4),
    "zn:4": (64, 256, 4),
    "gf:3": (27, 729, 27),
    "gf:4": (256, 65536, 256),
    "zn:8": (1024, 65536, 64),
    "zn:9": (19683, 14348907, 729),
    "ut:2:gf:2": (256, 16384, 64),
    "prod:gf:2+gf:2": (16, 256, 16),
}


@pytest.mark.parametrize("spec", sorted(IDEALS))
def test_ideal_stats(spec):
    stats = ideal_stats(ring(spec), "span")
    assert (stats.idx_null, stats.idx_anull, stats.ratio) == IDEALS[spec]
    assert stats.identity_holds
    assert all(stats.checks.values())


@pytest.mark.parametrize("spec", ["gf:2", "zn:4", "gf:3", "prod:gf:2+gf:2"])
def test_ideal_stats_routes_agree(spec):
    R = ring(spec)
    a, b = ideal_stats(R, "span"), ideal_stats(R, "enumerate")
    assert (a.idx_null, a.idx_anull, a.ratio) == (b.idx_null, b.idx_anull, b.ratio)


@pytest.mark.parametrize("spec,count", [("gf:2", 4), ("zn:4", 64), ("gf:3", 27), ("zn:8", 1024)])
def test_count_polyfun(spec, count):
    R = ring(spec)
    assert count_polyfun(R, "span") == count
    if R.size <= 4:
        assert count_polyfun(R, "enumerate") == count


def test_count_polyfun_pure_python_zn4():
    R = ring("zn:4")
    tables = {tuple((c0 + c1 * a + c2 * a * a + c3 * a**3) % 4 for a in range(4))
              for c0, c1, c2, c3 in itertools.product(range(4), repeat=4)}
    assert len(tables) == 64 == count_polyfun(R, "enumerate")


@pytest.mark.parametrize("spec,k", [("gf:2", 1), ("zn:4", 1), ("gf:2", 2)])
def test_count_polyfun_dual_formula_vs_span(spec, k):
    dc = count_polyfun_dual(ring(spec), k)
    assert dc.crosscheck == "pass"
    assert dc.count == dc.span_count


def test_span_matches_bfs_oracle():
    rng = np.random.default_rng(5)
    for n in (4, 6, 8, 12):
        gens = rng.integers(0, n, size=(3, 3))
        assert AbelianSpan(gens, n).order == bfs_span_order(gens, n)


@settings(max_examples=40, deadline=None)
@given(n=st.sampled_from([2, 4, 8, 9, 12]), rows=st.integers(1, 4), data=st.data())
def test_span_order_and_membership(n, rows, data):
    gens = np.array(data.draw(st.lists(st.lists(st.integers(0, n - 1), min_size=3, max_size=3),
                                       min_size=rows, max_size=rows)))
    span = AbelianSpan(gens, n)
    assert span.order == bfs_span_order(gens, n)
    vecs, tags = span.elements()
    assert len({tuple(v) for v in vecs.tolist()}) == span.order
    assert np.array_equal((tags @ gens) % n, vecs)
    assert all(span.contains(v) for v in vecs[:20])


def test_null_predicates_on_upper_triangular_example():
    R = ring("ut:2:gf:2")
    h = Poly(R, (0, 0, R.one, 0, R.one))
    assert is_null(h) and is_nullprime(h) and not is_anull(h)
    sq = h * h
    assert is_anull(sq)


def test_pair_space_and_classes_agree():
    R = ring("zn:4")
    ps = pair_space(R, method="enumerate")
    pc = pair_classes(R)
    assert len(ps) == pc.n_functions * pc.n_null == 256
    keys = set()
    for coeffs, F, lam in pc.chunks(np.arange(pc.n_functions)):
        for c, f, l in zip(coeffs, F, lam):
            keys.add((f.tobytes(), l.tobytes()))
            assert np.array_equal(eval_right(Poly(R, c.tolist()), R.elements()), f)
    assert len(keys) == 256


@pytest.mark.parametrize("spec,k", [("gf:2", 1), ("zn:4", 1), ("gf:2", 2)])
def test_equiv_criterion_exhaustive(spec, k):
    rep = equiv_criterion_check(ring(spec), k, 3)
    assert rep.passed


def test_equiv_criterion_sampled_ut():
    rep = equiv_criterion_check(ring("ut:2:gf:2"), 1, 4, mode="sampled", samples=500, seed=1)
    assert rep.passed and rep.mode == "sampled"


def test_equiv_criterion_example():
    base = ring("gf:2")
    # x and x^3 agree on F_2 with equal lambda; x^2 + x is null on F_2 but its lambda is not
    x, x3, h = Poly(base, (0, 1)), Poly(base, (0, 0, 0, 1)), Poly(base, (0, 1, 1))
    zero = Poly(base, ())
    assert equiv_dual_criterion([x, zero], [x3, zero]) == dual_tables_equal([x, zero], [x3, zero])
    assert not equiv_dual_criterion([x, zero], [x + h, zero])
    assert not dual_tables_equal([x, zero], [x + h, zero])
    assert equiv_dual_criterion([x, h], [x, zero]) and dual_tables_equal([x, h], [x, zero])


@pytest.mark.parametrize("spec,k,d", [("gf:2", 1, 4), ("gf:2", 2, 3), ("zn:4", 1, 3), ("gf:3", 1, 3)])
def test_null_decomposition_exhaustive(spec, k, d):
    rep = null_decomposition_check(ring(spec), k, d)
    assert rep.mode == "exhaustive" and rep.passed
    assert rep.counts["tuples"] == ring(spec).size ** (d * (k + 1))


@pytest.mark.parametrize("spec,k", [("zn:4", 1), ("ut:2:gf:2", 1), ("zn:8", 2)])
def test_null_decomposition_sampled_hits_both_sides(spec, k):
    rep = null_decomposition_check(ring(spec), k, 4, mode="sampled", samples=2000, seed=4)
    assert rep.mode == "sampled" and rep.passed
    assert rep.counts["null_on_dual"] > 100 and rep.counts["f0_null_not_anull"] > 100
