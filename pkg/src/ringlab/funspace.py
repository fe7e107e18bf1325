"""Induced functions, the null ideals and the counting formulas.

Function tables and lambda tables depend additively on the coefficients, so
the set of all tables induced by polynomials of bounded degree is the
subgroup spanned by the tables of ``e x^j`` for ``e`` running over an
additive basis of the ring.  Two independent routes are offered: plain
enumeration of coefficient tuples, and the span engine of :mod:`ringlab.span`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .errors import BudgetExceeded, WrongRing
from .poly import (
    Poly,
    all_coefficient_tuples,
    assemble,
    batch_func_tables,
    batch_lambda_tables,
    dual_null_degree,
    formal_derivative,
    lambda_table,
    monic_central_null,
    null_degree,
    poly_mul,
)
from .report import Report
from .rings import make_dual, same_ring
from .span import AbelianSpan

DEFAULT_TUPLE_BUDGET = 10**7
DEFAULT_TABLE_BUDGET = 10**6
CHUNK_CELLS = 2**22
# above this many tuples the auto method switches to the span route
AUTO_ENUMERATE = 2 * 10**5


@dataclass
class FuncTable:
    ring: object
    out: np.ndarray

    @cached_property
    def bijective(self):
        return bool(np.array_equal(np.sort(self.out), np.arange(self.ring.size)))

    def key(self):
        return self.out.astype(np.int64).tobytes()

    def __eq__(self, other):
        return same_ring(self.ring, other.ring) and np.array_equal(self.out, other.out)

    __hash__ = None


def func_table(f, budget=DEFAULT_TUPLE_BUDGET):
    ring = f.ring
    if ring.size > budget:
        raise BudgetExceeded(f"{ring.spec} has {ring.size} elements, budget is {budget}")
    return FuncTable(ring, np.asarray(f(ring.elements())))


def is_null(f):
    return not func_table(f).out.any()


def is_anull(f):
    return is_null(f) and not lambda_table(f).any()


def is_nullprime(f):
    return is_null(f) and is_null(formal_derivative(f))


def equiv_on(f, g, ring=None):
    """Same induced function on ``ring`` (default: the polynomials' own ring)."""
    if not same_ring(f.ring, g.ring):
        raise WrongRing(f"{f.ring.spec} vs {g.ring.spec}")
    if ring is not None:
        f, g = f.on(ring), g.on(ring)
    return func_table(f) == func_table(g)


def equiv_dual_criterion(fs, gs, base=None, k=None):
    """Componentwise test for equality of functions on ``R_k``.

    ``f_0`` and ``g_0`` must agree as functions and in their lambda tables;
    every other component only as a function on ``R``.
    """
    base = fs[0].ring if base is None else base
    k = len(fs) - 1 if k is None else k
    if len(fs) != k + 1 or len(gs) != k + 1:
        raise WrongRing("component count does not match k")
    if any(not same_ring(f.ring, base) for f in list(fs) + list(gs)):
        raise WrongRing("component not over the base ring")
    if not equiv_on(fs[0], gs[0]):
        return False
    if not np.array_equal(lambda_table(fs[0]), lambda_table(gs[0])):
        return False
    return all(equiv_on(f, g) for f, g in zip(fs[1:], gs[1:]))


def dual_tables_equal(fs, gs, dual=None):
    """Direct oracle for :func:`equiv_dual_criterion`: compare tables on ``R_k``."""
    base = fs[0].ring
    dual = make_dual(base, len(fs) - 1) if dual is None else dual
    return func_table(assemble(fs, dual)) == func_table(assemble(gs, dual))


def equiv_criterion_check(base, k=1, degree_bound=3, mode="exhaustive", samples=2000, seed=0,
                          budget=DEFAULT_TUPLE_BUDGET):
    """The componentwise criterion partitions polynomials exactly as ``R_k`` tables do.

    Both partitions are computed over the same set of component tuples (all
    of degree ``< degree_bound`` or ``samples`` random ones), so agreement
    decides the criterion for every pair in the set at once.
    """
    dual = make_dual(base, k)
    s, d = base.size, degree_bound
    total = s ** (d * (k + 1))
    if mode == "exhaustive" and total * (dual.size + s * s) > budget * 2:
        mode = "sampled"
    rep = Report("equiv", base.spec, k=k, mode=mode, seed=seed if mode == "sampled" else None)
    rng = np.random.default_rng(seed)
    if mode == "exhaustive":
        flat = all_coefficient_tuples(base, d * (k + 1))
    else:
        flat = rng.integers(0, s, size=(samples, d * (k + 1)))
    comps = flat.reshape(-1, k + 1, d)
    if mode == "sampled":
        # partners shifted by scalar multiples of a null polynomial, so classes collide
        h = np.array(monic_central_null(base).coeffs, dtype=np.int64)
        width = max(d, len(h))
        base_part = np.zeros((len(comps), k + 1, width), dtype=np.int64)
        base_part[:, :, :d] = comps
        scal = rng.integers(0, s, size=(len(comps), k + 1, 1))
        shift = np.zeros_like(base_part)
        shift[:, :, : len(h)] = base.mul(scal, h[None, None, :])
        comps = np.concatenate([base_part, np.asarray(base.add(base_part, shift))])
        d = width
    crit = [batch_func_tables(base, comps[:, 0]),
            batch_lambda_tables(base, comps[:, 0]).reshape(len(comps), -1)]
    crit += [batch_func_tables(base, comps[:, i]) for i in range(1, k + 1)]
    crit = np.hstack(crit)
    direct = batch_func_tables(dual, np.asarray(dual.compose(np.transpose(comps, (0, 2, 1)))).reshape(-1, d))
    _, ci = np.unique(_row_keys(crit), return_inverse=True)
    _, di = np.unique(_row_keys(direct), return_inverse=True)
    joint = len(np.unique(ci.astype(np.int64) * (di.max() + 1) + di))
    ok = joint == ci.max() + 1 == di.max() + 1
    bad = None
    if not ok:
        # two tuples sharing one class but not the other
        for labels, other in ((ci, di), (di, ci)):
            order = np.lexsort((other, labels))
            same = (labels[order][1:] == labels[order][:-1]) & (other[order][1:] != other[order][:-1])
            if same.any():
                i = np.flatnonzero(same)[0]
                bad = {"f": comps[order[i]].tolist(), "g": comps[order[i + 1]].tolist()}
                break
    rep.add("criterion_partition_matches_tables", ok, bad)

    # the scalar entry points on random pairs and on a shift by a null polynomial
    h = monic_central_null(base)
    bad = None
    for _ in range(25):
        i, j = rng.integers(0, len(comps), size=2)
        fs = [Poly(base, comps[i, c].tolist()) for c in range(k + 1)]
        gs = [Poly(base, comps[j, c].tolist()) for c in range(k + 1)]
        shifted = [fs[0] + h] + fs[1:]
        for other in (gs, shifted, fs):
            if equiv_dual_criterion(fs, other, base, k) != dual_tables_equal(fs, other, dual):
                bad = {"f": comps[i].tolist(), "g": [g.index_str() for g in other]}
                break
        if bad:
            break
    rep.add("scalar_criterion_matches_tables", bad is None, bad)
    rep.counts.update(tuples=len(comps), criterion_classes=int(ci.max() + 1), table_classes=int(di.max() + 1))
    return rep


# ---------------------------------------------------------------------------
# vector encoding of tables


def additive_basis(ring):
    """Elements with a single unit digit; they generate the additive group."""
    return [int(w) for w in ring._weights]


def exponent(ring):
    return math.lcm(*ring.moduli.tolist())


def encode_tables(ring, tables):
    """``(B, cells)`` element tables to ``(B, cells * r)`` vectors over ``Z/exponent``."""
    tables = np.asarray(tables, dtype=np.int64)
    scale = exponent(ring) // ring.moduli
    digs = ring.digits(tables) * scale
    return digs.reshape(tables.shape[0], -1)


def decode_vectors(ring, vecs, cells):
    scale = exponent(ring) // ring.moduli
    digs = np.asarray(vecs, dtype=np.int64).reshape(len(vecs), cells, len(ring.moduli)) // scale
    return np.asarray(ring.from_digits(digs)).reshape(len(vecs), cells)


def monomial_generators(ring, d):
    """Coefficient rows ``e x^j`` for basis elements ``e`` and ``j < d``."""
    basis = additive_basis(ring)
    rows = np.zeros((d * len(basis), d), dtype=np.int64)
    for j in range(d):
        for i, e in enumerate(basis):
            rows[j * len(basis) + i, j] = e
    return rows


def tags_to_coeffs(ring, d, tags):
    """Coefficient vectors represented by generator tags from :func:`monomial_generators`."""
    tags = np.asarray(tags, dtype=np.int64)
    r = len(ring.moduli)
    digs = tags.reshape(len(tags), d, r)
    return np.asarray(ring.from_digits(digs)).reshape(len(tags), d)


def func_span(ring, d):
    """Span of function tables of polynomials of degree ``< d`` over ``ring``."""
    gens = monomial_generators(ring, d)
    return AbelianSpan(encode_tables(ring, batch_func_tables(ring, gens)), exponent(ring)), gens


def pair_span(ring, d):
    """Span of ``(function table, lambda table)`` pairs, function columns first."""
    gens = monomial_generators(ring, d)
    F = encode_tables(ring, batch_func_tables(ring, gens))
    lam = encode_tables(ring, batch_lambda_tables(ring, gens).reshape(len(gens), -1))
    return AbelianSpan(np.hstack([F, lam]), exponent(ring)), F.shape[1]


# ---------------------------------------------------------------------------
# enumeration helpers


def _chunks_of(ring, d, width, budget):
    total = ring.size**d
    if total > budget:
        raise BudgetExceeded(f"{total} coefficient tuples exceeds budget {budget}")
    coeffs = all_coefficient_tuples(ring, d)
    step = max(1, CHUNK_CELLS // max(1, width))
    for start in range(0, len(coeffs), step):
        yield coeffs[start : start + step]


def _row_keys(arr):
    arr = np.ascontiguousarray(arr.reshape(len(arr), int(np.prod(arr.shape[1:]))).astype(np.int32))
    return arr.view(np.dtype((np.void, arr.dtype.itemsize * arr.shape[1]))).ravel()


def count_distinct_tables(ring, d, budget=DEFAULT_TUPLE_BUDGET):
    seen = set()
    for chunk in _chunks_of(ring, d, ring.size, budget):
        seen.update(np.unique(_row_keys(batch_func_tables(ring, chunk))).tolist())
    return len(seen)


def count_polyfun(ring, method="enumerate", budget=DEFAULT_TUPLE_BUDGET):
    """``|PolFun(ring)|``; degrees below that of the monic central null suffice."""
    d = null_degree(ring)
    if method == "enumerate":
        return count_distinct_tables(ring, d, budget)
    if method == "span":
        return func_span(ring, d)[0].order
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# ideal indices


@dataclass
class IdealStats:
    spec: str
    d: int
    idx_null: int
    idx_anull: int
    ratio: int
    method: str
    checks: dict = field(default_factory=dict)

    @property
    def identity_holds(self):
        return self.idx_anull == self.idx_null * self.ratio

    def to_dict(self):
        return {
            "d": self.d, "idx_null": self.idx_null, "idx_anull": self.idx_anull,
            "ratio": self.ratio, "method": self.method, "identity": self.identity_holds,
            **self.checks,
        }


def ideal_stats(base, method="auto", budget=DEFAULT_TUPLE_BUDGET):
    """Indices of Null and ANull in ``R[x]`` and ``[Null : ANull]``.

    Polynomials of degree below that of the monic null of ``R_1`` represent
    every (function, lambda) pair, so counting there is exact.  The enumerate
    route counts distinct tables directly; the span route takes each number
    from a separately built subgroup.
    """
    d = dual_null_degree(base, 1)
    if method == "auto":
        method = "enumerate" if base.size**d <= min(budget, AUTO_ENUMERATE) else "span"
    if method == "enumerate":
        funcs, pairs, null_lams = set(), set(), set()
        cells = base.size + base.size**2
        for chunk in _chunks_of(base, d, cells, budget):
            F = batch_func_tables(base, chunk)
            lam = batch_lambda_tables(base, chunk).reshape(len(chunk), -1)
            fk, pk = _row_keys(F), _row_keys(np.hstack([F, lam]))
            funcs.update(np.unique(fk).tolist())
            pairs.update(np.unique(pk).tolist())
            null = ~F.any(axis=1)
            null_lams.update(np.unique(_row_keys(lam[null])).tolist())
        return IdealStats(base.spec, d, len(funcs), len(pairs), len(null_lams), "enumerate")
    if method != "span":
        raise ValueError(f"unknown method {method!r}")
    fspan, gens = func_span(base, d)
    idx_null = fspan.order
    pspan, fcols = pair_span(base, d)
    idx_anull = pspan.order
    # null polynomials are the relations among function tables
    kernel = fspan.kernel_tags()
    null_coeffs = tags_to_coeffs(base, d, kernel) if len(kernel) else np.zeros((0, d), dtype=np.int64)
    if len(null_coeffs):
        lam = encode_tables(base, batch_lambda_tables(base, null_coeffs).reshape(len(null_coeffs), -1))
        ratio = AbelianSpan(lam, exponent(base)).order
    else:
        ratio = 1
    checks = {
        "projection_matches": pspan.order_above(fcols) == idx_null,
        "kernel_matches": pspan.order_below(fcols) == ratio,
    }
    return IdealStats(base.spec, d, idx_null, idx_anull, ratio, "span", checks)


def lambda_classes_for(base, target, d=None, budget=DEFAULT_TUPLE_BUDGET):
    """Number of distinct lambda tables among ``f`` with ``[f] = target``."""
    d = dual_null_degree(base, 1) if d is None else d
    target = np.asarray(target)
    lams = set()
    for chunk in _chunks_of(base, d, base.size + base.size**2, budget):
        F = batch_func_tables(base, chunk)
        hit = (F == target).all(axis=1)
        if hit.any():
            lam = batch_lambda_tables(base, chunk[hit]).reshape(int(hit.sum()), -1)
            lams.update(np.unique(_row_keys(lam)).tolist())
    return len(lams)


@dataclass
class DualCount:
    count: int
    method: str = "formula"
    span_count: int | None = None
    crosscheck: str = "skipped"


def count_polyfun_dual(base, k, budget=DEFAULT_TUPLE_BUDGET, span_cols=200_000):
    """``[R[x]:ANull] * [R[x]:Null]^k``, checked against the span of ``R_k`` tables."""
    stats = ideal_stats(base, budget=budget)
    count = stats.idx_anull * stats.idx_null**k
    out = DualCount(count)
    dual = make_dual(base, k)
    if dual.size * len(dual.moduli) <= span_cols:
        out.span_count = count_polyfun(dual, "span")
        out.crosscheck = "pass" if out.span_count == count else "fail"
    return out


# ---------------------------------------------------------------------------
# the (function, lambda) pair space


@dataclass
class PairSpace:
    """Distinct ``([f]_R, [lambda_f])`` pairs with a representative for each.

    Rows are in a deterministic order; ``coeffs[i]`` is a polynomial of degree
    ``< d`` inducing ``F[i]`` and ``lam[i]``.
    """

    base: object
    d: int
    method: str
    coeffs: np.ndarray
    F: np.ndarray
    lam: np.ndarray

    def __len__(self):
        return len(self.coeffs)

    def poly(self, i):
        return Poly(self.base, self.coeffs[i].tolist())


def pair_space(base, budget=DEFAULT_TUPLE_BUDGET, table_budget=DEFAULT_TABLE_BUDGET, method="auto"):
    d = dual_null_degree(base, 1)
    if method == "auto":
        method = "enumerate" if base.size**d <= min(budget, AUTO_ENUMERATE) else "span"
    if method == "enumerate":
        keep_c, keep_F, keep_l, seen = [], [], [], set()
        for chunk in _chunks_of(base, d, base.size + base.size**2, budget):
            F = batch_func_tables(base, chunk)
            lam = batch_lambda_tables(base, chunk)
            keys = _row_keys(np.hstack([F, lam.reshape(len(chunk), -1)]))
            _, first = np.unique(keys, return_index=True)
            for i in np.sort(first):
                key = keys[i].tobytes()
                if key not in seen:
                    seen.add(key)
                    keep_c.append(chunk[i])
                    keep_F.append(F[i])
                    keep_l.append(lam[i])
        return PairSpace(base, d, method, np.array(keep_c), np.array(keep_F), np.array(keep_l))
    pspan, fcols = pair_span(base, d)
    if pspan.order > table_budget:
        raise BudgetExceeded(f"{pspan.order} pairs exceeds table budget {table_budget}")
    vecs, tags = pspan.elements(budget=table_budget)
    coeffs = tags_to_coeffs(base, d, tags)
    cells = base.size
    F = decode_vectors(base, vecs[:, :fcols], cells)
    lam = decode_vectors(base, vecs[:, fcols:], cells**2).reshape(len(vecs), cells, cells)
    return PairSpace(base, d, method, coeffs, F, lam)


def combine_coeffs(ring, gen_coeffs, tags):
    """Coefficient vectors of ``sum_g tags[:, g] * gen_coeffs[g]`` (integer multiples)."""
    digs = ring.digits(np.asarray(gen_coeffs, dtype=np.int64))  # (G, d, r)
    comb = np.tensordot(np.asarray(tags, dtype=np.int64), digs, axes=(1, 0)) % ring.moduli
    return np.asarray(ring.from_digits(comb)).reshape(len(tags), digs.shape[1])


class PairClasses:
    """The pair space as (every function) x (every null lambda class).

    Every pair ``([f], [lambda_f])`` equals ``(F, lambda_u + lambda_h)`` for the
    listed representative ``u`` of ``F = [f]`` and exactly one listed null
    representative ``h``, so subsets selected by a condition on ``F`` alone
    (for instance bijectivity) can be walked in chunks without storing them.
    """

    def __init__(self, base, table_budget=DEFAULT_TABLE_BUDGET):
        self.base = base
        d = self.d = dual_null_degree(base, 1)
        fspan, _ = func_span(base, d)
        if fspan.order > table_budget:
            raise BudgetExceeded(f"{fspan.order} functions exceeds table budget {table_budget}")
        vecs, tags = fspan.elements(table_budget)
        self.fun_coeffs = tags_to_coeffs(base, d, tags)
        self.fun_tables = decode_vectors(base, vecs, base.size)
        kernel = fspan.kernel_tags()
        if len(kernel):
            null_gens = tags_to_coeffs(base, d, kernel)
        else:
            null_gens = np.zeros((1, d), dtype=np.int64)
        lam = encode_tables(base, batch_lambda_tables(base, null_gens).reshape(len(null_gens), -1))
        lspan = AbelianSpan(lam, exponent(base))
        if lspan.order > table_budget:
            raise BudgetExceeded(f"{lspan.order} null classes exceeds table budget {table_budget}")
        lvecs, ltags = lspan.elements(table_budget)
        self.null_coeffs = combine_coeffs(base, null_gens, ltags)
        n = base.size
        self.null_lams = decode_vectors(base, lvecs, n * n).reshape(len(lvecs), n, n)

    @property
    def n_functions(self):
        return len(self.fun_coeffs)

    @property
    def n_null(self):
        return len(self.null_coeffs)

    def bijective_functions(self):
        n = self.base.size
        return np.flatnonzero((np.sort(self.fun_tables, axis=1) == np.arange(n)).all(axis=1))

    def chunks(self, fun_idx, max_cells=CHUNK_CELLS):
        """Yield ``(coeffs, F, lam)`` for all pairs over the chosen functions."""
        base = self.base
        n = base.size
        fun_idx = np.asarray(fun_idx, dtype=np.int64)
        rep_lams = None
        per = max(1, max_cells // (n * n * max(1, self.n_null)))
        for start in range(0, len(fun_idx), per):
            fi = fun_idx[start : start + per]
            rep_lams = batch_lambda_tables(base, self.fun_coeffs[fi])
            lam = np.asarray(base.add(rep_lams[:, None], self.null_lams[None]))
            coeffs = np.asarray(base.add(self.fun_coeffs[fi][:, None], self.null_coeffs[None]))
            F = np.broadcast_to(self.fun_tables[fi][:, None], (len(fi), self.n_null, n))
            yield (coeffs.reshape(-1, self.d), F.reshape(-1, n), lam.reshape(-1, n, n))


@lru_cache(maxsize=32)
def pair_classes(base, table_budget=DEFAULT_TABLE_BUDGET):
    return PairClasses(base, table_budget)


# ---------------------------------------------------------------------------
# null decomposition on R_k


def _dual_null_flags(dual, coeff_rows):
    """For rows of dual coefficients, whether the polynomial is null on ``dual``."""
    step = max(1, CHUNK_CELLS // dual.size)
    out = np.zeros(len(coeff_rows), dtype=bool)
    for start in range(0, len(coeff_rows), step):
        tabs = batch_func_tables(dual, coeff_rows[start : start + step])
        out[start : start + step] = ~tabs.any(axis=1)
    return out


def null_decomposition_check(base, k=1, degree_bound=4, mode="exhaustive", samples=10**4,
                             seed=0, budget=DEFAULT_TUPLE_BUDGET):
    """Null on ``R_k`` iff ``f_0`` in ANull and every ``f_i`` in Null.

    The left side is evaluated directly on ``R_k``; the right side uses only
    tables over ``R``.
    """
    dual = make_dual(base, k)
    d = degree_bound
    total = base.size ** (d * (k + 1))
    if mode == "exhaustive" and total > budget:
        mode = "sampled"
    rep = Report("null-decomp", base.spec, k=k, mode=mode, seed=seed if mode == "sampled" else None)
    if mode == "exhaustive":
        pure = all_coefficient_tuples(base, d)
        F = batch_func_tables(base, pure)
        lam = batch_lambda_tables(base, pure).reshape(len(pure), -1)
        null = ~F.any(axis=1)
        anull = null & ~lam.any(axis=1)
        idx = np.indices((len(pure),) * (k + 1)).reshape(k + 1, -1).T[:, ::-1]
        comps = pure[idx]  # (T, k+1, d)
    else:
        comps = _null_biased_draws(base, k, d, samples, seed)
        d = comps.shape[2]
        flat = comps.reshape(-1, d)
        F = batch_func_tables(base, flat).reshape(samples, k + 1, -1)
        lam = batch_lambda_tables(base, comps[:, 0]).reshape(samples, -1)
        idx = None
    coeffs = dual.compose(np.transpose(comps, (0, 2, 1)))  # (T, d)
    direct = _dual_null_flags(dual, coeffs)
    if idx is not None:
        separating = int((null & ~anull)[idx[:, 0]].sum())
        claimed = anull[idx[:, 0]]
        for i in range(1, k + 1):
            claimed = claimed & null[idx[:, i]]
    else:
        separating = int((~F[:, 0].any(axis=1) & lam.any(axis=1)).sum())
        claimed = ~F[:, 0].any(axis=1) & ~lam.any(axis=1)
        for i in range(1, k + 1):
            claimed = claimed & ~F[:, i].any(axis=1)
    bad = np.flatnonzero(direct != claimed)
    witness = None
    if len(bad):
        i = bad[0]
        witness = {"components": comps[i].tolist(), "null_on_dual": bool(direct[i])}
    rep.add("null_iff_anull_plus_null", not len(bad), witness)
    # f_0 null on R but outside ANull: the tuples that tell ANull and Null apart
    rep.counts.update(tuples=len(coeffs), null_on_dual=int(direct.sum()), f0_null_not_anull=separating,
                      degree_bound=d)
    return rep


def _null_biased_draws(base, k, d, samples, seed, pool=256):
    """Random component tuples, most of them near the null ideal.

    Uniform draws are almost never null, so each component is drawn from one
    of: uniform of degree ``< d``, ``q h``, ``q h^2`` (``h`` the monic central
    null), or one of those with a single coefficient changed.  The width is
    widened to hold ``q h^2`` for linear ``q``.
    """
    rng = np.random.default_rng(seed)
    h = monic_central_null(base)
    width = max(d, 2 * h.degree + 2)
    hh = poly_mul(h, h)
    qs = rng.integers(0, base.size, size=(pool, 2))
    structured = np.zeros((2 * pool, width), dtype=np.int64)
    for i, q in enumerate(qs.tolist()):
        for j, g in enumerate((h, hh)):
            c = poly_mul(Poly(base, q), g).coeffs[:width]
            structured[2 * i + j, :len(c)] = c
    comps = np.zeros((samples, k + 1, width), dtype=np.int64)
    kind = rng.integers(0, 4, size=(samples, k + 1))
    comps[..., :d] = rng.integers(0, base.size, size=(samples, k + 1, d))
    near = kind > 0
    comps[near] = structured[rng.integers(0, len(structured), size=int(near.sum()))]
    bump = kind == 3
    n_bump = int(bump.sum())
    pos = rng.integers(0, width, size=n_bump)
    rows = comps[bump]
    rows[np.arange(n_bump), pos] = base.add(rows[np.arange(n_bump), pos], rng.integers(1, base.size, size=n_bump))
    comps[bump] = rows
    return comps


def dual_table_of(components, dual):
    return func_table(assemble(components, dual)).out


__all__ = [
    "DualCount", "FuncTable", "IdealStats", "PairSpace", "count_polyfun", "count_polyfun_dual",
    "equiv_criterion_check", "equiv_dual_criterion", "equiv_on", "func_table", "ideal_stats", "is_anull", "is_null",
    "is_nullprime", "lambda_classes_for", "null_decomposition_check", "pair_space",
]

