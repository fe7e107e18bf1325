"""Composition closures of function tables and the permutation groups of ``R_k``.

Tables are rows of an integer array; a :class:`PermSet` keeps them
deduplicated and sorted, so every set built here is canonical regardless of
the order in which it was generated.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded, NotCommutative, WrongRing
from .funspace import CHUNK_CELLS, DEFAULT_TABLE_BUDGET, func_span, ideal_stats, pair_classes, tags_to_coeffs
from .poly import batch_func_tables, null_degree
from .report import Report
from .rings import make_dual
from .structure import chain_analysis
from .span import factorize

DEFAULT_CELL_BUDGET = 5 * 10**7


_WEIGHTS = np.random.default_rng(0x5eed).integers(1, 2**63, size=1 << 16, dtype=np.uint64) | np.uint64(1)


def _keys(tables):
    """Rows as opaque byte strings, comparable and sortable by numpy."""
    arr = np.ascontiguousarray(tables, dtype=np.int32)
    return arr.view(np.dtype((np.void, 4 * arr.shape[1]))).ravel()


def _hash(tables):
    """64-bit row hashes; only ever used to locate candidates for exact comparison."""
    t = np.asarray(tables)
    n = t.shape[1]
    if n > len(_WEIGHTS):
        raise BudgetExceeded(f"tables of {n} cells are too long")
    with np.errstate(over="ignore"):
        return (t.astype(np.uint64) * _WEIGHTS[:n]).sum(axis=1, dtype=np.uint64)


def canonical(tables):
    """Deduplicated ``int32`` copy of a table array, in a content-determined order."""
    tables = np.asarray(tables, dtype=np.int32)
    if tables.ndim == 1:
        tables = tables[None]
    if len(tables) <= 1:
        return tables.copy()
    h = _hash(tables)
    order = np.lexsort((np.arange(len(h)), h))
    hs, ts = h[order], tables[order]
    same = hs[1:] == hs[:-1]
    if same.any() and not (ts[1:][same] == ts[:-1][same]).all():
        # a genuine hash collision: fall back to exact lexicographic dedupe
        return np.unique(tables, axis=0)
    return ts[np.r_[True, ~same]]


def _bijective_rows(tables):
    n = tables.shape[1]
    return (np.sort(tables, axis=1) == np.arange(n)).all(axis=1)


class _Index:
    """Exact row lookup into a deduplicated table array."""

    def __init__(self, tables):
        self.tables = tables
        h = _hash(tables) if len(tables) else np.zeros(0, dtype=np.uint64)
        self.order = np.argsort(h, kind="stable")
        self.sorted = h[self.order]
        self.exact = None
        if len(h) > 1 and (self.sorted[1:] == self.sorted[:-1]).any():
            keys = _keys(tables)
            self.order = np.argsort(keys, kind="stable")
            self.exact = keys[self.order]

    def find(self, tables):
        tables = np.atleast_2d(np.asarray(tables, dtype=np.int32))
        if len(self.tables) == 0:
            return np.full(len(tables), -1)
        if self.exact is not None:
            q = _keys(tables)
            pos = np.minimum(np.searchsorted(self.exact, q), len(self.exact) - 1)
            return np.where(self.exact[pos] == q, self.order[pos], -1)
        pos = np.minimum(np.searchsorted(self.sorted, _hash(tables)), len(self.sorted) - 1)
        idx = self.order[pos]
        hit = (self.tables[idx] == tables).all(axis=1)
        return np.where(hit, idx, -1)


@dataclass
class PermSet:
    """A deduplicated set of function tables on one ring."""

    ring: object
    tables: np.ndarray
    closed: bool = False
    generators: np.ndarray | None = None

    def __post_init__(self):
        self.tables = canonical(self.tables)
        self._index = None

    def __len__(self):
        return len(self.tables)

    def index_of(self, tables):
        """Row index of each given table in this set, ``-1`` when absent."""
        if self._index is None:
            self._index = _Index(self.tables)
        return self._index.find(tables)

    def contains(self, tables):
        return self.index_of(tables) >= 0

    def issubset(self, other):
        return bool(other.contains(self.tables).all()) if len(self) else True

    def has_identity(self):
        n = self.ring.size if self.ring is not None else self.tables.shape[1]
        return bool(self.contains(np.arange(n))[0])

    def all_bijective(self):
        return bool(_bijective_rows(self.tables).all())


@dataclass
class GroupReport:
    order: int
    abelian: bool | None = None
    contains_identity: bool | None = None
    closed: bool | None = None
    normal_in: tuple | None = None
    intersection_order: int | None = None
    product_covers: bool | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        out = {k: v for k, v in self.__dict__.items() if v is not None and k != "extra"}
        out.update(self.extra)
        return out


def compose_tables(F, G):
    """``(F o G)[i] = F[G[i]]``; accepts single tables or stacks of equal length."""
    F, G = np.asarray(F), np.asarray(G)
    if F.shape[-1] != G.shape[-1]:
        raise WrongRing("tables act on rings of different sizes")
    if F.ndim == 1 and G.ndim == 1:
        return F[G]
    F, G = np.broadcast_arrays(F, G)
    return np.take_along_axis(F, G, axis=-1)


def inverse_table(F):
    F = np.asarray(F)
    inv = np.empty_like(F)
    if F.ndim == 1:
        inv[F] = np.arange(len(F))
    else:
        np.put_along_axis(inv, F, np.broadcast_to(np.arange(F.shape[1]), F.shape), axis=1)
    return inv


def _products(left, right, max_cells=CHUNK_CELLS):
    """Yield chunks of ``l o r`` for all ``l`` in ``left`` and ``r`` in ``right``."""
    n = left.shape[1]
    per = max(1, max_cells // (n * len(right)))
    for start in range(0, len(left), per):
        # rows of block i are left_i o right_j
        yield left[start : start + per][:, right].reshape(-1, n)


def _generated(gens, budget):
    """Breadth-first closure of ``gens`` under composition."""
    gens = canonical(gens)
    seen = gens
    index = _Index(seen)
    frontier = gens
    while len(frontier):
        fresh = []
        for block in _products(frontier, gens):
            block = canonical(block)
            fresh.append(block[index.find(block) < 0])
        frontier = canonical(np.vstack(fresh))
        if len(frontier):
            seen = np.vstack([seen, frontier])
            index = _Index(seen)
        if len(seen) > budget:
            raise BudgetExceeded(f"closure exceeds {budget} tables")
    return seen


def closure(gens, ring=None, budget=DEFAULT_TABLE_BUDGET):
    """Smallest composition-closed set containing ``gens``.

    Generators are added one at a time, only when not already produced, so
    the breadth-first search runs over a small generating subset; the result
    is the same set as the closure of all of ``gens``.
    """
    if isinstance(gens, PermSet):
        ring = gens.ring if ring is None else ring
        gens = gens.tables
    S = canonical(gens)
    if len(S) == 0:
        raise ValueError("closure needs at least one generator")
    chosen = [0]
    while True:
        H = PermSet(ring, _generated(S[chosen], budget))
        missing = np.flatnonzero(~H.contains(S))
        if len(missing) == 0:
            break
        chosen.append(int(missing[0]))
    H.closed = True
    H.generators = S[chosen]
    return H


def is_closed(ps, budget=DEFAULT_TABLE_BUDGET):
    """Closed under composition; a closed ``PermSet`` keeps its generating subset."""
    if len(ps) == 0:
        return True
    try:
        H = closure(ps, budget=len(ps))
    except BudgetExceeded:
        return False
    ok = len(H) == len(ps)
    if ok and isinstance(ps, PermSet):
        ps.closed, ps.generators = True, H.generators
    return ok


def commute_all(tables, max_cells=CHUNK_CELLS):
    """``True`` iff every pair of rows commutes under composition (all pairs tried)."""
    T = np.asarray(tables)
    n = T.shape[1]
    per = max(1, max_cells // (n * len(T)))
    for start in range(0, len(T), per):
        blk = T[start : start + per]
        ab = blk[:, T]                                   # blk_i o T_j
        ba = np.take_along_axis(T[None, :, :], np.broadcast_to(blk[:, None, :], ab.shape), axis=2)
        if not np.array_equal(ab, ba):
            return False
    return True


def is_abelian(ps):
    """All pairs commute.

    A closed set is generated by its generating subset, so pairwise
    commuting generators settle it; other sets compare every pair.
    """
    known = getattr(ps, "closed", False) and getattr(ps, "generators", None) is not None
    if known or is_closed(ps):
        return commute_all(ps.generators)
    return commute_all(ps.tables)


def _cells_ok(count, n, budget):
    if count * n > budget:
        raise BudgetExceeded(f"{count} tables of {n} cells exceeds cell budget {budget}")


# ---------------------------------------------------------------------------
# the groups of R_k


def function_reps(base, table_budget=DEFAULT_TABLE_BUDGET):
    """One polynomial per function on ``R`` (degree below the null degree)."""
    d = null_degree(base)
    span, _ = func_span(base, d)
    vecs, tags = span.elements(table_budget)
    return tags_to_coeffs(base, d, tags)


def _tail_polys(base, k, reps):
    """Coefficients over ``R_k`` of ``x + sum f_i beta_i`` for all rep tuples."""
    dual = make_dual(base, k)
    d = max(reps.shape[1], 2)
    m = len(reps)
    combos = np.indices((m,) * k).reshape(k, -1).T[:, ::-1] if k else np.zeros((1, 0), dtype=np.int64)
    comps = np.zeros((len(combos), d, k + 1), dtype=np.int64)
    comps[:, 1, 0] = base.one
    for i in range(k):
        comps[:, : reps.shape[1], i + 1] = reps[combos[:, i]]
    return dual, combos, dual.compose(comps)


def build_Pxk(base, k, table_budget=DEFAULT_TABLE_BUDGET, cell_budget=DEFAULT_CELL_BUDGET):
    """Tables of ``x + sum f_i beta_i`` for ``f_i`` over all functions of ``R``."""
    reps = function_reps(base, table_budget)
    n_fun = len(reps)
    dual = make_dual(base, k)
    _cells_ok(n_fun**k, dual.size, cell_budget)
    dual, combos, coeffs = _tail_polys(base, k, reps)
    tables = batch_func_tables(dual, coeffs)
    ps = PermSet(dual, tables)
    rep = GroupReport(len(ps))
    rep.extra["expected_order"] = n_fun**k
    rep.extra["distinct_from_tuples"] = len(ps) == len(combos)
    rep.contains_identity = ps.has_identity()
    rep.closed = is_closed(ps)
    rep.abelian = is_abelian(ps)
    rep.extra["compatible"] = _pxk_compatible(base, dual, reps, combos, tables)
    ps.closed = rep.closed
    return ps, rep


def _pxk_compatible(base, dual, reps, combos, tables, limit=4096):
    """``[x + sum f_i b_i] o [x + sum g_i b_i] = [x + sum (f_i + g_i) b_i]``."""
    rng = np.random.default_rng(0)
    m = len(combos)
    if m * m <= limit:
        pairs = np.indices((m, m)).reshape(2, -1).T
    else:
        pairs = rng.integers(0, m, size=(limit, 2))
    k = dual.k
    d = max(reps.shape[1], 2)
    comps = np.zeros((len(pairs), d, k + 1), dtype=np.int64)
    comps[:, 1, 0] = base.one
    for i in range(k):
        f = reps[combos[pairs[:, 0], i]]
        g = reps[combos[pairs[:, 1], i]]
        comps[:, : reps.shape[1], i + 1] = base.add(f, g)
    summed = batch_func_tables(dual, dual.compose(comps))
    composed = compose_tables(tables[pairs[:, 0]], tables[pairs[:, 1]])
    return bool(np.array_equal(summed, composed))


def pure_dual_tables(base, k, pp_only=True, table_budget=DEFAULT_TABLE_BUDGET,
                     cell_budget=DEFAULT_CELL_BUDGET):
    """Tables on ``R_k`` of every pure polynomial, one per (function, lambda) pair.

    With ``pp_only`` only pairs whose function permutes ``R`` are evaluated
    (a permutation of ``R_k`` restricts to one of ``R``); bijectivity on
    ``R_k`` is then decided from the tables themselves.
    """
    pc = pair_classes(base, table_budget)
    dual = make_dual(base, k)
    idx = pc.bijective_functions() if pp_only else np.arange(pc.n_functions)
    _cells_ok(len(idx) * pc.n_null, dual.size, cell_budget)
    funs = batch_func_tables(dual, pc.fun_coeffs[idx])
    nulls = batch_func_tables(dual, pc.null_coeffs)
    tables = np.asarray(dual.add(funs[:, None, :], nulls[None, :, :])).reshape(-1, dual.size)
    return dual, tables


def build_PR(base, k, table_budget=DEFAULT_TABLE_BUDGET, cell_budget=DEFAULT_CELL_BUDGET):
    """``P_R(R_k)``: permutations of ``R_k`` induced by pure polynomials, and its closure."""
    dual, tables = pure_dual_tables(base, k, True, table_budget, cell_budget)
    n = dual.size
    bij = (np.sort(tables, axis=1) == np.arange(n)).all(axis=1)
    ps = PermSet(dual, tables[bij])
    clo = closure(ps, budget=table_budget)
    rep = GroupReport(len(ps), contains_identity=ps.has_identity(), closed=len(clo) == len(ps))
    rep.extra["closure_order"] = len(clo)
    ps.closed = rep.closed
    return ps, clo, rep


def stabilizer_Stk(base, k, table_budget=DEFAULT_TABLE_BUDGET, cell_budget=DEFAULT_CELL_BUDGET):
    """Permutations of ``R_k`` induced by ``x + h`` with ``h`` null on ``R``."""
    pc = pair_classes(base, table_budget)
    dual = make_dual(base, k)
    _cells_ok(pc.n_null, dual.size, cell_budget)
    coeffs = pc.null_coeffs.copy()
    if coeffs.shape[1] < 2:
        coeffs = np.hstack([coeffs, np.zeros((len(coeffs), 2 - coeffs.shape[1]), dtype=np.int64)])
    coeffs[:, 1] = np.asarray(base.add(coeffs[:, 1], base.one))
    tables = batch_func_tables(dual, coeffs)
    n = dual.size
    bij = (np.sort(tables, axis=1) == np.arange(n)).all(axis=1)
    ps = PermSet(dual, tables[bij])
    ratio = ideal_stats(base, method="span").ratio
    rep = GroupReport(len(ps), contains_identity=ps.has_identity())
    rep.extra["fixes_R"] = bool((ps.tables[:, : base.size] == np.arange(base.size)).all())
    rep.extra["ratio"] = ratio
    rep.extra["at_most_ratio"] = len(ps) <= ratio
    rep.extra["chain_c_gt_1"] = _chain_c_gt_1(base)
    if rep.extra["chain_c_gt_1"]:
        rep.extra["equals_ratio"] = len(ps) == ratio
    return ps, rep


def _chain_c_gt_1(base):
    fac = factorize(base.char)
    return chain_analysis(base).is_chain and len(fac) == 1 and max(fac.values()) > 1


def restrict(tables, size):
    """Restriction of tables on ``R_k`` to the prefix ``R_j`` of size ``size``."""
    return np.asarray(tables)[:, :size]


def stab_iso_order_check(base, k, j, table_budget=DEFAULT_TABLE_BUDGET, seed=0):
    """Closures of ``St_k`` and ``St_j`` have equal order.

    The restriction from the larger ring to the smaller one is also checked to
    be injective, to land in the smaller closure, and to respect composition on
    sampled pairs.
    """
    hi, lo = max(k, j), min(k, j)
    rep = Report("stab-iso", base.spec, k=k)
    st_hi, _ = stabilizer_Stk(base, hi, table_budget)
    st_lo, _ = stabilizer_Stk(base, lo, table_budget)
    c_hi, c_lo = closure(st_hi, budget=table_budget), closure(st_lo, budget=table_budget)
    rep.counts.update({f"closure_St{hi}": len(c_hi), f"closure_St{lo}": len(c_lo)})
    rep.add("equal_orders", len(c_hi) == len(c_lo), {"orders": [len(c_hi), len(c_lo)]})
    size_lo = make_dual(base, lo).size
    res = restrict(c_hi.tables, size_lo)
    rep.add("restriction_injective", len(canonical(res)) == len(c_hi), None)
    rep.add("restriction_lands_in_closure", bool(c_lo.contains(res).all()), None)
    rng = np.random.default_rng(seed)
    pairs = rng.integers(0, len(c_hi), size=(50, 2))
    lhs = restrict(compose_tables(c_hi.tables[pairs[:, 0]], c_hi.tables[pairs[:, 1]]), size_lo)
    rhs = compose_tables(res[pairs[:, 0]], res[pairs[:, 1]])
    rep.add("restriction_homomorphism", bool(np.array_equal(lhs, rhs)), None)
    return rep


def prpol_dual(base, k, table_budget=DEFAULT_TABLE_BUDGET, cell_budget=DEFAULT_CELL_BUDGET):
    """All polynomial permutations of ``R_k``, found by brute force.

    Every polynomial function on ``R_k`` is a pure function plus the table of
    some ``sum f_i beta_i``; all such sums are formed and the bijective ones kept.
    """
    dual, pure = pure_dual_tables(base, k, True, table_budget, cell_budget)
    reps = function_reps(base, table_budget)
    _cells_ok(len(pure) * len(reps) ** k, dual.size, cell_budget)
    _, _, coeffs = _tail_polys(base, k, reps)
    # drop the leading x: tails are sum f_i beta_i
    tails = np.asarray(dual.sub(batch_func_tables(dual, coeffs), dual.elements()[None]))
    n = dual.size
    per = max(1, CHUNK_CELLS // (len(tails) * n))
    found = []
    for start in range(0, len(pure), per):
        tabs = np.asarray(dual.add(pure[start : start + per, None, :], tails[None])).reshape(-1, n)
        found.append(tabs[_bijective_rows(tabs)])
    return PermSet(dual, np.vstack(found))


def _conjugates_inside(group, sub, max_cells=CHUNK_CELLS):
    """First ``(g, p)`` with ``g o p o g^-1`` outside ``sub``, or ``None``."""
    G, P = group.tables, sub.tables
    n = G.shape[1]
    per = max(1, max_cells // (n * len(P)))
    for start in range(0, len(G), per):
        g = G[start : start + per]
        gp = g[:, P]                                      # g o p
        ginv = inverse_table(g)
        conj = np.take_along_axis(gp, np.broadcast_to(ginv[:, None, :], gp.shape), axis=2)
        ok = sub.contains(conj.reshape(-1, n)).reshape(len(g), len(P))
        if not ok.all():
            i, j = np.argwhere(~ok)[0]
            return {"g": G[start + i].tolist(), "p": P[j].tolist()}
    return None


def semidirect_check(base, k, table_budget=DEFAULT_TABLE_BUDGET, cell_budget=DEFAULT_CELL_BUDGET):
    """``PrPol(R_k)`` is the semidirect product of ``P_{x,k}`` and ``P_R(R_k)``."""
    if not base.commutative:
        raise NotCommutative(f"{base.spec} is not commutative")
    # the brute-force PrPol search is the largest step; refuse it before any work
    pc = pair_classes(base, table_budget)
    n_pure = len(pc.bijective_functions()) * pc.n_null
    _cells_ok(n_pure * pc.n_functions**k, base.size ** (k + 1), cell_budget)
    rep = Report("semidirect", base.spec, k=k)
    px, px_rep = build_Pxk(base, k, table_budget, cell_budget)
    pr, _, _ = build_PR(base, k, table_budget, cell_budget)
    full = prpol_dual(base, k, table_budget, cell_budget)
    n = full.ring.size
    rep.add("Pxk_subgroup", bool(px_rep.closed and px_rep.contains_identity), None)
    rep.add("PR_subgroup", is_closed(pr) and pr.has_identity(), None)
    try:
        full_gens = closure(full, budget=len(full)).generators
        full_closed = True
    except BudgetExceeded:
        full_gens, full_closed = None, False
    rep.add("PrPol_closed", full_closed, None)
    rep.add("Pxk_inside_PrPol", px.issubset(full), None)
    rep.add("PR_inside_PrPol", pr.issubset(full), None)
    # conjugating by a generating set decides normality in the group it generates
    if len(full) * len(px) * n <= cell_budget or full_gens is None:
        conjugators, rep.counts["normality_by"] = full, "all_members"
    else:
        conjugators, rep.counts["normality_by"] = PermSet(full.ring, full_gens), "generators"
    bad = _conjugates_inside(conjugators, px)
    rep.add("Pxk_normal", bad is None, bad)
    inter = int(px.contains(pr.tables).sum())
    rep.add("trivial_intersection", inter == 1, {"intersection_order": inter})
    rep.add("order_product", len(px) * len(pr) == len(full),
            {"Pxk": len(px), "PR": len(pr), "PrPol": len(full)})
    hit = np.concatenate([full.index_of(b) for b in _products(px.tables, pr.tables)])
    covers = bool((hit >= 0).all()) and len(np.unique(hit)) == len(full)
    rep.add("product_covers", covers, None)
    rep.counts.update(Pxk=len(px), PR=len(pr), PrPol=len(full), intersection=inter)
    return rep


def quotient_order_check(base, k, table_budget=DEFAULT_TABLE_BUDGET, cell_budget=DEFAULT_CELL_BUDGET):
    """Restriction to ``R`` splits ``closure(P_R(R_k))`` over its kernel ``Stb_k``."""
    rep = Report("quotient", base.spec, k=k)
    pr, clo, _ = build_PR(base, k, table_budget, cell_budget)
    st, _ = stabilizer_Stk(base, k, table_budget, cell_budget)
    n = base.size
    fixes = (clo.tables[:, :n] == np.arange(n)).all(axis=1)
    stb = PermSet(clo.ring, clo.tables[fixes])
    image = canonical(clo.tables[:, :n])
    rep.add("closure_order_factorizes", len(clo) == len(stb) * len(image),
            {"closure": len(clo), "Stb": len(stb), "image": len(image)})
    st_clo = closure(st, budget=table_budget)
    rep.add("St_inside_its_closure", st.issubset(st_clo), None)
    rep.add("St_closure_inside_Stb", st_clo.issubset(stb), None)
    psi = canonical(pr.tables[:, :n])
    rep.add("L_factorizes", len(pr) == len(psi) * len(st),
            {"L": len(pr), "Psi": len(psi), "St": len(st)})
    if _chain_c_gt_1(base):
        ring_pp = _ring_pp_closure(base, table_budget)
        same = len(image) == len(ring_pp) and bool(ring_pp.contains(image).all())
        rep.add("image_is_PrPol_closure_of_R", same, {"image": len(image), "PrPol_R": len(ring_pp)})
    else:
        rep.skip("image_is_PrPol_closure_of_R", "needs a chain ring of characteristic p^c, c > 1")
    rep.counts.update(L=len(pr), closure=len(clo), Stb=len(stb), image=len(image), Psi=len(psi),
                      St=len(st), St_closure=len(st_clo))
    return rep


def _ring_pp_closure(base, table_budget):
    reps = function_reps(base, table_budget)
    tabs = batch_func_tables(base, reps)
    bij = (np.sort(tabs, axis=1) == np.arange(base.size)).all(axis=1)
    return closure(PermSet(base, tabs[bij]), budget=table_budget)


__all__ = [
    "GroupReport", "PermSet", "build_PR", "build_Pxk", "closure", "compose_tables",
    "is_abelian", "is_closed", "prpol_dual", "quotient_order_check", "semidirect_check",
    "stab_iso_order_check", "stabilizer_Stk",
]
