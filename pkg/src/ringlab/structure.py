"""Brute-force structural analysis of finite rings.

Units, center, Jacobson radical, local/chain structure, additive orders,
sum-of-units reachability, semi-commutativity and the ring axioms.  All
routines work directly from the ring's add/mul oracles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetExceeded, NotAUnit, WrongRing
from .report import Report
from .rings import MATERIALIZE_LIMIT, DualRing, Ring, make_dual, same_ring

EXHAUSTIVE_TRIPLES = 10**8
DEFAULT_SAMPLES = 10**5


def _rows(n, width):
    """Chunk size so that a chunk of rows times ``width`` stays modest."""
    return max(1, 2**21 // max(1, width))


def _first_true(mask):
    idx = np.argwhere(mask)
    return None if len(idx) == 0 else tuple(int(i) for i in idx[0])


# ---------------------------------------------------------------------------
# axioms


class _Tables:
    """Addition and multiplication of a small ring read from full tables."""

    def __init__(self, ring):
        self.A, self.M = ring.table("add"), ring.table("mul")
        self.N = np.asarray(ring.neg(ring.elements()))
        self.zero, self.one = ring.zero, ring.one

    def add(self, a, b):
        return self.A[a, b]

    def mul(self, a, b):
        return self.M[a, b]

    def neg(self, a):
        return self.N[a]


def _axiom_checks(ring, a, b, c):
    """Boolean masks (True = holds) for each axiom on broadcast triples."""
    add, mul = ring.add, ring.mul
    z, one = ring.zero, ring.one
    a, b, c = np.broadcast_arrays(a, b, c)
    return {
        "add_associative": add(add(a, b), c) == add(a, add(b, c)),
        "add_commutative": add(a, b) == add(b, a),
        "add_identity": (add(a, z) == a) & (add(z, a) == a),
        "add_inverse": add(a, ring.neg(a)) == z,
        "mul_associative": mul(mul(a, b), c) == mul(a, mul(b, c)),
        "mul_identity": (mul(a, one) == a) & (mul(one, a) == a),
        "left_distributive": mul(a, add(b, c)) == add(mul(a, b), mul(a, c)),
        "right_distributive": mul(add(a, b), c) == add(mul(a, c), mul(b, c)),
    }


def validate_axioms(ring, mode="exhaustive", n=DEFAULT_SAMPLES, seed=0):
    """Check the ring axioms on all triples, or on ``n`` random triples.

    Exhaustive mode quietly degrades to sampled mode above 10**8 triples; the
    report records what actually ran.
    """
    if mode == "exhaustive" and ring.size**3 > EXHAUSTIVE_TRIPLES:
        mode = "sampled"
    rep = Report("axioms", ring.spec, mode=mode, seed=seed if mode == "sampled" else None)
    first = {}
    if mode == "exhaustive":
        els = ring.elements()
        # the tables are produced by the ring's own operations, so checking
        # them checks the operations
        ops = _Tables(ring) if ring.size <= MATERIALIZE_LIMIT else ring
        step = _rows(ring.size, ring.size**2)
        for start in range(0, ring.size, step):
            a = els[start : start + step, None, None]
            masks = _axiom_checks(ops, a, els[None, :, None], els[None, None, :])
            for name, ok in masks.items():
                if name not in first and not ok.all():
                    i, j, l = _first_true(~ok)
                    first[name] = {"a": start + i, "b": j, "c": l}
        rep.counts["triples"] = ring.size**3
    else:
        rng = np.random.default_rng(seed)
        trip = rng.integers(0, ring.size, size=(n, 3))
        masks = _axiom_checks(ring, trip[:, 0], trip[:, 1], trip[:, 2])
        for name, ok in masks.items():
            if not ok.all():
                i = _first_true(~ok)[0]
                first[name] = dict(zip("abc", trip[i].tolist()))
        rep.counts["triples"] = n
    for name in ("add_associative", "add_commutative", "add_identity", "add_inverse",
                 "mul_associative", "mul_identity", "left_distributive", "right_distributive"):
        rep.add(name, name not in first, first.get(name))
    rep.add("one_ne_zero", ring.one != ring.zero, {"one": ring.one})
    rep.counts["commutative"] = ring.commutative
    return rep


# ---------------------------------------------------------------------------
# units, center, radical


@lru_cache(maxsize=None)
def _unit_data(ring):
    els = ring.elements()
    inv = np.full(ring.size, -1, dtype=np.int64)
    step = _rows(ring.size, ring.size)
    for start in range(0, ring.size, step):
        a = els[start : start + step]
        right = np.asarray(ring.mul(a[:, None], els[None, :])) == ring.one
        left = np.asarray(ring.mul(els[None, :], a[:, None])) == ring.one
        both = right & left
        has = both.any(axis=1)
        inv[start : start + step] = np.where(has, both.argmax(axis=1), -1)
    return inv


def unit_mask(ring):
    return _unit_data(ring) >= 0


def unit_set(ring):
    """Sorted indices of two-sided units."""
    return np.flatnonzero(unit_mask(ring))


def inverse(ring, a):
    ring.check_member(a)
    b = int(_unit_data(ring)[a])
    if b < 0:
        raise NotAUnit(f"{a} is not a unit of {ring.spec}")
    return b


@lru_cache(maxsize=None)
def center(ring):
    els = ring.elements()
    keep = np.ones(ring.size, dtype=bool)
    step = _rows(ring.size, ring.size)
    for start in range(0, ring.size, step):
        c = els[start : start + step, None]
        keep[start : start + step] = (ring.mul(c, els[None, :]) == ring.mul(els[None, :], c)).all(axis=1)
    return np.flatnonzero(keep)


TWO_SIDED_RADICAL_LIMIT = 1024


@lru_cache(maxsize=None)
def jacobson_radical(ring, method="auto"):
    """``{x : 1 - a x b is a unit for all a, b}``.

    For each ``x`` the set ``{a x b}`` is built as ``{s b : s in R x}`` after
    de-duplicating ``R x``, which keeps the cost far below ``size**3``.  Above
    ``TWO_SIDED_RADICAL_LIMIT`` elements (or with ``method="one-sided"``) the
    equivalent test ``1 - x r`` a unit for all ``r`` is used instead.
    """
    if method == "auto":
        method = "two-sided" if ring.size <= TWO_SIDED_RADICAL_LIMIT else "one-sided"
    units = unit_mask(ring)
    if method == "one-sided":
        els = ring.elements()
        keep = np.ones(ring.size, dtype=bool)
        step = _rows(ring.size, ring.size)
        for start in range(0, ring.size, step):
            x = els[start : start + step, None]
            keep[start : start + step] = units[ring.sub(ring.one, ring.mul(x, els[None, :]))].all(axis=1)
        return np.flatnonzero(keep)
    if method != "two-sided":
        raise ValueError(f"unknown method {method!r}")
    els = ring.elements()
    keep = np.zeros(ring.size, dtype=bool)
    for x in range(ring.size):
        left = np.unique(ring.mul(els, x))
        prods = np.unique(ring.mul(left[:, None], els[None, :]))
        keep[x] = units[ring.sub(ring.one, prods)].all()
    return np.flatnonzero(keep)


# ---------------------------------------------------------------------------
# additive closures and ideal powers


def additive_closure(ring, gens):
    """Smallest additive subgroup containing ``gens`` (sorted indices)."""
    gens = np.unique(np.asarray(gens, dtype=np.int64))
    seen = np.zeros(ring.size, dtype=bool)
    seen[0] = True
    frontier = np.array([0], dtype=np.int64)
    while len(frontier):
        new = np.unique(ring.add(frontier[:, None], gens[None, :]))
        new = new[~seen[new]]
        seen[new] = True
        frontier = new
    return np.flatnonzero(seen)


def ideal_product(ring, left, right):
    """Additive span of all products ``x y`` with ``x`` in left, ``y`` in right."""
    prods = np.unique(ring.mul(np.asarray(left)[:, None], np.asarray(right)[None, :]))
    return additive_closure(ring, prods)


def nilpotency(ring, ideal):
    """Least ``n`` with ``ideal**n = 0``, or None if the powers stabilize above 0."""
    ideal = np.asarray(ideal)
    power, n = ideal, 1
    while not (len(power) == 1 and power[0] == 0):
        nxt = ideal_product(ring, power, ideal)
        if len(nxt) == len(power):
            return None
        power, n = nxt, n + 1
    return n


def sum_of_units_reachable(ring):
    """True iff sums of units exhaust the ring."""
    units = unit_set(ring)
    seen = np.zeros(ring.size, dtype=bool)
    seen[units] = True
    frontier = units
    while len(frontier):
        new = np.unique(ring.add(frontier[:, None], units[None, :]))
        new = new[~seen[new]]
        seen[new] = True
        frontier = new
    return bool(seen.all())


# ---------------------------------------------------------------------------
# local and chain structure


@dataclass
class ChainInfo:
    is_local: bool
    is_chain: bool = False
    max_ideal: np.ndarray | None = None
    t: int | None = None
    N: int | None = None
    e: int | None = None
    q: int | None = None
    p: int | None = None
    powers: tuple = ()

    def level(self, a):
        """Largest ``i`` with ``a`` in ``M**i`` (``N`` for zero)."""
        for i in range(len(self.powers) - 1, -1, -1):
            if a in self.powers[i]:
                return i
        raise WrongRing(a)

    def to_dict(self):
        out = {"local": self.is_local, "chain": self.is_chain}
        if self.is_local:
            out.update(max_ideal_size=len(self.max_ideal), q=self.q, p=self.p)
        if self.is_chain:
            out.update(t=self.t, N=self.N, e=self.e)
        return out


def _prime_of(q):
    for p in range(2, q + 1):
        if q % p == 0:
            return p
    return None


@lru_cache(maxsize=None)
def chain_analysis(ring):
    units = unit_mask(ring)
    M = np.flatnonzero(~units)
    els = ring.elements()
    sums = ring.add(M[:, None], M[None, :])
    absorb_l = ring.mul(els[:, None], M[None, :])
    absorb_r = ring.mul(M[:, None], els[None, :])
    in_m = ~units
    if not (in_m[sums].all() and in_m[absorb_l].all() and in_m[absorb_r].all()):
        return ChainInfo(is_local=False)
    q = ring.size // len(M)
    p = _prime_of(q)
    info = ChainInfo(is_local=True, max_ideal=M, q=q, p=p)
    m_set = set(M.tolist())
    t = None
    for cand in M:
        right = set(np.unique(ring.mul(cand, els)).tolist())
        left = set(np.unique(ring.mul(els, cand)).tolist())
        if right == m_set and left == m_set:
            t = int(cand)
            break
    if t is None:
        return info
    # M^i = t^i R for a chain ring
    powers = [frozenset(els.tolist())]
    ti = ring.one
    while True:
        ti = ring.mul(ti, t)
        powers.append(frozenset(np.unique(ring.mul(ti, els)).tolist()))
        if powers[-1] == {0}:
            break
    info.is_chain = True
    info.t = t
    info.N = len(powers) - 1
    info.powers = tuple(powers)
    p1 = ring.scalar(p)
    if p1 != 0:
        info.e = info.level(p1)
    return info


@dataclass
class AdditiveOrder:
    order: int
    formula: int | None = None
    agree: bool | None = None


def additive_order(ring, a):
    """Least ``n >= 1`` with ``n a = 0``, cross-checked on chain rings.

    On a chain ring with ``a`` in ``M**i`` but not ``M**(i+1)`` the order is
    ``p**ceil((N - i) / e)``; the formula needs ``e``, so it is skipped in
    characteristic ``p``.
    """
    ring.check_member(a)
    digits = ring.digits(a)
    order = 1
    for d, m in zip(digits.tolist(), ring.moduli.tolist()):
        order = math.lcm(order, m // math.gcd(d, m))
    info = chain_analysis(ring)
    if not info.is_chain or info.e is None:
        return AdditiveOrder(order)
    i = info.level(a)
    formula = info.p ** math.ceil((info.N - i) / info.e)
    return AdditiveOrder(order, formula, formula == order)


def semicommutativity_check(ring, mode="exhaustive", n=DEFAULT_SAMPLES, seed=0):
    """``ab = 0`` implies ``a r b = 0`` for every ``r``."""
    if mode == "exhaustive" and ring.size**3 > EXHAUSTIVE_TRIPLES:
        mode = "sampled"
    rep = Report("semicommutativity", ring.spec, mode=mode, seed=seed if mode == "sampled" else None)
    els = ring.elements()
    witness = None
    if mode == "exhaustive":
        table = ring.table("mul")
        za, zb = np.nonzero(table == 0)
        rep.counts["zero_pairs"] = len(za)
        step = _rows(len(za), ring.size)
        for start in range(0, len(za), step):
            a, b = za[start : start + step, None], zb[start : start + step, None]
            bad = ring.mul(ring.mul(a, els[None, :]), b) != 0
            hit = _first_true(bad)
            if hit is not None:
                i, r = hit
                witness = {"a": int(a[i, 0]), "r": r, "b": int(b[i, 0])}
                break
    else:
        rng = np.random.default_rng(seed)
        trip = rng.integers(0, ring.size, size=(n, 3))
        a, r, b = trip.T
        bad = (ring.mul(a, b) == 0) & (ring.mul(ring.mul(a, r), b) != 0)
        hit = _first_true(bad)
        if hit is not None:
            witness = dict(zip(("a", "r", "b"), trip[hit[0]].tolist()))
    rep.add("semicommutative", witness is None, witness)
    return rep


# ---------------------------------------------------------------------------
# dual components


def dual_compose(base, k, a0, coeffs, dual=None):
    """Index of ``a0 + sum coeffs[i] beta_(i+1)`` in ``base[beta_1..beta_k]``."""
    coeffs = list(coeffs)
    if len(coeffs) != k:
        raise WrongRing(f"expected {k} beta coefficients, got {len(coeffs)}")
    if dual is not None and (not isinstance(dual, DualRing) or not same_ring(dual.base, base) or dual.k != k):
        raise WrongRing("dual ring does not match base and k")
    comps = [a0] + coeffs
    base.check_member(comps)
    return sum(int(c) * base.size**i for i, c in enumerate(comps))


def dual_decompose(dual, x):
    if not isinstance(dual, DualRing):
        raise WrongRing(f"{getattr(dual, 'spec', dual)} is not a dual ring")
    dual.check_member(x)
    comps = dual.decompose(x).tolist()
    return comps[0], comps[1:]


def dual_structure_check(base, k=1, budget=10**8):
    """Products, units, inverses, radical and center of ``R_k`` against ``R``.

    Every statement is checked elementwise over the whole of ``R_k``; the
    product law over all pairs when ``|R_k|**2`` is within ``budget``.
    """
    dual = make_dual(base, k)
    rep = Report("dual-structure", base.spec, k=k)
    n, s = dual.size, base.size
    els = dual.elements()
    comps = dual.decompose(els)
    a0 = comps[:, 0]

    if n * n <= budget:
        step = max(1, (1 << 22) // n)
        bad = None
        for start in range(0, n, step):
            x, y = els[start : start + step, None], els[None, :]
            cx, cy = comps[start : start + step, None, :], comps[None, :, :]
            want = np.empty(np.broadcast_shapes(x.shape, y.shape) + (k + 1,), dtype=np.int64)
            want[..., 0] = base.mul(cx[..., 0], cy[..., 0])
            for i in range(1, k + 1):
                want[..., i] = base.add(base.mul(cx[..., 0], cy[..., i]), base.mul(cx[..., i], cy[..., 0]))
            got = dual.decompose(dual.mul(x, y))
            diff = (got != want).any(axis=-1)
            if diff.any():
                i, j = np.argwhere(diff)[0]
                bad = {"a": int(start + i), "b": int(j)}
                break
        rep.add("product_law", bad is None, bad)
    else:
        rep.skip("product_law", f"{n * n} pairs exceed budget {budget}")

    betas = [base.one * s**i for i in range(1, k + 1)]
    central = all((dual.mul(b, els) == dual.mul(els, b)).all() for b in betas)
    rep.add("beta_central", central, None)
    square_zero = all(dual.mul(b, c) == 0 for b in betas for c in betas)
    rep.add("beta_products_zero", bool(square_zero), None)

    units_dual = unit_mask(dual)
    units_base = unit_mask(base)
    mism = np.flatnonzero(units_dual != units_base[a0])
    rep.add("unit_iff_a0_unit", len(mism) == 0, {"x": int(mism[0])} if len(mism) else None)

    # (a0 + sum a_i b_i)^-1 = a0^-1 - sum a0^-1 a_i a0^-1 b_i
    inv_base = _unit_data(base)
    inv_dual = _unit_data(dual)
    ux = np.flatnonzero(units_dual)
    uc = comps[ux]
    ai = inv_base[uc[:, 0]]
    formula = np.zeros_like(uc)
    formula[:, 0] = ai
    for i in range(1, k + 1):
        formula[:, i] = base.neg(base.mul(base.mul(ai, uc[:, i]), ai))
    formula = np.asarray(dual.compose(formula)).reshape(-1)
    bad = np.flatnonzero(formula != inv_dual[ux])
    rep.add("inverse_formula", len(bad) == 0, {"x": int(ux[bad[0]])} if len(bad) else None)

    J_base = np.zeros(s, dtype=bool)
    J_base[jacobson_radical(base)] = True
    J_dual = jacobson_radical(dual)
    want = np.flatnonzero(J_base[a0])
    rep.add("radical_elementwise", np.array_equal(J_dual, want),
            None if np.array_equal(J_dual, want) else {"computed": len(J_dual), "expected": len(want)})
    n_base = nilpotency(base, jacobson_radical(base))
    n_dual = nilpotency(dual, J_dual)
    rep.add("radical_nilpotency_plus_one", n_base is not None and n_dual == n_base + 1,
            {"base": n_base, "dual": n_dual})

    C = np.zeros(s, dtype=bool)
    C[center(base)] = True
    want = np.flatnonzero(C[comps].all(axis=1))
    got = center(dual)
    rep.add("center_elementwise", np.array_equal(got, want),
            None if np.array_equal(got, want) else {"computed": len(got), "expected": len(want)})

    sb, sd = sum_of_units_reachable(base), sum_of_units_reachable(dual)
    rep.add("sum_of_units_matches", sb == sd, {"base": sb, "dual": sd})
    rep.counts.update(size=n, units=int(units_dual.sum()), radical=len(J_dual), center=len(got),
                      radical_nilpotency=n_dual, sum_of_units=sd)
    return rep


def require_budget(count, budget, what):
    if count > budget:
        raise BudgetExceeded(f"{what}: {count} exceeds budget {budget}")


__all__ = [
    "AdditiveOrder", "ChainInfo", "additive_closure", "additive_order", "center",
    "chain_analysis", "dual_compose", "dual_structure_check", "dual_decompose", "ideal_product", "inverse",
    "jacobson_radical", "nilpotency", "semicommutativity_check", "sum_of_units_reachable",
    "unit_mask", "unit_set", "validate_axioms", "Ring",
]
