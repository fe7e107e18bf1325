"""Polynomials over finite rings with right substitution.

``f = sum c_j x^j`` is evaluated at ``r`` as ``sum c_j r^j``: coefficients
multiply from the left, powers of the argument from the right.  The product
follows the same convention, ``(f g)(x) = sum a_j g(x) x^j``.

The assigned polynomial ``lambda_f(y, z) = sum_j c_j m_j(y, z)`` with
``m_j(y, z) = sum_{r=1..j} y^(r-1) z y^(j-r)`` controls the beta-coefficients
when ``f`` is evaluated on dual numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetExceeded, NotMonic, ParseError, WrongRing
from .report import Report
from .rings import DualRing, make_dual, same_ring

DEFAULT_CELL_BUDGET = 10**7


@dataclass(frozen=True)
class Poly:
    """Immutable polynomial; ``coeffs`` low degree first, no trailing zeros."""

    ring: object
    coeffs: tuple = ()

    def __post_init__(self):
        cs = [int(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.ring.check_member(cs)
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def parse(cls, ring, text):
        """From the index format ``"c0,c1,..."`` (empty string is zero)."""
        text = text.strip()
        if not text:
            return cls(ring, ())
        try:
            cs = [int(t) for t in text.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad polynomial {text!r}") from exc
        if any(c < 0 or c >= ring.size for c in cs):
            raise ParseError(f"coefficient out of range in {text!r}")
        return cls(ring, cs)

    @classmethod
    def monomial(cls, ring, j, c=None):
        c = ring.one if c is None else c
        return cls(ring, [0] * j + [c])

    @classmethod
    def x(cls, ring):
        return cls.monomial(ring, 1)

    @property
    def degree(self):
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def coeff(self, j):
        return self.coeffs[j] if j < len(self.coeffs) else 0

    def index_str(self):
        return ",".join(map(str, self.coeffs))

    def on(self, ring):
        """The same coefficients read in another ring sharing the indices.

        Pure elements of a dual ring have the same index as in the base, so
        this lifts a base polynomial to ``R_k``.
        """
        if same_ring(ring, self.ring):
            return Poly(ring, self.coeffs) if ring is not self.ring else self
        if isinstance(ring, DualRing) and _is_over(ring, self.ring):
            return Poly(ring, self.coeffs)
        raise WrongRing(f"cannot move {self.ring.spec} polynomial to {ring.spec}")

    def __add__(self, other):
        _same(self, other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ring, [self.ring.add(self.coeff(j), other.coeff(j)) for j in range(n)])

    def __neg__(self):
        return Poly(self.ring, [self.ring.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return poly_mul(self, other)

    def __call__(self, a):
        return eval_right(self, a)

    def __repr__(self):
        return f"Poly({self.ring.spec}, [{self.index_str()}])"


def _is_over(dual, base):
    r = dual
    while isinstance(r, DualRing):
        if same_ring(r.base, base):
            return True
        r = r.base
    return False


def _same(f, g):
    if not same_ring(f.ring, g.ring):
        raise WrongRing(f"{f.ring.spec} vs {g.ring.spec}")


# ---------------------------------------------------------------------------
# evaluation and arithmetic


def eval_right(f, a):
    """``sum c_j a^j`` by Horner's rule (vectorized over ``a``)."""
    ring = f.ring
    ring.check_member(a)
    a = np.asarray(a, dtype=np.int64)
    if f.is_zero():
        return _scalar_or(np.zeros_like(a))
    acc = np.full(a.shape, f.coeffs[-1], dtype=np.int64)
    for c in reversed(f.coeffs[:-1]):
        acc = np.asarray(ring.add(ring.mul(acc, a), c))
    return _scalar_or(acc)


def _scalar_or(x):
    return int(x) if np.ndim(x) == 0 else x


def poly_mul(f, g):
    """Product with ``x^(i+j)`` collecting ``a_j b_i`` (``f = sum a_j x^j``)."""
    _same(f, g)
    ring = f.ring
    if f.is_zero() or g.is_zero():
        return Poly(ring, ())
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for j, a in enumerate(f.coeffs):
        for i, b in enumerate(g.coeffs):
            out[i + j] = ring.add(out[i + j], ring.mul(a, b))
    return Poly(ring, out)


def formal_derivative(f):
    ring = f.ring
    return Poly(ring, [ring.scalar(j, c) for j, c in enumerate(f.coeffs)][1:])


def lambda_eval(f, a, b):
    """``lambda_f(a, b)`` via ``m_1 = b``, ``m_(j+1) = a m_j + b a^j``."""
    ring = f.ring
    ring.check_member(a, b)
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    acc = np.zeros(a.shape, dtype=np.int64)
    m, apow = b, a
    for j, c in enumerate(f.coeffs[1:], start=1):
        if c:
            acc = np.asarray(ring.add(acc, ring.mul(c, m)))
        if j < f.degree:
            m = np.asarray(ring.add(ring.mul(a, m), ring.mul(b, apow)))
            apow = np.asarray(ring.mul(apow, a))
    return _scalar_or(acc)


def lambda_eval_sum(f, a, b):
    """The defining double sum for ``lambda_f(a, b)`` (reference implementation)."""
    ring = f.ring
    total = 0
    for j, c in enumerate(f.coeffs):
        for r in range(1, j + 1):
            term = ring.mul(ring.mul(ring.power(a, r - 1), b), ring.power(a, j - r))
            total = ring.add(total, ring.mul(c, term))
    return total


def check_cells(ring, count, budget=DEFAULT_CELL_BUDGET):
    if count > budget:
        raise BudgetExceeded(f"{count} cells over {ring.spec} exceeds budget {budget}")


def lambda_table(f, budget=DEFAULT_CELL_BUDGET):
    """``size x size`` array with cell ``(a, b) = lambda_f(a, b)``."""
    ring = f.ring
    check_cells(ring, ring.size**2, budget)
    els = ring.elements()
    return lambda_eval(f, els[:, None], els[None, :])


def right_divmod(f, g):
    """``f = q g + r`` with ``deg r < deg g``; ``g`` must be monic."""
    _same(f, g)
    ring = f.ring
    if g.is_zero() or g.coeffs[-1] != ring.one:
        raise NotMonic(f"{g!r} is not monic")
    m = g.degree
    rem = list(f.coeffs)
    quo = [0] * max(0, len(rem) - m)
    for n in range(len(rem) - 1, m - 1, -1):
        c = rem[n]
        if c == 0:
            continue
        quo[n - m] = c
        for i, b in enumerate(g.coeffs):
            rem[i + n - m] = ring.sub(rem[i + n - m], ring.mul(c, b))
    return Poly(ring, quo), Poly(ring, rem[:m])


# ---------------------------------------------------------------------------
# monic central null polynomials


def _power_periods(ring):
    """Arrays ``(n2, period)`` per element: least ``n2`` with ``r^(n2+pi) = r^n2``."""
    els = ring.elements()
    history = [els]
    n2 = np.zeros(ring.size, dtype=np.int64)
    period = np.zeros(ring.size, dtype=np.int64)
    todo = np.ones(ring.size, dtype=bool)
    cur = els
    j = 1
    while todo.any():
        cur = np.asarray(ring.mul(cur, els))
        j += 1
        for i, prev in enumerate(history, start=1):
            hit = todo & (prev == cur)
            n2[hit] = i
            period[hit] = j - i
            todo &= ~hit
        history.append(cur)
    return n2, period


def power_preperiod(ring, r):
    """``(n2, pi)``: minimal with ``r^(n2+pi) = r^n2``, ``n2 >= 1``."""
    ring.check_member(r)
    seen = {}
    x, j = r, 1
    while x not in seen:
        seen[x] = j
        x = ring.mul(x, r)
        j += 1
    return seen[x], j - seen[x]


@lru_cache(maxsize=None)
def null_exponents(ring):
    """``(M, L)``: largest preperiod and lcm of all periods."""
    n2, period = _power_periods(ring)
    return int(n2.max()), math.lcm(*period.tolist())


def central_null_from(ring, M, L):
    coeffs = [0] * (M + L + 1)
    coeffs[M] = ring.neg(ring.one)
    coeffs[M + L] = ring.add(coeffs[M + L], ring.one)
    return Poly(ring, coeffs)


def monic_central_null(ring):
    """``x^(M+L) - x^M`` with ``M``, ``L`` from the power sequences of all elements."""
    return central_null_from(ring, *null_exponents(ring))


def null_degree(ring):
    M, L = null_exponents(ring)
    return M + L


@lru_cache(maxsize=None)
def dual_null_degree(base, k=1):
    """Degree of the monic central null polynomial of ``base[beta_1..beta_k]``."""
    return null_degree(make_dual(base, k))


# ---------------------------------------------------------------------------
# dual numbers


def m_power(ring, j, a, b):
    """``m_j(a, b)``, the beta coefficient of ``(a + b beta)^j``."""
    return lambda_eval(Poly.monomial(ring, j), a, b)


def assemble(components, dual):
    """Polynomial over ``dual`` from components ``(f_0, .., f_k)`` over its base."""
    base, k = dual.base, dual.k
    if len(components) != k + 1:
        raise WrongRing(f"expected {k + 1} components, got {len(components)}")
    for f in components:
        if not same_ring(f.ring, base):
            raise WrongRing("component not over the base ring")
    n = max(len(f.coeffs) for f in components)
    comps = np.array([[f.coeff(j) for f in components] for j in range(n)], dtype=np.int64)
    return Poly(dual, dual.compose(comps).tolist() if n else ())


def split(f):
    """Inverse of :func:`assemble`: components over the base ring."""
    dual = f.ring
    if not isinstance(dual, DualRing):
        raise WrongRing(f"{dual.spec} is not a dual ring")
    if f.is_zero():
        return [Poly(dual.base, ()) for _ in range(dual.k + 1)]
    comps = dual.decompose(np.array(f.coeffs))
    return [Poly(dual.base, comps[:, i].tolist()) for i in range(dual.k + 1)]


def dual_eval_via_lemma(components, a, bs, dual=None):
    """``f_0(a) + sum (lambda_f0(a, b_i) + f_i(a)) beta_i`` as a dual index."""
    f0 = components[0]
    base = f0.ring
    k = len(components) - 1
    if len(bs) != k:
        raise WrongRing(f"expected {k} beta coefficients, got {len(bs)}")
    dual = make_dual(base, k) if dual is None else dual
    if not same_ring(dual.base, base) or dual.k != k:
        raise WrongRing("dual ring does not match components")
    parts = [f0(a)]
    for fi, bi in zip(components[1:], bs):
        if not same_ring(fi.ring, base):
            raise WrongRing("component not over the base ring")
        parts.append(base.add(lambda_eval(f0, a, bi), fi(a)))
    return dual.compose(np.stack(np.broadcast_arrays(*parts), axis=-1))


def canonical_reduce(components, base=None):
    """Reduce ``f_0`` mod the monic null of ``R_k`` and ``f_i`` mod that of ``R``.

    The induced function on ``R_k`` is unchanged.
    """
    base = components[0].ring if base is None else base
    k = len(components) - 1
    h1 = central_null_from(base, *null_exponents(make_dual(base, k)))
    h2 = monic_central_null(base)
    out = [right_divmod(components[0], h1)[1]]
    out += [right_divmod(fi, h2)[1] for fi in components[1:]]
    return out


# ---------------------------------------------------------------------------
# batch helpers for enumeration


@lru_cache(maxsize=None)
def power_table(ring, d):
    """``(d, size)`` array with row ``j`` holding ``a^j``."""
    els = ring.elements()
    rows = [np.full(ring.size, ring.one, dtype=np.int64)]
    for _ in range(1, d):
        rows.append(np.asarray(ring.mul(rows[-1], els)))
    out = np.array(rows[:d]).reshape(d, ring.size)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def m_table(ring, d):
    """``(d, size, size)`` array with ``[j, a, b] = m_j(a, b)`` (``m_0 = 0``)."""
    els = ring.elements()
    a, b = np.meshgrid(els, els, indexing="ij")
    out = np.zeros((d, ring.size, ring.size), dtype=np.int64)
    if d > 1:
        m = b
        pw = power_table(ring, d)
        out[1] = m
        for j in range(1, d - 1):
            m = np.asarray(ring.add(ring.mul(a, m), ring.mul(b, pw[j][:, None])))
            out[j + 1] = m
    out.setflags(write=False)
    return out


def batch_func_tables(ring, coeffs):
    """Function tables for a ``(B, d)`` coefficient matrix: shape ``(B, size)``."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    B, d = coeffs.shape
    pw = power_table(ring, max(d, 1))
    out = np.zeros((B, ring.size), dtype=np.int64)
    for j in range(d):
        out = np.asarray(ring.add(out, ring.mul(coeffs[:, j, None], pw[j][None, :])))
    return out


def batch_lambda_tables(ring, coeffs):
    """Lambda tables for a ``(B, d)`` coefficient matrix: shape ``(B, size, size)``."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    B, d = coeffs.shape
    mt = m_table(ring, max(d, 1))
    out = np.zeros((B, ring.size, ring.size), dtype=np.int64)
    for j in range(1, d):
        out = np.asarray(ring.add(out, ring.mul(coeffs[:, j, None, None], mt[j][None])))
    return out


def batch_derivatives(ring, coeffs):
    """Coefficient matrix of formal derivatives, same width as the input."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    d = coeffs.shape[1]
    out = np.zeros_like(coeffs)
    for j in range(1, d):
        out[:, j - 1] = np.asarray(ring.scalar(j, coeffs[:, j]))
    return out


def all_coefficient_tuples(ring, d):
    """Every coefficient vector of length ``d`` in index order, shape ``(size**d, d)``."""
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((ring.size,) * d).reshape(d, -1).T
    # least significant = constant term, matching mixed radix reading
    return np.ascontiguousarray(grids[:, ::-1])


# ---------------------------------------------------------------------------
# the evaluation lemma as a report


def eval_lemma_check(base, k=1, degree=4, draws=500, seed=0, scalar_draws=20, exhaustive_limit=4096):
    """Direct evaluation on ``R_k`` against ``f_0(a) + sum (lambda_f0(a, b_i) + f_i(a)) beta_i``.

    Every polynomial is compared at every point of ``R_k``.  Polynomials are
    all component tuples of degree ``<= degree`` when there are at most
    ``max(draws, exhaustive_limit)`` of them, else ``draws`` random ones.
    """
    dual = make_dual(base, k)
    s, width = base.size, degree + 1
    total = s ** (width * (k + 1))
    if total <= max(draws, exhaustive_limit):
        mode = "exhaustive"
        flat = all_coefficient_tuples(base, width * (k + 1))
    else:
        mode = "sampled"
        flat = np.random.default_rng(seed).integers(0, s, size=(draws, width * (k + 1)))
    comps = flat.reshape(-1, width, k + 1)
    check_cells(dual, len(comps) * max(dual.size, s * s))
    rep = Report("eval-lemma", base.spec, k=k, mode=mode, seed=seed if mode == "sampled" else None)

    direct = batch_func_tables(dual, np.asarray(dual.compose(comps)).reshape(len(comps), width))
    pts = dual.decompose(dual.elements())
    a = pts[:, 0]
    f0_tab = batch_func_tables(base, comps[:, :, 0])
    lam = batch_lambda_tables(base, comps[:, :, 0])
    want = np.zeros(direct.shape + (k + 1,), dtype=np.int64)
    want[..., 0] = f0_tab[:, a]
    for i in range(1, k + 1):
        fi_tab = batch_func_tables(base, comps[:, :, i])
        want[..., i] = base.add(lam[:, a, pts[:, i]], fi_tab[:, a])
    lemma = np.asarray(dual.compose(want))
    diff = np.argwhere(lemma != direct)
    bad = None
    if len(diff):
        p, x = diff[0]
        bad = {"components": comps[p].T.tolist(), "point": int(x)}
    rep.add("lemma_matches_direct", bad is None, bad)

    # the scalar entry points on a few polynomials and up to 256 points
    bad = None
    xs = dual.elements()
    if len(xs) > 256:
        xs = np.sort(np.random.default_rng(seed).choice(len(xs), 256, replace=False))
    for p in range(min(scalar_draws, len(comps))):
        parts = [Poly(base, comps[p, :, i].tolist()) for i in range(k + 1)]
        f = assemble(parts, dual)
        got = np.asarray(dual_eval_via_lemma(parts, pts[xs, 0], [pts[xs, i] for i in range(1, k + 1)], dual))
        ref = np.array([eval_right(f, int(x)) for x in xs])
        if not np.array_equal(got, ref):
            bad = {"components": comps[p].T.tolist()}
            break
    rep.add("scalar_lemma_matches_direct", bad is None, bad)

    d = 8
    pw_dual = dual.decompose(power_table(dual, d))
    pw, mt = power_table(base, d), m_table(base, d)
    ok = np.array_equal(pw_dual[..., 0], pw[:, a])
    for i in range(1, k + 1):
        ok = ok and np.array_equal(pw_dual[..., i], mt[:, a, pts[:, i]])
    rep.add("power_law", bool(ok), None)

    rng = np.random.default_rng(seed + 1)
    bad = None
    for p in range(min(scalar_draws, len(comps))):
        f = Poly(base, comps[p, :, 0].tolist())
        for ya, yb in rng.integers(0, s, size=(50, 2)):
            if lambda_eval(f, int(ya), int(yb)) != lambda_eval_sum(f, int(ya), int(yb)):
                bad = {"f": f.index_str(), "a": int(ya), "b": int(yb)}
                break
        if bad:
            break
    rep.add("lambda_recurrence_matches_double_sum", bad is None, bad)
    rep.add("lambda_zero_column", bool((lam[:, :, 0] == 0).all()), None)
    bb = rng.integers(0, s, size=(2, 64))
    lhs = lam[:, :, base.add(bb[0], bb[1])]
    rhs = base.add(lam[:, :, bb[0]], lam[:, :, bb[1]])
    rep.add("lambda_additive_in_b", bool(np.array_equal(lhs, rhs)), None)

    h = monic_central_null(base)
    sq = poly_mul(h, h)
    rep.add("square_of_central_null_is_null", bool((batch_func_tables(dual, [list(sq.coeffs)]) == 0).all()),
            {"degree": sq.degree})
    rep.counts.update(polynomials=len(comps), points=dual.size)
    return rep
