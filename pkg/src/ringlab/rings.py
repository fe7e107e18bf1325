"""Finite rings presented as indexed structures.

Every element is an integer index ``0 .. size-1``.  Each constructor fixes a
bit-exact encoding, and in all of them the index is a mixed-radix number whose
digits add independently (digit ``i`` lives in ``Z/moduli[i]``, least
significant first).  Addition is therefore uniform across ring kinds; only
multiplication is constructor specific.

Ring specs::

    SPEC := "zn:"N | "gf:"p":"w[":"MOD] | "gf:"q | "mat:"n":"SPEC
          | "ut:"n":"SPEC | "prod:"SPEC"+"SPEC | "dual:"k":"SPEC
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import BudgetExceeded, NotIrreducible, ParseError, WrongRing

DEFAULT_SIZE_BUDGET = 65536
# non-dual rings up to this size get add/mul tables
MATERIALIZE_LIMIT = 1024
# dual rings may be forced to tables up to this size
DUAL_MATERIALIZE_LIMIT = 4096


def _as_result(x):
    x = np.asarray(x)
    return int(x) if x.ndim == 0 else x


class Ring:
    """A finite ring with identity on the indices ``0 .. size-1``.

    ``add``, ``neg``, ``sub`` and ``mul`` accept Python ints or integer numpy
    arrays (broadcasting like ufuncs) and return the same kind.  Instances are
    immutable after construction.
    """

    def __init__(self, spec, moduli, mul_fn, one, *, kind, materialize, parts=()):
        self.spec = spec
        self.kind = kind
        self.parts = tuple(parts)
        self.moduli = np.array(moduli, dtype=np.int64)
        self.size = int(np.prod(self.moduli))
        self._weights = np.concatenate(([1], np.cumprod(self.moduli)[:-1])).astype(np.int64)
        self._mul_fn = mul_fn
        self.zero = 0
        self.one = int(one)
        self._add_table = self._mul_table = None
        # characteristic-2 digits: addition is bitwise exclusive or of indices
        self._xor = bool((self.moduli == 2).all())
        if materialize:
            cached = _TABLE_CACHE.load(spec, self.size) if _TABLE_CACHE else None
            if cached is None:
                a, b = np.meshgrid(np.arange(self.size), np.arange(self.size), indexing="ij")
                self._add_table = self._digit_add(a, b).astype(np.int64)
                self._mul_table = np.asarray(mul_fn(a, b), dtype=np.int64)
                if _TABLE_CACHE:
                    _TABLE_CACHE.store(spec, self._add_table, self._mul_table)
            else:
                self._add_table, self._mul_table = cached
        self._neg_table = self._digit_neg(np.arange(self.size))

    def __repr__(self):
        return f"Ring({self.spec!r}, size={self.size})"

    @property
    def storage_mode(self):
        return "materialized-tables" if self._mul_table is not None else "structural"

    # -- digits -----------------------------------------------------------
    def digits(self, x):
        """Additive coordinates of ``x``: shape ``x.shape + (len(moduli),)``."""
        x = np.asarray(x, dtype=np.int64)
        return (x[..., None] // self._weights) % self.moduli

    def from_digits(self, d):
        d = np.asarray(d, dtype=np.int64) % self.moduli
        return _as_result((d * self._weights).sum(axis=-1))

    def _digit_add(self, a, b):
        d = (self.digits(a) + self.digits(b)) % self.moduli
        return (d * self._weights).sum(axis=-1)

    def _digit_neg(self, a):
        d = (-self.digits(a)) % self.moduli
        return (d * self._weights).sum(axis=-1)

    # -- arithmetic -------------------------------------------------------
    def add(self, a, b):
        if self._add_table is not None:
            return _as_result(self._add_table[a, b])
        if self._xor:
            return _as_result(np.bitwise_xor(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)))
        return _as_result(self._digit_add(a, b))

    def neg(self, a):
        return _as_result(self._neg_table[a])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._mul_table is not None:
            return _as_result(self._mul_table[a, b])
        return _as_result(self._mul_fn(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)))

    def scalar(self, n, a=None):
        """``n`` copies of ``a`` (default: of one) added together; ``n`` may be negative."""
        a = self.one if a is None else a
        d = (n * self.digits(a)) % self.moduli
        return _as_result((d * self._weights).sum(axis=-1))

    def power(self, a, e):
        """``a**e`` for ``e >= 0`` by square-and-multiply (``a**0`` is one)."""
        a = np.asarray(a, dtype=np.int64)
        result = np.full(a.shape, self.one, dtype=np.int64)
        base = a
        while e:
            if e & 1:
                result = np.asarray(self.mul(result, base))
            e >>= 1
            if e:
                base = np.asarray(self.mul(base, base))
        return _as_result(result)

    def elements(self):
        return np.arange(self.size, dtype=np.int64)

    # -- cached structure -------------------------------------------------
    @cached_property
    def char(self):
        x, n = self.one, 1
        while x != self.zero:
            x = self.add(x, self.one)
            n += 1
        return n

    @cached_property
    def commutative(self):
        els = self.elements()
        for chunk in _chunks(els, max(1, 2**22 // self.size)):
            left = self.mul(chunk[:, None], els[None, :])
            right = self.mul(els[None, :], chunk[:, None])
            if not np.array_equal(left, right):
                return False
        return True

    def table(self, op="mul"):
        """Full ``size x size`` table of ``op`` (built on demand when structural)."""
        if op == "mul" and self._mul_table is not None:
            return self._mul_table
        if op == "add" and self._add_table is not None:
            return self._add_table
        els = self.elements()
        fn = self.mul if op == "mul" else self.add
        return np.asarray(fn(els[:, None], els[None, :]))

    def check_member(self, *xs):
        for x in xs:
            arr = np.asarray(x)
            if arr.size and (arr.min() < 0 or arr.max() >= self.size):
                raise WrongRing(f"element index out of range for {self.spec}")


class DualRing(Ring):
    """``base[beta_1..beta_k]`` with central ``beta_i`` and ``beta_i beta_j = 0``.

    Index of ``a0 + sum a_i beta_i`` is ``a0 + a1*|R| + ... + ak*|R|**k``.
    """

    def __init__(self, spec, base, k, *, materialize):
        self.base = base
        self.k = k
        self._radix = np.array([base.size**i for i in range(k + 1)], dtype=np.int64)
        # small structural bases get private lookup tables for speed
        self._bmul = self._badd = None
        if base.size <= MATERIALIZE_LIMIT:
            if base._mul_table is not None:
                self._bmul, self._badd = base._mul_table, base._add_table
            else:
                a, b = np.meshgrid(np.arange(base.size), np.arange(base.size), indexing="ij")
                self._bmul = np.asarray(base.mul(a, b), dtype=np.int64)
                self._badd = np.asarray(base.add(a, b), dtype=np.int64)
        super().__init__(
            spec,
            np.tile(base.moduli, k + 1),
            self._dual_mul,
            base.one,
            kind="dual",
            parts=(base,),
            materialize=materialize,
        )

    def decompose(self, x):
        """Components ``(a0, a1, .., ak)`` stacked on a trailing axis."""
        x = np.asarray(x, dtype=np.int64)
        return (x[..., None] // self._radix) % self.base.size

    def compose(self, comps):
        comps = np.asarray(comps, dtype=np.int64)
        return _as_result((comps * self._radix).sum(axis=-1))

    def _dual_mul(self, a, b):
        s, base = self.base.size, self.base
        a0, b0 = a % s, b % s
        if self._bmul is not None:
            M, A = self._bmul, self._badd
            out = M[a0, b0]
            for i in range(1, self.k + 1):
                w = s**i
                ai, bi = (a // w) % s, (b // w) % s
                out = out + A[M[a0, bi], M[ai, b0]] * w
            return out
        out = np.asarray(base.mul(a0, b0), dtype=np.int64)
        for i in range(1, self.k + 1):
            w = s**i
            ai, bi = (a // w) % s, (b // w) % s
            ci = base.add(base.mul(a0, bi), base.mul(ai, b0))
            out = out + np.asarray(ci, dtype=np.int64) * w
        return out

    def add(self, a, b):
        if self._add_table is not None:
            return _as_result(self._add_table[a, b])
        if self._xor:
            return _as_result(np.bitwise_xor(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)))
        s, base = self.base.size, self.base
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = 0
        for i in range(self.k + 1):
            w = s**i
            out = out + np.asarray(base.add((a // w) % s, (b // w) % s), dtype=np.int64) * w
        return _as_result(out)


def _chunks(arr, n):
    for i in range(0, len(arr), n):
        yield arr[i : i + n]


# ---------------------------------------------------------------------------
# spec parsing


@dataclass(frozen=True)
class SpecNode:
    kind: str
    args: tuple
    children: tuple = ()


class _Parser:
    def __init__(self, text):
        self.s = text
        self.pos = 0

    def fail(self, msg):
        raise ParseError(f"{msg} at position {self.pos} in {self.s!r}")

    def expect(self, ch):
        if not self.s.startswith(ch, self.pos):
            self.fail(f"expected {ch!r}")
        self.pos += len(ch)

    def peek(self, ch):
        return self.s.startswith(ch, self.pos)

    def integer(self):
        start = self.pos
        while self.pos < len(self.s) and self.s[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected integer")
        return int(self.s[start : self.pos])

    def token(self):
        """Next raw token up to ':' / '+' / end, without consuming."""
        end = self.pos
        while end < len(self.s) and self.s[end] not in ":+":
            end += 1
        return self.s[self.pos : end]

    def spec(self):
        for kind in ("zn", "gf", "mat", "ut", "prod", "dual"):
            if self.peek(kind + ":"):
                self.pos += len(kind) + 1
                return getattr(self, "_" + kind)()
        self.fail("unknown ring kind")

    def _zn(self):
        n = self.integer()
        if n < 2:
            self.fail("zn needs N >= 2")
        return SpecNode("zn", (n,))

    def _gf(self):
        a = self.integer()
        mod = None
        if self.peek(":") and self.s[self.pos + 1 : self.pos + 2].isdigit():
            save = self.pos
            self.pos += 1
            tok = self.token()
            if "," in tok:
                self.pos = save
                self.fail("gf modulus given without degree")
            p, w = a, self.integer()
            if self.peek(":"):
                self.pos += 1
                tok = self.token()
                if "," not in tok:
                    self.fail("gf modulus must be a comma-separated list")
                try:
                    mod = tuple(int(t) for t in tok.split(","))
                except ValueError:
                    self.fail("bad gf modulus")
                self.pos += len(tok)
        else:
            pw = _prime_power(a)
            if pw is None:
                self.fail(f"gf order {a} is not a prime power")
            p, w = pw
        if not _is_prime(p):
            self.fail(f"gf characteristic {p} is not prime")
        if w < 1:
            self.fail("gf degree must be >= 1")
        if mod is not None:
            if len(mod) != w + 1 or mod[-1] != 1 or any(not 0 <= c < p for c in mod):
                self.fail("gf modulus must be monic of degree w with coefficients in 0..p-1")
        return SpecNode("gf", (p, w, mod))

    def _mat(self):
        n = self.integer()
        if n < 1:
            self.fail("matrix dimension must be >= 1")
        self.expect(":")
        return SpecNode("mat", (n,), (self.spec(),))

    def _ut(self):
        n = self.integer()
        if n < 1:
            self.fail("matrix dimension must be >= 1")
        self.expect(":")
        return SpecNode("ut", (n,), (self.spec(),))

    def _prod(self):
        left = self.spec()
        self.expect("+")
        right = self.spec()
        return SpecNode("prod", (), (left, right))

    def _dual(self):
        k = self.integer()
        if k < 1:
            self.fail("dual needs k >= 1")
        self.expect(":")
        return SpecNode("dual", (k,), (self.spec(),))


def parse_spec(text):
    """Parse a ring spec string into a :class:`SpecNode` tree."""
    if not isinstance(text, str):
        raise ParseError("ring spec must be a string")
    parser = _Parser(text.strip())
    node = parser.spec()
    if parser.pos != len(parser.s):
        parser.fail("trailing characters")
    return node


def canonical_spec(node):
    if node.kind == "zn":
        return f"zn:{node.args[0]}"
    if node.kind == "gf":
        p, w, mod = node.args
        if mod is not None and mod != default_gf_modulus(p, w):
            return f"gf:{p}:{w}:" + ",".join(map(str, mod))
        return f"gf:{p}:{w}"
    if node.kind in ("mat", "ut", "dual"):
        return f"{node.kind}:{node.args[0]}:{canonical_spec(node.children[0])}"
    if node.kind == "prod":
        return f"prod:{canonical_spec(node.children[0])}+{canonical_spec(node.children[1])}"
    raise ParseError(node.kind)


def spec_size(node):
    if node.kind == "zn":
        return node.args[0]
    if node.kind == "gf":
        return node.args[0] ** node.args[1]
    sub = [spec_size(c) for c in node.children]
    if node.kind == "mat":
        return sub[0] ** (node.args[0] ** 2)
    if node.kind == "ut":
        n = node.args[0]
        return sub[0] ** (n * (n + 1) // 2)
    if node.kind == "prod":
        return sub[0] * sub[1]
    if node.kind == "dual":
        return sub[0] ** (node.args[0] + 1)
    raise ParseError(node.kind)


_TABLE_CACHE = None


def use_cache(cache):
    """Route table materialization through ``cache`` (a ``TableCache`` or ``None``).

    Rings already built stay in memory; the cache only affects new builds.
    """
    global _TABLE_CACHE
    _TABLE_CACHE = cache
    _build.cache_clear()


def construct_ring(spec, *, budget=DEFAULT_SIZE_BUDGET, materialize=None):
    """Build the ring described by ``spec``.

    Dual rings are structural unless ``materialize=True`` (allowed up to 4096
    elements); every other ring gets tables when it has at most 1024 elements.
    """
    node = parse_spec(spec)
    size = spec_size(node)
    if size > budget:
        raise BudgetExceeded(f"{spec} has {size} elements, budget is {budget}")
    if materialize and node.kind == "dual" and size > DUAL_MATERIALIZE_LIMIT:
        raise BudgetExceeded(f"cannot materialize {size} > {DUAL_MATERIALIZE_LIMIT} elements")
    return _build(node, materialize)


@lru_cache(maxsize=None)
def _build(node, materialize):
    spec = canonical_spec(node)
    if node.kind == "dual":
        base = _build(node.children[0], None)
        mat = bool(materialize) and spec_size(node) <= DUAL_MATERIALIZE_LIMIT
        return DualRing(spec, base, node.args[0], materialize=mat)
    size = spec_size(node)
    mat = size <= MATERIALIZE_LIMIT if materialize is None else bool(materialize)
    if node.kind == "zn":
        n = node.args[0]
        return Ring(spec, (n,), lambda a, b: (a * b) % n, 1 % n, kind="zn", materialize=mat)
    if node.kind == "gf":
        return _build_gf(spec, *node.args, materialize=mat)
    if node.kind in ("mat", "ut"):
        base = _build(node.children[0], None)
        return _build_matrix(spec, node.kind, node.args[0], base, materialize=mat)
    if node.kind == "prod":
        left = _build(node.children[0], None)
        right = _build(node.children[1], None)
        t = right.size

        def mul(a, b):
            la, ra = a // t, a % t
            lb, rb = b // t, b % t
            return np.asarray(left.mul(la, lb)) * t + np.asarray(right.mul(ra, rb))

        return Ring(
            spec,
            np.concatenate((right.moduli, left.moduli)),
            mul,
            left.one * t + right.one,
            kind="prod",
            parts=(left, right),
            materialize=mat,
        )
    raise ParseError(node.kind)


def same_ring(r, s):
    """Equal rings: the same object or the same canonical spec.

    Clearing the build cache can leave two live objects for one ring.
    """
    return r is s or (r is not None and s is not None and r.spec == s.spec and r.size == s.size)


def make_dual(base, k, *, materialize=None):
    """Dual-number extension of an already constructed ring."""
    return construct_ring(f"dual:{k}:{base.spec}", budget=math.inf, materialize=materialize)


# ---------------------------------------------------------------------------
# Galois fields


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def _prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            w = 0
            while q % p == 0:
                q //= p
                w += 1
            return (p, w) if q == 1 else None
    return None


def _polymod(a, m, p):
    """Remainder of ``a`` by monic ``m`` over Z/p (lists low->high)."""
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        c, shift = a[-1], len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    return a


def _polymul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(mod, p):
    """Trial division by every monic polynomial of degree ``1 .. w//2``."""
    w = len(mod) - 1
    for d in range(1, w // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_polymod(mod, list(low) + [1], p)):
                return False
    return True


@lru_cache(maxsize=None)
def default_gf_modulus(p, w):
    """Lexicographically least monic irreducible of degree ``w`` (low degree first)."""
    for low in itertools.product(range(p), repeat=w):
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise NotIrreducible(f"no irreducible of degree {w} over Z/{p}")  # unreachable


def _build_gf(spec, p, w, mod, *, materialize):
    mod = default_gf_modulus(p, w) if mod is None else tuple(mod)
    if not is_irreducible(mod, p):
        raise NotIrreducible(f"{mod} is reducible over Z/{p}")
    q = p**w

    def to_poly(i):
        return [(i // p**j) % p for j in range(w)]

    def from_poly(c):
        c = list(c) + [0] * (w - len(c))
        return sum(x * p**j for j, x in enumerate(c[:w]))

    def fmul(i, j):
        return from_poly(_polymod(_polymul(to_poly(i), to_poly(j), p), mod, p))

    # log/exp tables through a primitive element
    gen = None
    for g in range(1, q):
        x, order = g, 1
        while x != 1:
            x = fmul(x, g)
            order += 1
        if order == q - 1:
            gen = g
            break
    exp = np.zeros(q - 1, dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    x = 1
    for e in range(q - 1):
        exp[e] = x
        log[x] = e
        x = fmul(x, gen)

    def mul(a, b):
        res = exp[(log[a] + log[b]) % (q - 1)]
        return np.where((a == 0) | (b == 0), 0, res)

    ring = Ring(spec, (p,) * w, mul, 1, kind="gf", materialize=materialize)
    ring.gf_modulus = mod
    return ring


# ---------------------------------------------------------------------------
# matrix rings


def _build_matrix(spec, kind, n, base, *, materialize):
    s = base.size
    if kind == "mat":
        positions = [(i, j) for i in range(n) for j in range(n)]
    else:
        positions = [(i, j) for i in range(n) for j in range(i, n)]
    rows = np.array([i for i, _ in positions])
    cols = np.array([j for _, j in positions])
    npos = len(positions)
    weights = np.array([s**t for t in range(npos)], dtype=np.int64)

    def decode(x):
        ent = (x[..., None] // weights) % s
        full = np.zeros(x.shape + (n, n), dtype=np.int64)
        full[..., rows, cols] = ent
        return full

    def encode(full):
        return (full[..., rows, cols] * weights).sum(axis=-1)

    def mul(a, b):
        a, b = np.broadcast_arrays(a, b)
        A, B = decode(a), decode(b)
        prods = np.asarray(base.mul(A[..., :, :, None], B[..., None, :, :]))
        acc = prods[..., :, 0, :]
        for l in range(1, n):
            acc = np.asarray(base.add(acc, prods[..., :, l, :]))
        return encode(acc)

    one = encode(np.where(np.eye(n, dtype=bool), base.one, 0)[None])[0]
    ring = Ring(spec, np.tile(base.moduli, npos), mul, one, kind=kind, parts=(base,), materialize=materialize)
    ring.matrix_n = n
    ring.matrix_positions = tuple(positions)
    ring.decode_matrix = decode
    ring.encode_matrix = encode
    return ring


def pretty(ring, x):
    """Human-readable form of element ``x``; for display only, never parsed."""
    x = int(x)
    if ring.kind == "zn":
        return str(x)
    if ring.kind == "gf":
        digits = ring.digits(x).tolist()
        terms = [f"{c}" if i == 0 else f"{'' if c == 1 else c}t{'' if i == 1 else f'^{i}'}"
                 for i, c in enumerate(digits) if c]
        return "+".join(reversed(terms)) or "0"
    if ring.kind in ("mat", "ut"):
        base = ring.parts[0]
        rows = ring.decode_matrix(np.asarray(x))
        return "[" + ", ".join("[" + ", ".join(pretty(base, e) for e in row) + "]" for row in rows.tolist()) + "]"
    if ring.kind == "prod":
        left, right = ring.parts
        return f"({pretty(left, x // right.size)}, {pretty(right, x % right.size)})"
    if ring.kind == "dual":
        comps = ring.decompose(x).tolist()
        parts = [pretty(ring.base, comps[0])]
        parts += [f"{pretty(ring.base, c)}*b{i}" for i, c in enumerate(comps[1:], start=1) if c]
        return " + ".join(parts)
    return str(x)


def matrix_element(ring, entries):
    """Index of the matrix with the given base-ring entries (full n x n list)."""
    if ring.kind not in ("mat", "ut"):
        raise WrongRing(f"{ring.spec} is not a matrix ring")
    full = np.asarray(entries, dtype=np.int64)
    n = ring.matrix_n
    if full.shape != (n, n):
        raise WrongRing("entry array has wrong shape")
    if ring.kind == "ut" and np.any(full[np.tril_indices(n, -1)] != 0):
        raise WrongRing("entry below the diagonal in an upper triangular ring")
    return int(ring.encode_matrix(full[None])[0])


def matrix_entries(ring, x):
    """Inverse of :func:`matrix_element`."""
    return ring.decode_matrix(np.asarray([x]))[0].tolist()
