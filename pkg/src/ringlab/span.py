"""Subgroups of finite abelian groups ``(Z/n)^D`` given by generators.

The group is split into its primary parts ``(Z/p^c)^D`` by the Chinese
remainder theorem.  In each part the generators are brought into Howell
echelon form: every subgroup element is then *uniquely* a combination
``sum k_i row_i`` with ``0 <= k_i < ord(row_i)``, which gives the order,
membership and enumeration without a visited set.

Each row carries a tag vector recording which combination of the original
generators produced it, so every enumerated element comes with a witness.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded


def factorize(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _valuation(x, p, c):
    """p-adic valuation of entries of ``x`` in ``Z/p^c`` (zero gets ``c``)."""
    v = np.zeros(x.shape, dtype=np.int64)
    cur = x.copy()
    for _ in range(c):
        div = (cur % p == 0) & (cur != 0)
        v += div
        cur = np.where(div, cur // p, cur)
    return np.where(x == 0, c, v)


@dataclass
class Pivot:
    col: int
    val: int      # pivot entry is p**val
    order: int    # p**(c - val)
    row: np.ndarray
    tag: np.ndarray


@dataclass
class PrimaryPart:
    p: int
    c: int
    pivots: list
    kernel_tags: list

    @property
    def q(self):
        return self.p**self.c

    @property
    def order(self):
        return math.prod(pv.order for pv in self.pivots)


def _howell(gens, p, c):
    """Echelon form of the span of ``gens`` (rows) in ``(Z/p^c)^D``."""
    q = p**c
    ngen, ncols = gens.shape
    pool = gens % q
    tags = np.eye(ngen, dtype=np.int64)
    pivots, kernel = [], []
    keep = pool.any(axis=1)
    kernel.extend(tags[~keep])
    pool, tags = pool[keep], tags[keep]
    for j in range(ncols):
        if len(pool) == 0:
            break
        col = pool[:, j]
        nz = np.flatnonzero(col)
        if len(nz) == 0:
            continue
        vals = _valuation(col[nz], p, c)
        i = nz[np.argmin(vals)]
        v = int(vals.min())
        unit = int(col[i]) // p**v
        uinv = pow(unit, -1, q)
        prow = pool[i] * uinv % q
        ptag = tags[i] * uinv % q
        mult = col // p**v
        mult[i] = 0
        pool = (pool - mult[:, None] * prow[None, :]) % q
        tags = (tags - mult[:, None] * ptag[None, :]) % q
        rest = np.ones(len(pool), dtype=bool)
        rest[i] = False
        pool, tags = pool[rest], tags[rest]
        pivots.append(Pivot(j, v, p ** (c - v), prow, ptag))
        if v > 0:
            pool = np.vstack([pool, (p ** (c - v) * prow)[None] % q])
            tags = np.vstack([tags, (p ** (c - v) * ptag)[None] % q])
        keep = pool.any(axis=1)
        kernel.extend(tags[~keep])
        pool, tags = pool[keep], tags[keep]
    return PrimaryPart(p, c, pivots, kernel)


class AbelianSpan:
    """Span of integer generator rows inside ``(Z/n)^D``.

    ``gens`` has shape ``(G, D)``; entries are read modulo ``n``.
    """

    def __init__(self, gens, n):
        gens = np.asarray(gens, dtype=np.int64)
        if gens.ndim != 2:
            raise ValueError("generators must be a 2-d array")
        self.n = int(n)
        self.ngens, self.ncols = gens.shape
        self.parts = [_howell(gens, p, c) for p, c in sorted(factorize(self.n).items())]
        # idempotents e_p of Z/n for recombining tags
        self._idem = []
        for part in self.parts:
            rest = self.n // part.q
            self._idem.append(rest * pow(rest, -1, part.q) % self.n if rest > 1 else 1)

    @property
    def order(self):
        return math.prod(part.order for part in self.parts)

    def order_below(self, col):
        """Order of the subgroup of elements vanishing on columns ``< col``."""
        return math.prod(pv.order for part in self.parts for pv in part.pivots if pv.col >= col)

    def order_above(self, col):
        """Order of the projection onto columns ``< col``."""
        return math.prod(pv.order for part in self.parts for pv in part.pivots if pv.col < col)

    def kernel_tags(self):
        """Generator combinations (mod n) that sum to zero, one per relation found."""
        out = []
        for idx, part in enumerate(self.parts):
            for t in part.kernel_tags:
                out.append(t * self._idem[idx] % self.n)
        return np.array(out, dtype=np.int64).reshape(-1, self.ngens)

    def contains(self, vec):
        vec = np.asarray(vec, dtype=np.int64) % self.n
        for part in self.parts:
            x = vec % part.q
            for pv in part.pivots:
                e = int(x[pv.col])
                if e % part.p**pv.val:
                    return False
                x = (x - (e // part.p**pv.val) * pv.row) % part.q
            if x.any():
                return False
        return True

    def elements(self, budget=10**6, below=0):
        """All elements (rows) and generator tags, as two arrays.

        With ``below`` only the elements vanishing on columns ``< below``.
        """
        total = self.order_below(below)
        if total > budget:
            raise BudgetExceeded(f"span has {total} elements, budget is {budget}")
        vecs = np.zeros((1, self.ncols), dtype=np.int64)
        tags = np.zeros((1, self.ngens), dtype=np.int64)
        for idx, part in enumerate(self.parts):
            e = self._idem[idx]
            for pv in part.pivots:
                if pv.col < below:
                    continue
                # the pivot row lifted to Z/n along the idempotent
                row = pv.row * e % self.n
                tag = pv.tag * e % self.n
                ks = np.arange(pv.order)
                vecs = ((vecs[None, :, :] + ks[:, None, None] * row) % self.n).reshape(-1, self.ncols)
                tags = ((tags[None, :, :] + ks[:, None, None] * tag) % self.n).reshape(-1, self.ngens)
        return vecs, tags


def bfs_span_order(gens, n, budget=10**6):
    """Order of the span by plain breadth-first closure (independent oracle)."""
    gens = [tuple(int(v) % n for v in g) for g in np.asarray(gens, dtype=np.int64)]
    zero = tuple([0] * (len(gens[0]) if gens else 0))
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % n for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > budget:
                        raise BudgetExceeded(f"span exceeds {budget} elements")
        frontier = nxt
    return len(seen)


__all__ = ["AbelianSpan", "bfs_span_order", "factorize"]

