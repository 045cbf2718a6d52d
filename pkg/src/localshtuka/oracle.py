"""Brute-force reference enumerators, independent of the Hermite-form path.

Lattices z^a L_0 <= L <= z^{-a} L_0 correspond to z-stable subspaces W of
V = z^{-a} L_0 / z^{a+1} L_0 containing the image of z^a L_0.  They are
found by breadth-first search: every such W is reached from a smaller one
by adding a vector v with z*v already in W.
"""
from __future__ import annotations

from collections import deque
from itertools import product

from .linalg import kernel_over, reduce_against, rref_over
from .semilinear import BoundSpec, LoopElement, relative_position
from .series import Series


class _Space:
    def __init__(self, F, r, a):
        self.F, self.r, self.a = F, r, a
        self.width = 2 * a + 1
        self.n = r * self.width

    def idx(self, i, e):
        return i * self.width + e + self.a

    def z(self, v):
        out = [0] * self.n
        for i in range(self.r):
            for e in range(-self.a, self.a):
                out[self.idx(i, e + 1)] = v[self.idx(i, e)]
        return out

    def unit(self, k):
        v = [0] * self.n
        v[k] = 1
        return v


def _key(rows):
    return tuple(tuple(r) for r in rows)


def _lines(F, k):
    """Normalized coefficient vectors of the lines in F^k."""
    for lead in range(k):
        for tail in product(range(F.order), repeat=k - lead - 1):
            yield [0] * lead + [1] + list(tail)


def stable_subspaces(r: int, ring, a: int) -> list:
    """RREF bases of all z-stable W with z^a L_0 / z^{a+1} L_0 <= W."""
    F = ring.field
    S = _Space(F, r, a)
    start, piv = rref_over(F, [S.unit(S.idx(i, a)) for i in range(r)])
    seen = {_key(start): (start, piv)}
    queue = deque([(start, piv)])
    while queue:
        W, pv = queue.popleft()
        # preimage of W under z, modulo W
        images = [reduce_against(F, S.z(S.unit(k)), W, pv) for k in range(S.n)]
        A = [list(row) for row in zip(*images)]
        pre = kernel_over(F, A, S.n)
        comp = [reduce_against(F, v, W, pv) for v in pre]
        comp, _ = rref_over(F, [v for v in comp if any(v)])
        for c in _lines(F, len(comp)):
            v = [0] * S.n
            for coef, vec in zip(c, comp):
                if coef:
                    v = [F.add(x, F.mul(coef, y)) for x, y in zip(v, vec)]
            W2, pv2 = rref_over(F, W + [v])
            k = _key(W2)
            if k not in seen:
                seen[k] = (W2, pv2)
                queue.append((W2, pv2))
    return [w for w, _ in seen.values()]


def raw_representative(W, r: int, ring, a: int, prec: int) -> LoopElement:
    """r vectors of W independent modulo z*W, as matrix columns (they
    generate the lattice by Nakayama)."""
    F = ring.field
    S = _Space(F, r, a)
    zW, zp = rref_over(F, [S.z(w) for w in W])
    zW = [row for row in zW if any(row)]
    chosen, basis, bp = [], zW, zp
    for w in reversed(W):
        red = reduce_against(F, w, basis, bp)
        if any(red):
            chosen.append(w)
            basis, bp = rref_over(F, basis + [red])
            if len(chosen) == r:
                break
    if len(chosen) != r:
        raise AssertionError("subspace is not a lattice quotient")
    cols = []
    for w in chosen:
        col = []
        for i in range(r):
            terms = {e: w[S.idx(i, e)] for e in range(-a, a + 1) if w[S.idx(i, e)]}
            col.append(Series.from_dict(ring, terms, prec))
        cols.append(col)
    return LoopElement([[cols[j][i] for j in range(r)] for i in range(r)])


def brute_force_lattices(r: int, ring, a: int, prec: int = 32) -> list:
    return [raw_representative(W, r, ring, a, prec) for W in stable_subspaces(r, ring, a)]


def smith_membership(g: LoopElement, b: LoopElement, bound: BoundSpec) -> bool:
    """Defining condition via Smith form and dominance (no minors)."""
    x = g.inverse() * b * g.frobenius()
    mu = relative_position(x)
    if bound.relation == "eq":
        return mu == bound.coweight
    return mu.dominated_by(bound.coweight)


def brute_force_adlv(b: LoopElement, bound: BoundSpec, ring, a: int) -> list:
    """Raw representatives of the lattices in the window passing the test."""
    if ring != b.ring:
        b = b.change_ring(ring)
    prec = b.prec + 2 * a * b.rank + 4
    return [g for g in brute_force_lattices(b.rank, ring, a, prec)
            if smith_membership(g, b, bound)]
