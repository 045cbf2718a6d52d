"""Lattices in the affine Grassmannian over a finite field, affine
Deligne-Lusztig point sets, the quasi-isogeny metric and balls.

A lattice L = g * F[[z]]^r is stored in column Hermite form: an upper
triangular basis with diagonal z^{m_i} and entry (i, j), i < j, a Laurent
polynomial with exponents in [-a, m_i - 1], where the window a satisfies
z^a L_0 <= L <= z^{-a} L_0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import PrecisionError
from .semilinear import (BoundSpec, Coweight, LoopElement, bounded_by,
                         relative_position_from_minors, _minor_table)
from .series import ZERO_TO_PRECISION, Series

DEFAULT_CAP = 200_000


class WindowTooLargeError(ValueError):
    code = "budget"

    def __init__(self, count, cap):
        super().__init__(f"window too large: {count} candidates exceed the cap {cap}")
        self.count, self.cap = count, cap


class Lattice:
    """Canonical form of a coset g * K."""

    __slots__ = ("ring", "window", "exps", "upper")

    def __init__(self, ring, window: int, exps: Sequence[int], upper: dict):
        self.ring = ring
        self.window = window
        self.exps = tuple(exps)
        r = len(self.exps)
        # upper[(i, j)] = coefficients for exponents -window .. exps[i]-1
        self.upper = tuple(tuple(upper.get((i, j), ())) for i in range(r) for j in range(i + 1, r))

    @property
    def rank(self) -> int:
        return len(self.exps)

    def key(self):
        """Window-independent canonical key."""
        a = self.window
        r = self.rank
        out = []
        k = 0
        for i in range(r):
            for j in range(i + 1, r):
                cs = self.upper[k]
                k += 1
                out.append(tuple((e, c) for e, c in zip(range(-a, self.exps[i]), cs) if c))
        return (self.exps, tuple(out))

    def entry_terms(self, i: int, j: int) -> dict:
        if i == j:
            return {self.exps[i]: 1}
        if i > j:
            return {}
        r = self.rank
        k = sum(r - 1 - t for t in range(i)) + (j - i - 1)
        return {e: c for e, c in zip(range(-self.window, self.exps[i]), self.upper[k]) if c}

    def matrix(self, prec: int) -> LoopElement:
        R, r = self.ring, self.rank
        return LoopElement([[Series.from_dict(R, self.entry_terms(i, j), prec)
                             for j in range(r)] for i in range(r)], check=False)

    def det_valuation(self) -> int:
        return sum(self.exps)

    def to_json(self) -> dict:
        R = self.ring
        r = self.rank
        rows = []
        for i in range(r):
            row = []
            for j in range(r):
                t = self.entry_terms(i, j)
                if t:
                    lo = min(t)
                    cs = [R.to_json(t.get(e, 0)) for e in range(lo, max(t) + 1)]
                    row.append({"val": lo, "coeffs": cs})
                else:
                    row.append({"val": None, "coeffs": []})
            rows.append(row)
        return {"exps": list(self.exps), "basis": rows}

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.key() == other.key()

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Lattice(exps={self.exps}, upper={self.key()[1]})"


# --- canonical form of an arbitrary representative ---

def canonical_lattice(g: LoopElement, window: int | None = None) -> Lattice:
    """Column Hermite form of g * K (field coefficients)."""
    R = g.ring
    if R.kind != "finite-field":
        raise TypeError("lattices need field coefficients")
    r = g.rank
    if window is None:
        mu = relative_position_from_minors(g)
        window = max(mu.parts[0], -mu.parts[-1], 0)
    cols = [[g[i, j] for i in range(r)] for j in range(r)]
    exps = [0] * r
    for k in range(r - 1, -1, -1):
        best, horizon = None, None
        for j in range(k + 1):
            x = cols[j][k]
            if x.coeffs:
                if best is None or x.val < best[0]:
                    best = (x.val, j)
            else:
                horizon = x.prec if horizon is None else min(horizon, x.prec)
        if best is None or (horizon is not None and horizon < best[0]):
            raise PrecisionError("insufficient precision to certify a Hermite pivot")
        v, j = best
        cols[k], cols[j] = cols[j], cols[k]
        piv = cols[k][k]
        pinv = piv.inverse()
        for j in range(k):
            x = cols[j][k]
            if x.is_zero():
                continue
            t = x * pinv
            cols[j] = [cols[j][i] - t * cols[k][i] if i < k else cols[j][i]
                       for i in range(r)]
            cols[j][k] = Series.zero(R, x.prec)
        uinv = piv.shift(-v).inverse()
        cols[k] = [x * uinv if i < k else x for i, x in enumerate(cols[k])]
        cols[k][k] = Series.monomial(R, v, piv.prec)
        exps[k] = v
    upper = {}
    for j in range(r):
        for i in range(j - 1, -1, -1):
            e = cols[j][i]
            m = exps[i]
            if e.prec < m:
                raise PrecisionError("insufficient precision to reduce a Hermite entry")
            low, high = e.split(m)
            if high.coeffs:
                t = high.shift(-m)
                cols[j] = [cols[j][s] - t * cols[i][s] if s < i else cols[j][s]
                           for s in range(r)]
            terms = low.terms()
            if terms and min(terms) < -window:
                raise ValueError(f"lattice is not inside the window {window}")
            upper[(i, j)] = [terms.get(x, 0) for x in range(-window, m)]
    if any(abs(m) > window for m in exps):
        raise ValueError(f"lattice is not inside the window {window}")
    return Lattice(R, window, exps, upper)


# --- enumeration ---

def _poly_sub_mul(F, acc: dict, a: dict, b: dict):
    """acc - a * b (Laurent polynomials as dicts)."""
    out = dict(acc)
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            out[e] = F.sub(out.get(e, 0), F.mul(c1, c2))
    return {e: c for e, c in out.items() if c}


def _contains_window(F, exps, entry, a: int) -> bool:
    """z^a L_0 <= L, i.e. M^{-1} z^a integral (back substitution)."""
    r = len(exps)
    for k in range(r):
        x = [None] * r
        for i in range(r - 1, -1, -1):
            rhs = {a: 1} if i == k else {}
            for j in range(i + 1, r):
                if x[j] and entry[(i, j)]:
                    rhs = _poly_sub_mul(F, rhs, entry[(i, j)], x[j])
            xi = {e - exps[i]: c for e, c in rhs.items()}
            if xi and min(xi) < 0:
                return False
            x[i] = xi
    return True


def count_candidates(r: int, q: int, a: int) -> int:
    total = 0
    for pattern in product(range(-a, a + 1), repeat=r):
        n = sum((pattern[i] + a) * (r - 1 - i) for i in range(r))
        total += q ** n
    return total


def _partitions(r: int, F, a: int):
    """(pattern, leading digit) blocks of the candidate space."""
    for pattern in product(range(-a, a + 1), repeat=r):
        slots = [(i, j, e) for i in range(r) for j in range(i + 1, r)
                 for e in range(-a, pattern[i])]
        if slots:
            for lead in range(F.order):
                yield pattern, slots, lead
        else:
            yield pattern, slots, None


def _block_lattices(ring, a, pattern, slots, lead):
    F = ring.field
    r = len(pattern)
    rest = slots[1:] if lead is not None else slots
    for choice in product(range(F.order), repeat=len(rest)):
        entry = {(i, j): {} for i in range(r) for j in range(i + 1, r)}
        upper = {(i, j): [0] * (pattern[i] + a) for i in range(r) for j in range(i + 1, r)}
        vals = ((lead,) + choice) if lead is not None else choice
        for (i, j, e), c in zip(slots, vals):
            if c:
                entry[(i, j)][e] = c
                upper[(i, j)][e + a] = c
        if _contains_window(F, pattern, entry, a):
            yield Lattice(ring, a, pattern, upper)


def enumerate_lattices(r: int, ring, window: int, cap: int = DEFAULT_CAP,
                       shards: int = 1, shard: int | None = None) -> list:
    """All lattices with z^a L_0 <= L <= z^{-a} L_0, canonical and sorted.

    With ``shard`` set only that residue class of blocks is produced."""
    if window < 0:
        raise ValueError("window must be >= 0")
    if ring.kind != "finite-field":
        raise TypeError("lattices need field coefficients")
    n = count_candidates(r, ring.field.order, window)
    if n > cap:
        raise WindowTooLargeError(n, cap)
    out = []
    for idx, (pattern, slots, lead) in enumerate(_partitions(r, ring.field, window)):
        if shard is not None and idx % shards != shard:
            continue
        out.extend(_block_lattices(ring, window, pattern, slots, lead))
    out.sort(key=Lattice.key)
    return out


# --- affine Deligne-Lusztig sets ---

@dataclass
class AdlvResult:
    points: list
    b: LoopElement
    bound: BoundSpec
    ring: object
    window: int
    candidates: int = 0
    shards: int = 1
    params: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.points)

    def to_json(self, listing: bool = False) -> dict:
        out = {"count": self.count, "window": self.window, "candidates": self.candidates,
               "mu": list(self.bound.coweight.parts), "relation": self.bound.relation}
        if listing:
            out["points"] = [p.to_json() for p in self.points]
        return out


def default_window(b: LoopElement, mu: Coweight) -> int:
    vals = [abs(x.val) for x in b.entries() if x.coeffs]
    return sum(abs(m) for m in mu.parts) + (max(vals) if vals else 0)


def representative_prec(b: LoopElement, window: int) -> int:
    return b.prec + 2 * window * b.rank + 4


def membership(g: LoopElement, b: LoopElement, bound: BoundSpec) -> bool:
    """Is g^{-1} * b * sigma(g) bounded by ``bound``?"""
    x = g.inverse() * b * g.frobenius()
    return bounded_by(x, bound)


def adlv_points(b: LoopElement, bound: BoundSpec, ring=None, window: int | None = None,
                shards: int = 1, cap: int = DEFAULT_CAP) -> AdlvResult:
    """Lattices g*K in the window with g^{-1} b sigma(g) bounded by ``bound``,
    over the field of ``ring`` (default: b's own ring)."""
    if ring is None:
        ring = b.ring
    if ring != b.ring:
        b = b.change_ring(ring)
    if window is None:
        window = default_window(b, bound.coweight)
    r = b.rank
    total = count_candidates(r, ring.field.order, window)
    if total > cap:
        raise WindowTooLargeError(total, cap)
    prec = representative_prec(b, window)
    points = []
    for s in range(shards):
        for L in enumerate_lattices(r, ring, window, cap, shards, s):
            if membership(L.matrix(prec), b, bound):
                points.append(L)
    points.sort(key=Lattice.key)
    return AdlvResult(points, b, bound, ring, window, total, shards)


# --- metric and balls ---

def metric_dtilde(x: LoopElement, x2: LoopElement):
    """Smallest n >= 0 with x^{-1} x2 bounded by n*(r-1, r-3, ..., 1-r);
    math.inf when val det(x^{-1} x2) != 0 (no such n exists)."""
    y = x.inverse() * x2
    r = y.rank
    d = y.det()
    v = d.valuation()
    if v is ZERO_TO_PRECISION:
        raise PrecisionError("determinant is zero to precision")
    if v != 0:
        return math.inf
    n = 0
    if r > 1:
        t = _minor_table(y.rows, r - 1)
        for j in range(1, r):
            known, horizon = None, None
            for (I, _), m in t.items():
                if len(I) != j:
                    continue
                if m.coeffs:
                    known = m.val if known is None else min(known, m.val)
                else:
                    horizon = m.prec if horizon is None else min(horizon, m.prec)
            if known is None:
                raise PrecisionError(f"all {j} x {j} minors are zero to precision")
            if horizon is not None and horizon < known:
                known = horizon
            need = -known
            if need > 0:
                n = max(n, -(-need // (j * (r - j))))
    if not bounded_by(y, BoundSpec(Coweight.metric_bound(r, n))):
        raise PrecisionError("metric bound could not be certified")
    return n


def _as_matrix(p, prec):
    if isinstance(p, Lattice):
        return p.matrix(prec)
    if isinstance(p, tuple):
        return p[1]
    return p


def ball(points: Iterable, y, d0, prec: int = 32) -> list:
    """Points at distance <= d0 from y.  Points may be Lattice values,
    (Lattice, representative) pairs or loop elements."""
    ym = _as_matrix(y, prec)
    return [p for p in points if metric_dtilde(_as_matrix(p, prec), ym) <= d0]
