"""Matrices over truncated Laurent series: loop-group elements, Smith form,
relative position (Hodge polygon) and the exterior-power boundedness test."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import NotInvertibleError, PrecisionError
from .series import ZERO_TO_PRECISION, Series


@dataclass(frozen=True)
class Coweight:
    """Weakly decreasing integer sequence."""
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"coweight {parts} is not weakly decreasing")

    @classmethod
    def sorted(cls, values: Sequence[int]) -> "Coweight":
        return cls(tuple(sorted(values, reverse=True)))

    @classmethod
    def metric_bound(cls, r: int, n: int) -> "Coweight":
        """n * (r-1, r-3, ..., 1-r); its j smallest parts sum to n(j^2 - jr)."""
        return cls(tuple(n * (r - 1 - 2 * i) for i in range(r)))

    @property
    def rank(self) -> int:
        return len(self.parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def negate_reverse(self) -> "Coweight":
        return Coweight(tuple(-x for x in reversed(self.parts)))

    def dominated_by(self, other: "Coweight") -> bool:
        """self <= other in dominance order (equal totals, partial sums of
        the largest parts bounded by those of ``other``)."""
        if self.rank != other.rank or self.total != other.total:
            return False
        a = b = 0
        for x, y in zip(self.parts, other.parts):
            a += x
            b += y
            if a > b:
                return False
        return True

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __repr__(self):
        return f"Coweight{self.parts}"


@dataclass(frozen=True)
class BoundSpec:
    """``relation`` is "leq" (dominance) or "eq".  With ``zeta`` set (an
    element of a nilpotent coefficient ring) the bound is taken with respect
    to z - zeta instead of z."""
    coweight: Coweight
    relation: str = "leq"
    zeta: object = None

    def __post_init__(self):
        if not isinstance(self.coweight, Coweight):
            object.__setattr__(self, "coweight", Coweight(tuple(self.coweight)))
        if self.relation not in ("leq", "eq"):
            raise ValueError(f"relation must be 'leq' or 'eq', got {self.relation!r}")


# --- minors ---

def _minor_table(rows, size: int) -> dict:
    """All minors of order <= size, keyed by (row subset, column subset)."""
    r = len(rows)
    R = rows[0][0].ring
    table: dict = {}
    for I in combinations(range(r), 1):
        for J in combinations(range(len(rows[0])), 1):
            table[(I, J)] = rows[I[0]][J[0]]
    for k in range(2, size + 1):
        for I in combinations(range(r), k):
            i0, rest = I[0], I[1:]
            for J in combinations(range(len(rows[0])), k):
                acc = None
                for pos, j in enumerate(J):
                    a = rows[i0][j]
                    if a.is_zero() and a.prec > 10 ** 6:
                        continue
                    term = a * table[(rest, J[:pos] + J[pos + 1:])]
                    if pos % 2:
                        term = -term
                    acc = term if acc is None else acc + term
                table[(I, J)] = acc if acc is not None else Series.zero(R, 10 ** 9)
    return table


def _det(rows) -> Series:
    r = len(rows)
    if r == 1:
        return rows[0][0]
    if r == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if r == 3:
        a, b, c = rows
        return (a[0] * (b[1] * c[2] - b[2] * c[1])
                - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]))
    t = _minor_table(rows, r)
    return t[(tuple(range(r)), tuple(range(r)))]


class LoopElement:
    """An r x r matrix of series, invertible over Laurent series."""

    __slots__ = ("rows", "ring", "rank", "_det")

    def __init__(self, rows: Sequence[Sequence[Series]], check: bool = True):
        rows = tuple(tuple(r) for r in rows)
        self.rank = len(rows)
        if any(len(r) != self.rank for r in rows):
            raise ValueError("loop element must be square")
        self.ring = rows[0][0].ring
        if any(x.ring != self.ring for r in rows for x in r):
            raise TypeError("entries must share one coefficient ring")
        self.rows = rows
        self._det = None
        if check:
            d = self.det()
            if d.residue_valuation() is ZERO_TO_PRECISION:
                raise NotInvertibleError("determinant not certifiably invertible over Laurent series")

    # --- constructors ---
    @classmethod
    def from_terms(cls, ring, rows, prec: int, check: bool = True):
        """Entries may be Series, ints (constants) or {exp: coeff} dicts."""
        def conv(x):
            if isinstance(x, Series):
                return x
            if isinstance(x, dict):
                return Series.from_dict(ring, x, prec)
            return Series.from_dict(ring, {0: x}, prec)
        return cls([[conv(x) for x in row] for row in rows], check=check)

    @classmethod
    def identity(cls, ring, r: int, prec: int):
        return cls.from_terms(ring, [[1 if i == j else 0 for j in range(r)] for i in range(r)],
                              prec, check=False)

    @classmethod
    def diagonal(cls, ring, exponents: Sequence[int], prec: int):
        r = len(exponents)
        return cls.from_terms(ring, [[{exponents[i]: 1} if i == j else 0 for j in range(r)]
                                     for i in range(r)], prec, check=False)

    @classmethod
    def scalar(cls, s: Series, r: int):
        zero = Series.zero(s.ring, s.prec + 10 ** 6)
        return cls([[s if i == j else zero for j in range(r)] for i in range(r)], check=False)

    # --- basic data ---
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def prec(self) -> int:
        return min(x.prec for r in self.rows for x in r)

    def min_valuation(self):
        vals = [x.val for r in self.rows for x in r if x.coeffs]
        if not vals:
            return ZERO_TO_PRECISION
        return min(vals)

    def entries(self):
        return [x for r in self.rows for x in r]

    # --- arithmetic ---
    def __mul__(self, other):
        if isinstance(other, Series):
            return LoopElement([[x * other for x in r] for r in self.rows], check=False)
        if not isinstance(other, LoopElement):
            return NotImplemented
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new = []
            for col in cols:
                acc = row[0] * col[0]
                for a, b in zip(row[1:], col[1:]):
                    acc = acc + a * b
                new.append(acc)
            out.append(new)
        return LoopElement(out, check=False)

    def __rmul__(self, other):
        if isinstance(other, Series):
            return LoopElement([[other * x for x in r] for r in self.rows], check=False)
        return NotImplemented

    def __add__(self, other):
        return LoopElement([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           check=False)

    def __sub__(self, other):
        return LoopElement([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           check=False)

    def __neg__(self):
        return LoopElement([[-a for a in r] for r in self.rows], check=False)

    def det(self) -> Series:
        if self._det is None:
            self._det = _det(self.rows)
        return self._det

    def minors(self, j: int) -> dict:
        """{(rows, cols): minor} for all j x j minors."""
        t = _minor_table(self.rows, j)
        return {k: v for k, v in t.items() if len(k[0]) == j}

    def inverse(self) -> "LoopElement":
        r = self.rank
        dinv = self.det().inverse()
        if r == 1:
            return LoopElement([[dinv]], check=False)
        if r == 2:
            (a, b), (c, d) = self.rows
            return LoopElement([[d * dinv, -b * dinv], [-c * dinv, a * dinv]], check=False)
        t = _minor_table(self.rows, r - 1)
        full = tuple(range(r))
        out = [[None] * r for _ in range(r)]
        for i in range(r):
            for j in range(r):
                m = t[(full[:j] + full[j + 1:], full[:i] + full[i + 1:])]
                c = m * dinv
                out[i][j] = -c if (i + j) % 2 else c
        return LoopElement(out, check=False)

    def frobenius(self, k: int = 1) -> "LoopElement":
        return LoopElement([[x.frobenius(k) for x in r] for r in self.rows], check=False)

    def truncate(self, prec: int) -> "LoopElement":
        return LoopElement([[x.truncate(prec) for x in r] for r in self.rows], check=False)

    def change_ring(self, ring) -> "LoopElement":
        emb = ring.embed_from(self.ring)
        return LoopElement([[x.map_coeffs(emb, ring) for x in r] for r in self.rows], check=False)

    def reduce(self) -> "LoopElement":
        return LoopElement([[x.reduce() for x in r] for r in self.rows], check=False)

    def map(self, fn) -> "LoopElement":
        return LoopElement([[fn(x) for x in r] for r in self.rows], check=False)

    def transpose(self) -> "LoopElement":
        return LoopElement(list(zip(*self.rows)), check=False)

    def agrees(self, other: "LoopElement", upto: int | None = None) -> bool:
        return self.rank == other.rank and all(
            a.agrees(b, upto) for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def is_integral(self) -> bool:
        return all(x.is_integral() for r in self.rows for x in r)

    def is_integrally_invertible(self) -> bool:
        """Integral with integral inverse, i.e. an element of GL_r(R[[z]])."""
        if not self.is_integral():
            return False
        d = self.det()
        return d.is_integral() and self.ring.is_unit(d.coeff(0))

    def to_json(self) -> list:
        return [[x.to_json() for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, ring, obj, check: bool = True):
        return cls([[Series.from_json(ring, x) for x in r] for r in obj], check=check)

    def __eq__(self, other):
        return isinstance(other, LoopElement) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "LoopElement([\n  " + ",\n  ".join(
            "[" + ", ".join(repr(x) for x in r) + "]" for r in self.rows) + "])"


# --- operations ---

def exterior_power(g: LoopElement, j: int):
    """Matrix of j x j minors, row/column subsets in lexicographic order."""
    r = g.rank
    if not 1 <= j <= r:
        raise ValueError(f"exterior power index {j} outside 1..{r}")
    if j == r:
        return ((g.det(),),)
    subsets = list(combinations(range(r), j))
    t = _minor_table(g.rows, j)
    return tuple(tuple(t[(I, J)] for J in subsets) for I in subsets)


def smith_form(g: LoopElement):
    """g = U * diag(z^mu_1, ..., z^mu_r) * V with U, V integral with integral
    inverses and mu weakly decreasing.  Pivots: lowest valuation, ties broken
    by smallest row then column index."""
    R = g.ring
    if R.kind != "finite-field":
        raise TypeError("Smith form needs field coefficients; reduce the matrix first")
    r = g.rank
    A = [list(row) for row in g.rows]
    big = g.prec + 10 ** 6
    one = Series.constant(R, R.one, big)
    zero = Series.zero(R, big)
    U = [[one if i == j else zero for j in range(r)] for i in range(r)]
    V = [[one if i == j else zero for j in range(r)] for i in range(r)]
    exps = []
    for k in range(r):
        best = None
        horizon = None
        for i in range(k, r):
            for j in range(k, r):
                x = A[i][j]
                if x.coeffs:
                    if best is None or x.val < best[0]:
                        best = (x.val, i, j)
                else:
                    horizon = x.prec if horizon is None else min(horizon, x.prec)
        if best is None:
            raise PrecisionError("insufficient precision: remaining block is zero to precision")
        v, pi, pj = best
        if horizon is not None and horizon < v:
            raise PrecisionError(
                f"insufficient precision: pivot valuation {v} not certified (horizon {horizon})")
        if pi != k:
            A[k], A[pi] = A[pi], A[k]
            for row in U:
                row[k], row[pi] = row[pi], row[k]
        if pj != k:
            for row in A:
                row[k], row[pj] = row[pj], row[k]
            V[k], V[pj] = V[pj], V[k]
        p = A[k][k]
        pinv = p.inverse()
        for i in range(k + 1, r):
            if A[i][k].is_zero():
                continue
            t = A[i][k] * pinv
            A[i] = [A[i][c] - t * A[k][c] if c > k else A[i][c] for c in range(r)]
            A[i][k] = Series.zero(R, t.prec + v)
            for row in U:
                row[k] = row[k] + t * row[i]
        for j in range(k + 1, r):
            if A[k][j].is_zero():
                continue
            t = pinv * A[k][j]
            V[k] = [V[k][c] + t * V[j][c] for c in range(r)]
            A[k][j] = Series.zero(R, t.prec + v)
        u = p.shift(-v)
        V[k] = [u * x for x in V[k]]
        A[k][k] = Series.monomial(R, v, u.prec + v)
        exps.append(v)
    order = sorted(range(r), key=lambda i: -exps[i])
    mu = Coweight(tuple(exps[i] for i in order))
    U = [[row[i] for i in order] for row in U]
    V = [V[i] for i in order]
    return LoopElement(U), mu, LoopElement(V)


def relative_position(g: LoopElement) -> Coweight:
    """The dominant mu with g in K z^mu K, K = GL_r(F[[z]])."""
    return smith_form(g)[1]


def relative_position_from_minors(g: LoopElement) -> Coweight:
    """Elementary divisors from minimal minor valuations (determinantal
    divisors); independent of the Smith elimination."""
    r = g.rank
    t = _minor_table(g.rows, r)
    mins = []
    for j in range(1, r + 1):
        known, horizon = None, None
        for (I, J), m in t.items():
            if len(I) != j:
                continue
            if m.coeffs:
                known = m.val if known is None else min(known, m.val)
            else:
                horizon = m.prec if horizon is None else min(horizon, m.prec)
        if known is None or (horizon is not None and horizon < known):
            raise PrecisionError(f"insufficient precision for the {j} x {j} minors")
        mins.append(known)
    divisors = [mins[0]] + [mins[j] - mins[j - 1] for j in range(1, r)]
    return Coweight.sorted(divisors)


def _integral_after(m: Series, s: int, zeta) -> bool:
    """Is m in (z - zeta)^s R[[z]]?  (zeta None means plain z.)"""
    if zeta is None:
        return m.valuation_at_least(s)
    zt = _ztilde(m.ring, zeta, m.prec + abs(s) + 2)
    return (m * zt ** (-s)).is_integral()


def _ztilde(R, zeta, prec):
    return Series.from_dict(R, {0: R.neg(zeta), 1: R.one}, prec)


def bounded_by(g: LoopElement, bound: BoundSpec) -> bool:
    """Exterior-power criterion: every j x j minor lies in z^{s_j} R[[z]] with
    s_j the sum of the j smallest parts of mu, and det g has valuation
    exactly sum(mu).  "eq" additionally requires the minimum to be attained,
    i.e. relative position exactly mu (checked on the reduction)."""
    mu = bound.coweight
    r = g.rank
    if mu.rank != r:
        raise ValueError(f"coweight rank {mu.rank} does not match matrix rank {r}")
    parts = mu.parts
    zeta = bound.zeta
    if zeta is not None and g.ring.kind == "finite-field":
        raise TypeError("a (z - zeta) bound needs a nilpotent coefficient ring")
    t = _minor_table(g.rows, r - 1) if r > 1 else {}
    for j in range(1, r):
        s = sum(parts[r - j:])
        for (I, J), m in t.items():
            if len(I) == j and not _integral_after(m, s, zeta):
                return False
    total = mu.total
    d = g.det()
    R = g.ring
    if zeta is None and R.kind == "finite-field":
        v = d.valuation()
        if v is ZERO_TO_PRECISION:
            raise PrecisionError("determinant is zero to precision")
        if v != total:
            return False
    else:
        u = d * (_ztilde(R, zeta, d.prec + abs(total) + 2) if zeta is not None
                 else Series.z(R, d.prec + abs(total) + 2)) ** (-total)
        if not u.is_integral() or not R.is_unit(u.coeff(0)):
            return False
    if bound.relation == "eq":
        return relative_position_from_minors(g.reduce()) == mu
    return True
