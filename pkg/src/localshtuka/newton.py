"""Twisted powers, Newton slopes, decency, Kottwitz invariant and J_b."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetExceededError, PrecisionError
from .semilinear import Coweight, LoopElement, _minor_table, relative_position
from .series import ZERO_TO_PRECISION


@dataclass(frozen=True)
class SlopeVector:
    """Weakly decreasing rational slopes lambda_1 >= ... >= lambda_r."""
    slopes: tuple
    stable_at: int | None = field(default=None, compare=False)

    def __post_init__(self):
        s = tuple(Fraction(x) for x in self.slopes)
        object.__setattr__(self, "slopes", s)
        if any(a < b for a, b in zip(s, s[1:])):
            raise ValueError(f"slopes {s} are not weakly decreasing")

    @property
    def total(self) -> Fraction:
        return sum(self.slopes, Fraction(0))

    def dominated_by(self, mu: Coweight) -> bool:
        """Newton <= Hodge: partial sums of the largest slopes bounded by
        those of mu, with equal totals."""
        if len(mu) != len(self.slopes) or self.total != mu.total:
            return False
        a, b = Fraction(0), 0
        for x, y in zip(self.slopes, mu.parts):
            a += x
            b += y
            if a > b:
                return False
        return True

    def breakpoints_integral(self) -> bool:
        """Each block of equal slopes has integral sum."""
        acc, i, s = Fraction(0), 0, self.slopes
        while i < len(s):
            j = i
            while j < len(s) and s[j] == s[i]:
                j += 1
            acc += s[i] * (j - i)
            if acc.denominator != 1:
                return False
            i = j
        return True

    def to_json(self) -> list:
        return [[x.numerator, x.denominator] for x in self.slopes]

    def __iter__(self):
        return iter(self.slopes)

    def __len__(self):
        return len(self.slopes)


def twisted_power(b: LoopElement, n: int) -> LoopElement:
    """N_n = b * sigma(b) * ... * sigma^{n-1}(b)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = b
    for k in range(1, n):
        out = out * b.frobenius(k)
    return out


def kottwitz_gl(b: LoopElement) -> int:
    """val(det b)."""
    d = b.det()
    if b.ring.kind != "finite-field":
        d = d.reduce()
    v = d.valuation()
    if v is ZERO_TO_PRECISION:
        raise PrecisionError("determinant is zero to precision")
    return v


def _check_precision(b: LoopElement, budget: int):
    vmin = b.min_valuation()
    if vmin is ZERO_TO_PRECISION:
        raise PrecisionError("matrix is zero to precision")
    vdet = kottwitz_gl(b)
    r = b.rank
    # N_n loses up to n*|vmin| of horizon; its largest elementary divisor is
    # at most n*(vdet - (r-1)*vmin)
    need = budget * (vdet - (r - 1) * vmin) - budget * min(vmin, 0)
    if b.prec <= need:
        raise PrecisionError(
            f"insufficient precision: need prec > {need} for budget {budget}, have {b.prec}")
    return vdet


def _hull_slopes(points) -> tuple:
    """Slopes of the lower convex hull of (k, v_k), k = 0..r, each repeated
    by its segment length, largest first."""
    hull = [points[0]]
    for pt in points[1:]:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    out = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        out += [Fraction(y2 - y1, x2 - x1)] * (x2 - x1)
    return tuple(sorted(out, reverse=True))


def characteristic_slopes(b: LoopElement) -> tuple:
    """Exact slopes from the characteristic polynomial of N_m, where sigma^m
    fixes the coefficient field F_{q^m}: the Newton polygon of
    det(x - N_m), scaled by 1/m."""
    R = b.ring
    m = R.spec.d // R.base_degree
    r = b.rank
    N = twisted_power(b, m)
    t = _minor_table(N.rows, r)
    known = {0: 0}
    horizon = {}
    for k in range(1, r + 1):
        e = None
        for (I, J), minor in t.items():
            if len(I) == k and I == J:
                e = minor if e is None else e + minor
        if e.coeffs:
            known[k] = e.val
        else:
            horizon[k] = e.prec
    if r not in known:
        raise PrecisionError("determinant is zero to precision")
    slopes = _hull_slopes(sorted(known.items()))
    # a coefficient known only to be O(z^h) must lie on or above the hull
    acc, line = Fraction(0), {0: Fraction(0)}
    for k, s in enumerate(reversed(slopes), start=1):
        acc += s
        line[k] = acc
    for k, h in horizon.items():
        if h < line[k]:
            raise PrecisionError(
                f"insufficient precision for the characteristic polynomial at degree {k}")
    return tuple(s / m for s in slopes)


def newton_slopes(b: LoopElement, budget: int = 16) -> SlopeVector:
    """Slopes as the stable value of relative_position(N_n)/n, rounded to
    denominators <= r; stable means r consecutive agreements with the
    right total and integral breakpoints.  A stable value is accepted only
    if it matches the characteristic-polynomial slopes, which rules out
    early coincidences."""
    if b.ring.kind != "finite-field":
        raise TypeError("Newton slopes need a finite-field base")
    r = b.rank
    vdet = _check_precision(b, budget)
    exact = characteristic_slopes(b)
    last, streak = None, 0
    N = None
    for n in range(1, budget + 1):
        N = b if N is None else N * b.frobenius(n - 1)
        # the relative position only depends on N mod z^(mu_1 + 1), and
        # mu_1 <= val det N - (r - 1) * min val N
        cut = n * vdet - (r - 1) * N.min_valuation() + 1
        mu = relative_position(N.truncate(min(cut, N.prec)))
        cur = tuple(Fraction(x, n).limit_denominator(r) for x in mu.parts)
        streak = streak + 1 if cur == last else 1
        last = cur
        if streak >= r and sum(cur) == vdet and cur == exact:
            sv = SlopeVector(cur, n)
            if sv.breakpoints_integral():
                return sv
    raise BudgetExceededError(f"did not stabilize within budget {budget}")


def check_decency(b: LoopElement, s: int, slopes: SlopeVector | None = None,
                  budget: int = 16) -> bool:
    """N_s equals diag(z^{s*lambda_i}) exactly (in some order)."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if slopes is None:
        slopes = newton_slopes(b, budget)
    target = []
    for lam in slopes:
        x = lam * s
        if x.denominator != 1:
            return False
        target.append(int(x))
    N = twisted_power(b, s)
    R = N.ring
    exps = []
    for i in range(N.rank):
        for j in range(N.rank):
            e = N[i, j]
            if i != j:
                if not e.is_zero():
                    return False
                continue
            terms = e.terms()
            if len(terms) != 1:
                return False
            (k, c), = terms.items()
            if c != R.one:
                return False
            exps.append(k)
    for i in range(N.rank):
        if N[i, i].prec <= exps[i]:
            raise PrecisionError("diagonal entry not certified")
    return sorted(exps) == sorted(target)


def decency_index(b: LoopElement, budget: int = 16, slopes: SlopeVector | None = None):
    """Smallest s <= budget with check_decency(b, s), else None."""
    if slopes is None:
        slopes = newton_slopes(b, budget)
    for s in range(1, budget + 1):
        if check_decency(b, s, slopes):
            return s
    return None


def in_Jb(g: LoopElement, b: LoopElement) -> bool:
    """g^{-1} * b * sigma(g) == b to precision."""
    if g.rank != b.rank or g.ring != b.ring:
        raise ValueError("rank or ring mismatch")
    return (g.inverse() * b * g.frobenius()).agrees(b)
