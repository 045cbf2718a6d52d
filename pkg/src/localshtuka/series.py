"""Truncated Laurent series in z over a Frobenius coefficient ring.

A series knows its coefficients for exponents ``val .. prec-1``; everything
at or beyond ``prec`` is unknown.  Arithmetic propagates the horizon and
never reports a coefficient it cannot guarantee.
"""
from __future__ import annotations

from typing import Iterable, Mapping

from .errors import NotInvertibleError, PrecisionError


class _ZeroToPrecision:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "zero-to-precision"

    def __reduce__(self):
        return (_ZeroToPrecision, ())


ZERO_TO_PRECISION = _ZeroToPrecision()


class TruncatedLaurentSeries:
    """sum_{e >= val} coeffs[e - val] z^e  +  O(z^prec)."""

    __slots__ = ("ring", "val", "prec", "coeffs")

    def __init__(self, ring, val: int, prec: int, coeffs: Iterable = ()):
        coeffs = list(coeffs)[: max(prec - val, 0)]
        if ring.kind == "finite-field":
            while coeffs and not coeffs[-1]:
                coeffs.pop()
            k = 0
            while k < len(coeffs) and not coeffs[k]:
                k += 1
        else:
            while coeffs and not any(coeffs[-1]):
                coeffs.pop()
            k = 0
            while k < len(coeffs) and not any(coeffs[k]):
                k += 1
        if k == len(coeffs):
            val, coeffs = prec, []
        else:
            val, coeffs = val + k, coeffs[k:]
        self.ring = ring
        self.val = val
        self.prec = prec
        self.coeffs = tuple(coeffs)

    # --- constructors ---
    @classmethod
    def zero(cls, ring, prec: int):
        return cls(ring, prec, prec)

    @classmethod
    def from_dict(cls, ring, terms: Mapping[int, object], prec: int):
        """Series with the given {exponent: coefficient} terms (ints are
        interpreted via ``ring.from_int``)."""
        terms = {e: coerce_coeff(ring, c) for e, c in terms.items()}
        if not terms:
            return cls.zero(ring, prec)
        lo = min(terms)
        if lo >= prec:
            return cls.zero(ring, prec)
        hi = min(prec, max(terms) + 1)
        coeffs = [ring.zero] * (hi - lo)
        for e, c in terms.items():
            if e < prec:
                coeffs[e - lo] = c
        return cls(ring, lo, prec, coeffs)

    @classmethod
    def monomial(cls, ring, exponent: int, prec: int, coeff=None):
        return cls.from_dict(ring, {exponent: ring.one if coeff is None else coeff}, prec)

    @classmethod
    def constant(cls, ring, c, prec: int):
        return cls.from_dict(ring, {0: c}, prec)

    @classmethod
    def z(cls, ring, prec: int):
        return cls.monomial(ring, 1, prec)

    # --- inspection ---
    def is_zero(self) -> bool:
        """True iff zero to the known precision."""
        return not self.coeffs

    def valuation(self):
        return ZERO_TO_PRECISION if not self.coeffs else self.val

    def residue_valuation(self):
        """Exponent of the first coefficient that is a unit of the ring; for
        field coefficients this is the valuation."""
        R = self.ring
        for i, c in enumerate(self.coeffs):
            if R.is_unit(c):
                return self.val + i
        return ZERO_TO_PRECISION

    def coeff(self, e: int):
        if e >= self.prec:
            raise PrecisionError(f"coefficient of z^{e} is beyond the horizon z^{self.prec}")
        i = e - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero

    __getitem__ = coeff

    def terms(self) -> dict:
        R = self.ring
        return {self.val + i: c for i, c in enumerate(self.coeffs) if not R.is_zero(c)}

    def is_integral(self) -> bool:
        """All coefficients of negative exponent vanish (certified)."""
        if self.coeffs:
            return self.val >= 0
        if self.prec < 0:
            raise PrecisionError("cannot certify integrality of a series known only below z^0")
        return True

    def valuation_at_least(self, bound: int) -> bool:
        """Certified test of val >= bound."""
        if self.coeffs:
            return self.val >= bound
        if self.prec >= bound:
            return True
        raise PrecisionError(f"valuation >= {bound} not certifiable below z^{self.prec}")

    # --- arithmetic ---
    def _check(self, other):
        if not isinstance(other, TruncatedLaurentSeries):
            return NotImplemented
        if other.ring != self.ring:
            raise TypeError(f"ring mismatch: {self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        if isinstance(other, int):
            other = self.constant(self.ring, self.ring.from_int(other), self.prec)
        other = self._check(other)
        if other is NotImplemented:
            return other
        R = self.ring
        prec = min(self.prec, other.prec)
        if not other.coeffs:
            return TruncatedLaurentSeries(R, self.val, prec, self.coeffs)
        if not self.coeffs:
            return TruncatedLaurentSeries(R, other.val, prec, other.coeffs)
        lo = min(self.val, other.val)
        n = min(prec, max(self.val + len(self.coeffs), other.val + len(other.coeffs))) - lo
        if n <= 0:
            return TruncatedLaurentSeries.zero(R, prec)
        out = [R.zero] * n
        add = R.add
        for src in (self, other):
            off = src.val - lo
            for i, c in enumerate(src.coeffs):
                if off + i >= n:
                    break
                out[off + i] = add(out[off + i], c)
        return TruncatedLaurentSeries(R, lo, prec, out)

    __radd__ = __add__

    def __neg__(self):
        R = self.ring
        return TruncatedLaurentSeries(R, self.val, self.prec, [R.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.constant(self.ring, self.ring.from_int(other), self.prec)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.ring.from_int(other))
        other = self._check(other)
        if other is NotImplemented:
            return other
        R = self.ring
        prec = min(self.prec + other.val, other.prec + self.val)
        if not self.coeffs or not other.coeffs:
            return TruncatedLaurentSeries.zero(R, prec)
        v = self.val + other.val
        n = min(prec - v, len(self.coeffs) + len(other.coeffs) - 1)
        if n <= 0:
            return TruncatedLaurentSeries.zero(R, prec)
        a, b = self.coeffs[:n], other.coeffs[:n]
        out = [R.zero] * n
        add, mul = R.add, R.mul
        if R.kind == "finite-field" and R.field.d == 1 and len(a) * len(b) > 64:
            out = _kronecker_mul(a, b, R.p)[:n]
        elif R.kind == "finite-field":
            bnz = [(j, y) for j, y in enumerate(b) if y]
            for i, x in enumerate(a):
                if x:
                    lim = n - i
                    for j, y in bnz:
                        if j >= lim:
                            break
                        out[i + j] = add(out[i + j], mul(x, y))
        else:
            bnz = [(j, y) for j, y in enumerate(b) if any(y)]
            for i, x in enumerate(a):
                if any(x):
                    lim = n - i
                    for j, y in bnz:
                        if j >= lim:
                            break
                        out[i + j] = add(out[i + j], mul(x, y))
        return TruncatedLaurentSeries(R, v, prec, out)

    __rmul__ = __mul__

    def scale(self, c):
        R = self.ring
        return TruncatedLaurentSeries(R, self.val, self.prec, [R.mul(c, x) for x in self.coeffs])

    def shift(self, k: int):
        """Multiply by z^k (exact)."""
        return TruncatedLaurentSeries(self.ring, self.val + k, self.prec + k, self.coeffs)

    def truncate(self, prec: int):
        return TruncatedLaurentSeries(self.ring, self.val, min(prec, self.prec), self.coeffs)

    def split(self, at: int = 0):
        """(part with exponents < at, part with exponents >= at), both with
        this series' horizon."""
        k = max(0, at - self.val)
        low = TruncatedLaurentSeries(self.ring, self.val, self.prec, self.coeffs[:k])
        high = TruncatedLaurentSeries(self.ring, self.val + k, self.prec, self.coeffs[k:])
        return low, high

    def inverse(self):
        R = self.ring
        if R.kind == "finite-field":
            return self._inverse_field()
        v = self.residue_valuation()
        if v is ZERO_TO_PRECISION:
            raise NotInvertibleError()
        y = self.shift(-v)
        n, y0 = y.split(0)
        y0inv = y0._inverse_field()
        if not n.coeffs:
            return y0inv.shift(-v)
        m = y0inv * n
        total = TruncatedLaurentSeries.constant(R, R.one, y0inv.prec)
        term = total
        neg_m = -m
        for _ in range(R.nilpotency):
            term = term * neg_m
            if not term.coeffs:
                break
            total = total + term
        return (y0inv * total).shift(-v)

    def _inverse_field(self):
        """Inverse when the lowest stored coefficient is a unit."""
        R = self.ring
        if not self.coeffs or not R.is_unit(self.coeffs[0]):
            raise NotInvertibleError()
        v = self.val
        n = self.prec - v
        c = self.coeffs
        inv0 = R.inv(c[0])
        if len(c) == 1:
            return TruncatedLaurentSeries(R, -v, self.prec - 2 * v, [inv0])
        out = [inv0]
        add, mul, neg = R.add, R.mul, R.neg
        for k in range(1, n):
            s = R.zero
            for i in range(1, min(k, len(c) - 1) + 1):
                s = add(s, mul(c[i], out[k - i]))
            out.append(neg(mul(inv0, s)))
        return TruncatedLaurentSeries(R, -v, self.prec - 2 * v, out)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = TruncatedLaurentSeries.constant(self.ring, self.ring.one, self.prec - self.val)
        base = self
        first = True
        while e:
            if e & 1:
                result = base if first else result * base
                first = False
            e >>= 1
            if e:
                base = base * base
        return result

    def frobenius(self, k: int = 1):
        R = self.ring
        cs = self.coeffs
        if k == 1:
            cs = [R.frob(c) for c in cs]
        else:
            cs = [R.frob_power(c, k) for c in cs]
        return TruncatedLaurentSeries(R, self.val, self.prec, cs)

    def map_coeffs(self, fn, ring):
        return TruncatedLaurentSeries(ring, self.val, self.prec, [fn(c) for c in self.coeffs])

    def change_ring(self, ring):
        return self.map_coeffs(ring.embed_from(self.ring), ring)

    def reduce(self):
        """Image under the residue map of a nilpotent coefficient ring."""
        R = self.ring
        if R.kind == "finite-field":
            return self
        return self.map_coeffs(R.residue, R.residue_ring)

    def agrees(self, other, upto: int | None = None) -> bool:
        """Coefficientwise equality below the common horizon (and ``upto``)."""
        h = min(self.prec, other.prec)
        if upto is not None:
            h = min(h, upto)
        lo = min(self.val, other.val)
        for e in range(lo, h):
            if self.coeff(e) != other.coeff(e):
                return False
        return True

    # --- dunder ---
    def __eq__(self, other):
        return (isinstance(other, TruncatedLaurentSeries) and self.ring == other.ring
                and self.val == other.val and self.prec == other.prec
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.val, self.prec, self.coeffs))

    def __repr__(self):
        R = self.ring
        parts = []
        for e, c in self.terms().items():
            cs = _fmt_coeff(R, c)
            mono = "" if e == 0 else ("z" if e == 1 else f"z^{e}")
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        parts.append(f"O(z^{self.prec})")
        return " + ".join(parts)

    # --- JSON ---
    def to_json(self) -> dict:
        R = self.ring
        return {"val": self.val, "prec": self.prec,
                "coeffs": [R.to_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, ring, obj: Mapping):
        return cls(ring, int(obj["val"]), int(obj["prec"]),
                   [ring.from_json(c) for c in obj["coeffs"]])


Series = TruncatedLaurentSeries


def _kronecker_mul(a, b, p: int) -> list:
    """Product of two F_p coefficient lists via one big-integer product;
    each slot is wide enough for the largest unreduced coefficient."""
    m = min(len(a), len(b))
    w = ((m * (p - 1) ** 2).bit_length() + 7) // 8
    x = int.from_bytes(b"".join(c.to_bytes(w, "little") for c in a), "little")
    y = int.from_bytes(b"".join(c.to_bytes(w, "little") for c in b), "little")
    n = len(a) + len(b) - 1
    raw = (x * y).to_bytes(n * w, "little")
    return [int.from_bytes(raw[i * w:(i + 1) * w], "little") % p for i in range(n)]


def coerce_coeff(R, c):
    """Ints name field elements by their base-p encoding (negatives are
    negated encodings); other values are taken as ring elements."""
    if not isinstance(c, int):
        return c
    if R.kind == "finite-field":
        if c < 0:
            return R.neg(c * -1 % R.field.order)
        return c % R.field.order
    if c < 0:
        return R.neg(R.scalar(-c % R.field.order))
    return R.scalar(c % R.field.order)


def _fmt_coeff(R, c):
    if R.kind == "finite-field":
        if R.field.d == 1:
            return str(c)
        return "(" + "+".join(f"{d}t^{i}" for i, d in enumerate(R.field.digits(c)) if d) + ")"
    bits = []
    for i, x in enumerate(c):
        if x:
            xs = _fmt_coeff(R.residue_ring, x)
            bits.append(xs if i == 0 else f"{xs}{R.name}^{i}")
    return "(" + "+".join(bits) + ")"


# --- operation-level API ---

def frobenius(x: Series) -> Series:
    return x.frobenius()


def add(x: Series, y: Series) -> Series:
    return x + y


def mul(x: Series, y: Series) -> Series:
    return x * y


def invert(x: Series) -> Series:
    return x.inverse()


def valuation(x: Series):
    return x.valuation()
