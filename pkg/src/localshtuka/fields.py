"""Finite fields F_{p^d} as power-basis quotients F_p[t]/(modulus).

Elements are plain ints: the element a_0 + a_1 t + ... + a_{d-1} t^{d-1}
is stored as a_0 + a_1 p + ... + a_{d-1} p^{d-1}.  Small fields use lookup
tables; large ones fall back to polynomial arithmetic on digit lists (or
carry-less products when p = 2).
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

TABLE_LIMIT = 256          # full add/mul tables up to this order
LOG_LIMIT = 1 << 16        # exp/log tables up to this order


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p as lists, lowest degree first, no trailing zeros ---

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_sub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                  for i in range(n)])


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def poly_divmod(a, b, p):
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        _trim(a)
    return _trim(q), a


def poly_mod(a, b, p):
    return poly_divmod(a, b, p)[1]


def poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def poly_powmod(a, e, m, p):
    result, base = [1], poly_mod(a, m, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), m, p)
        base = poly_mod(poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Ben-Or test: f of degree d is irreducible iff gcd(f, x^{p^i} - x) = 1
    for all 1 <= i <= d/2."""
    f = _trim([c % p for c in poly])
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    xp = x
    for _ in range(d // 2):
        xp = poly_powmod(xp, p, f, p)
        if len(poly_gcd(f, poly_sub(xp, x, p), p)) > 1:
            return False
    return True


def is_irreducible_trial(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= d/2."""
    f = _trim([c % p for c in poly])
    d = len(f) - 1
    if d < 1:
        return False
    for k in range(1, d // 2 + 1):
        for n in range(p ** k):
            g = [(n // p ** i) % p for i in range(k)] + [1]
            if not poly_mod(f, g, p):
                return False
    return True


@functools.lru_cache(maxsize=None)
def default_modulus(p: int, d: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree d, comparing
    coefficients from t^{d-1} down to t^0."""
    for n in range(p ** d):
        low = [(n // p ** (d - 1 - i)) % p for i in range(d)][::-1]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise ValueError(f"no irreducible polynomial of degree {d} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    """Field F_{p^d} given by a monic irreducible modulus (low degree first)."""
    p: int
    d: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.d < 1:
            raise ValueError("extension degree must be >= 1")
        if self.modulus is None:
            object.__setattr__(self, "modulus", default_modulus(self.p, self.d))
        mod = tuple(int(c) % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.d + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree d")
        if not is_irreducible(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible over F_{self.p}")

    @property
    def order(self) -> int:
        return self.p ** self.d

    def field(self) -> "GF":
        return get_field(self)


@functools.lru_cache(maxsize=None)
def get_field(spec: FieldSpec) -> "GF":
    return GF(spec)


class GF:
    """Arithmetic in F_{p^d}; use ``get_field`` to share instances."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p, self.d = spec.p, spec.d
        self.order = spec.order
        self.modulus = list(spec.modulus)
        p, q = self.p, self.order
        self.zero, self.one = 0, 1
        self._pw = [p ** i for i in range(self.d + 1)]
        if self.d == 1:
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.neg = lambda a: (-a) % p
            self.mul = lambda a, b: a * b % p
            self._inv = lambda a: pow(a, p - 2, p)
        else:
            if p == 2:
                self.add = self.sub = lambda a, b: a ^ b
                self.neg = lambda a: a
            else:
                self.add = self._add_digits
                self.sub = lambda a, b: self._add_digits(a, self._neg_digits(b))
                self.neg = self._neg_digits
            self.mul = self._mul_poly
            self._inv = lambda a: self._pow_generic(a, q - 2)
            if q <= LOG_LIMIT:
                self._build_log_tables()
            if q <= TABLE_LIMIT:
                add_t = [self.add(a, b) for a in range(q) for b in range(q)]
                mul_t = [self.mul(a, b) for a in range(q) for b in range(q)]
                neg_t = [self.neg(a) for a in range(q)]
                self.add = lambda a, b: add_t[a * q + b]
                self.mul = lambda a, b: mul_t[a * q + b]
                self.neg = lambda a: neg_t[a]
                self.sub = lambda a, b: add_t[a * q + neg_t[b]]
        self._frob_table = None
        if q <= LOG_LIMIT:
            self._frob_table = [self.pow(a, p) for a in range(q)]

    # --- digit-level helpers ---
    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.d):
            out.append(a % p)
            a //= p
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        ds = list(ds)
        if len(ds) > self.d:
            ds = poly_mod(_trim([c % self.p for c in ds]), self.modulus, self.p)
        return sum((c % self.p) * self._pw[i] for i, c in enumerate(ds))

    def _add_digits(self, a, b):
        p, out, i = self.p, 0, 0
        while a or b:
            out += ((a % p + b % p) % p) * self._pw[i]
            a //= p
            b //= p
            i += 1
        return out

    def _neg_digits(self, a):
        p, out, i = self.p, 0, 0
        while a:
            out += ((-(a % p)) % p) * self._pw[i]
            a //= p
            i += 1
        return out

    def _mul_poly(self, a, b):
        if not a or not b:
            return 0
        if self.p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
            m = self.spec_mod_int
            d = self.d
            while r.bit_length() > d:
                r ^= m << (r.bit_length() - 1 - d)
            return r
        prod = poly_mul(self.digits(a), self.digits(b), self.p)
        return self.from_digits(poly_mod(prod, self.modulus, self.p))

    @functools.cached_property
    def spec_mod_int(self) -> int:
        return sum(c << i for i, c in enumerate(self.modulus))

    def _build_log_tables(self):
        q = self.order
        factors = prime_factors(q - 1)
        gen = None
        for g in range(2, q):
            if all(self._pow_generic(g, (q - 1) // f) != 1 for f in factors):
                gen = g
                break
        exp = [0] * (2 * q)
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_poly(x, gen)
        for i in range(q - 1, 2 * q):
            exp[i] = exp[i - (q - 1)]
        self.generator = gen

        def mul(a, b):
            if a == 0 or b == 0:
                return 0
            return exp[log[a] + log[b]]

        def inv(a):
            return exp[(q - 1) - log[a]]

        self.mul = mul
        self._inv = inv

    # --- public arithmetic ---
    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return self._inv(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def _pow_generic(self, a, e):
        result = 1
        mul = self._mul_poly if self.d > 1 else (lambda x, y: x * y % self.p)
        while e:
            if e & 1:
                result = mul(result, a)
            a = mul(a, a)
            e >>= 1
        return result

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result, mul = 1, self.mul
        while e:
            if e & 1:
                result = mul(result, a)
            a = mul(a, a)
            e >>= 1
        return result

    def frob(self, a: int, k: int = 1) -> int:
        """a -> a^(p^k)."""
        k %= self.d
        if self._frob_table is not None:
            t = self._frob_table
            for _ in range(k):
                a = t[a]
            return a
        return self.pow(a, self.p ** k)

    def from_int(self, n: int) -> int:
        return n % self.p

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    def gen(self) -> int:
        """The class of t (or 0 for the prime field, where t is the root of x)."""
        return self.p if self.d > 1 else 0

    def __repr__(self):
        return f"GF({self.p}^{self.d})"


def _subfield_basis(small_d: int, big: GF) -> list[int]:
    """F_p-basis of the degree-small_d subfield of big, via the trace map."""
    p, D = big.p, big.d
    basis: list[list[int]] = []
    out = []
    for k in range(D):
        y = big.pow(big.p, k) if D > 1 else 1
        tr = 0
        for i in range(D // small_d):
            tr = big.add(tr, big.frob(y, small_d * i))
        vec = big.digits(tr)
        if _independent(basis, vec, p):
            basis.append(vec)
            out.append(tr)
        if len(out) == small_d:
            break
    return out


def _independent(basis, vec, p):
    rows = [list(b) for b in basis] + [list(vec)]
    return _rank_mod_p(rows, p) == len(rows)


def _rank_mod_p(rows, p):
    rows = [r[:] for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


@functools.lru_cache(maxsize=None)
def embedding(small: FieldSpec, big: FieldSpec) -> Callable[[int], int]:
    """Field homomorphism F_small -> F_big (requires small.d | big.d)."""
    if small.p != big.p or big.d % small.d:
        raise ValueError(f"no embedding of F_{small.order} into F_{big.order}")
    if small == big:
        return lambda a: a
    if small.d == 1:
        return lambda a: a
    K, L = get_field(small), get_field(big)
    if small.order > LOG_LIMIT:
        raise ValueError("subfield too large for the embedding search")
    basis = _subfield_basis(small.d, L)
    p = L.p
    root = None
    for n in range(1, p ** small.d):
        x = 0
        for i, b in enumerate(basis):
            c = (n // p ** i) % p
            if c:
                x = L.add(x, L.mul(L.from_int(c), b))
        acc = 0
        for c in reversed(small.modulus):
            acc = L.add(L.mul(acc, x), L.from_int(c))
        if acc == 0:
            root = x
            break
    if root is None:  # pragma: no cover - guaranteed by field theory
        raise ArithmeticError("no root of the subfield modulus found")
    powers = [L.pow(root, i) for i in range(small.d)]

    @functools.lru_cache(maxsize=None)
    def emb(a: int) -> int:
        out = 0
        for i, c in enumerate(K.digits(a)):
            if c:
                out = L.add(out, L.mul(L.from_int(c), powers[i]))
        return out

    return emb
