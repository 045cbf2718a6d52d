"""Coefficient rings carrying a q-Frobenius.

Three kinds share one duck-typed interface (zero/one/add/mul/inv/frob/...):

* ``FiniteFieldRing``: F_{p^d} with Frobenius x -> x^q, q = p^e, e | d.
* ``NilpotentRing``: F_{p^d}[xi]/(xi^k); elements are tuples of length k.
* ``DualNumbers``: the case k = 2 with generator ``eps``.
"""
from __future__ import annotations

import functools
import random
from typing import Sequence

from .fields import FieldSpec, embedding, get_field


class FiniteFieldRing:
    kind = "finite-field"
    nilpotency = 1

    def __init__(self, spec: FieldSpec, base_degree: int = 1):
        if spec.d % base_degree:
            raise ValueError("base degree must divide the field degree")
        self.spec = spec
        self.field = get_field(spec)
        self.base_degree = base_degree
        self.p = spec.p
        self.q = spec.p ** base_degree
        self.zero, self.one = 0, 1
        F = self.field
        self.add, self.sub, self.neg, self.mul = F.add, F.sub, F.neg, F.mul
        e = base_degree
        if F._frob_table is not None and e == 1:
            t = F._frob_table
            self.frob = t.__getitem__
        else:
            self.frob = lambda a: F.frob(a, e)

    @property
    def residue_ring(self) -> "FiniteFieldRing":
        return self

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        return a != 0

    def inv(self, a):
        return self.field.inv(a)

    def from_int(self, n: int):
        return n % self.p

    def residue(self, a):
        return a

    def lift(self, a):
        return a

    def frob_power(self, a, k: int):
        return self.field.frob(a, self.base_degree * k)

    def random(self, rng: random.Random):
        return rng.randrange(self.field.order)

    def to_json(self, a):
        return self.field.digits(a)

    def from_json(self, obj):
        if isinstance(obj, int):
            return obj % self.field.order
        return self.field.from_digits(obj)

    def embed_from(self, other) -> callable:
        """Map from ``other``'s elements into this ring."""
        if other == self:
            return lambda a: a
        if isinstance(other, FiniteFieldRing):
            return embedding(other.spec, self.spec)
        raise TypeError(f"cannot embed {other} into {self}")

    def __eq__(self, other):
        return (isinstance(other, FiniteFieldRing) and type(other) is type(self)
                and self.spec == other.spec and self.base_degree == other.base_degree)

    def __hash__(self):
        return hash(("ff", self.spec, self.base_degree))

    def __repr__(self):
        return f"F_{self.field.order}(q={self.q})"


class NilpotentRing:
    """F[xi]/(xi^k) with Frobenius sum a_i xi^i -> sum a_i^q xi^(iq)."""

    kind = "nilpotent-extension"

    def __init__(self, spec: FieldSpec, order: int, name: str = "xi",
                 base_degree: int = 1):
        if order < 1:
            raise ValueError("nilpotency order must be >= 1")
        self.residue_ring = FiniteFieldRing(spec, base_degree)
        self.spec = spec
        self.field = self.residue_ring.field
        self.base_degree = base_degree
        self.p, self.q = spec.p, self.residue_ring.q
        self.nilpotency = order
        self.name = name
        k = order
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        F = self.field
        self._fadd, self._fmul = F.add, F.mul
        if self.q >= k and any(self.frob(self.gen())):
            raise ArithmeticError("Frobenius fails to annihilate the generator")

    def gen(self):
        if self.nilpotency == 1:
            return self.zero
        return (0, 1) + (0,) * (self.nilpotency - 2)

    def add(self, a, b):
        fa = self._fadd
        return tuple(fa(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        F = self.field
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        F = self.field
        return tuple(F.neg(x) for x in a)

    def mul(self, a, b):
        k, fa, fm = self.nilpotency, self._fadd, self._fmul
        out = [0] * k
        for i, x in enumerate(a):
            if x:
                for j in range(k - i):
                    y = b[j]
                    if y:
                        out[i + j] = fa(out[i + j], fm(x, y))
        return tuple(out)

    def is_zero(self, a) -> bool:
        return not any(a)

    def is_unit(self, a) -> bool:
        return a[0] != 0

    def inv(self, a):
        if a[0] == 0:
            raise ZeroDivisionError("non-unit in nilpotent extension")
        F = self.field
        k = self.nilpotency
        inv0 = F.inv(a[0])
        out = [0] * k
        out[0] = inv0
        for n in range(1, k):
            s = 0
            for i in range(1, n + 1):
                if a[i]:
                    s = F.add(s, F.mul(a[i], out[n - i]))
            out[n] = F.neg(F.mul(s, inv0))
        return tuple(out)

    def frob(self, a):
        k, q, F = self.nilpotency, self.q, self.field
        out = [0] * k
        e = self.base_degree
        for i, x in enumerate(a):
            if x and i * q < k:
                out[i * q] = F.frob(x, e)
        return tuple(out)

    def frob_power(self, a, n: int):
        for _ in range(n):
            a = self.frob(a)
        return a

    def from_int(self, n: int):
        return (n % self.p,) + (0,) * (self.nilpotency - 1)

    def scalar(self, c):
        """Embed a residue-field element."""
        return (c,) + (0,) * (self.nilpotency - 1)

    lift = scalar

    def residue(self, a):
        return a[0]

    def random(self, rng: random.Random):
        return tuple(rng.randrange(self.field.order) for _ in range(self.nilpotency))

    def to_json(self, a):
        return [self.field.digits(x) for x in a]

    def from_json(self, obj):
        if isinstance(obj, int):
            return self.scalar(obj % self.field.order)
        vals = [x if isinstance(x, int) else self.field.from_digits(x) for x in obj]
        vals = vals[: self.nilpotency] + [0] * (self.nilpotency - len(vals))
        return tuple(vals)

    def embed_from(self, other):
        if other == self:
            return lambda a: a
        if isinstance(other, FiniteFieldRing):
            emb = self.residue_ring.embed_from(other)
            return lambda a: self.scalar(emb(a))
        raise TypeError(f"cannot embed {other} into {self}")

    def __eq__(self, other):
        return (isinstance(other, NilpotentRing) and self.spec == other.spec
                and self.nilpotency == other.nilpotency
                and self.base_degree == other.base_degree and self.name == other.name)

    def __hash__(self):
        return hash(("nil", self.spec, self.nilpotency, self.base_degree, self.name))

    def __repr__(self):
        return f"F_{self.field.order}[{self.name}]/({self.name}^{self.nilpotency})"


class DualNumbers(NilpotentRing):
    kind = "dual-numbers"

    def __init__(self, spec: FieldSpec, base_degree: int = 1):
        super().__init__(spec, 2, "eps", base_degree)

    def __repr__(self):
        return f"F_{self.field.order}[eps]"


@functools.lru_cache(maxsize=None)
def finite_field(p: int, d: int = 1, base_degree: int = 1,
                 modulus: tuple | None = None) -> FiniteFieldRing:
    return FiniteFieldRing(FieldSpec(p, d, modulus), base_degree)


def ring_from_descriptor(desc: dict):
    """Build a coefficient ring from {"q", "ext", "modulus"?, "ring"?}."""
    from .fields import prime_factors

    q = int(desc["q"])
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"q={q} is not a prime power")
    p = ps[0]
    e = 0
    while p ** e < q:
        e += 1
    ext = int(desc.get("ext", 1))
    modulus = desc.get("modulus")
    spec = FieldSpec(p, e * ext, tuple(modulus) if modulus else None)
    kind = desc.get("ring", "finite-field")
    if kind == "finite-field":
        return FiniteFieldRing(spec, e)
    if kind == "dual-numbers":
        return DualNumbers(spec, e)
    if kind == "nilpotent-extension":
        return NilpotentRing(spec, int(desc["nilpotency"]), desc.get("generator", "xi"), e)
    raise ValueError(f"unknown ring kind {kind!r}")


def ring_descriptor(ring) -> dict:
    out = {"q": ring.q, "ext": ring.spec.d // ring.base_degree,
           "modulus": list(ring.spec.modulus), "ring": ring.kind}
    if ring.kind == "nilpotent-extension":
        out["nilpotency"] = ring.nilpotency
        out["generator"] = ring.name
    return out


def coerce_elements(values: Sequence, ring):
    return [ring.from_json(v) for v in values]
