"""The norm-one torus T = {a^2 - b^2 z = 1} with group law
(a, b) * (c, d) = (ac + bdz, ad + bc), its Neron-model components, and the
norm computation N(mu(y - xi)) over F_p[xi]/(xi^k) with z = y^2, zeta = xi^2.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import CharacteristicError, NeronModelError, PrecisionError
from .fields import FieldSpec
from .rings import NilpotentRing
from .series import Series


class TorusElement:
    __slots__ = ("a", "b")

    def __init__(self, a: Series, b: Series, check: bool = True):
        if a.ring != b.ring:
            raise TypeError("components must share a ring")
        if a.ring.p == 2:
            raise CharacteristicError("the torus needs odd characteristic")
        self.a, self.b = a, b
        if check and not self.satisfies_equation():
            raise ValueError("a^2 - b^2 z != 1")

    @property
    def ring(self):
        return self.a.ring

    @property
    def prec(self) -> int:
        return min(self.a.prec, self.b.prec)

    def satisfies_equation(self) -> bool:
        a, b = self.a, self.b
        lhs = a * a - (b * b).shift(1)
        return lhs.agrees(Series.constant(a.ring, a.ring.one, lhs.prec))

    @classmethod
    def one(cls, ring, prec: int):
        return cls(Series.constant(ring, ring.one, prec), Series.zero(ring, prec), check=False)

    @classmethod
    def minus_one(cls, ring, prec: int):
        return cls(Series.constant(ring, ring.neg(ring.one), prec), Series.zero(ring, prec),
                   check=False)

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        return torus_mul(self, other)

    def inverse(self) -> "TorusElement":
        return TorusElement(self.a, -self.b, check=False)

    def agrees(self, other: "TorusElement", upto: int | None = None) -> bool:
        return self.a.agrees(other.a, upto) and self.b.agrees(other.b, upto)

    def truncate(self, prec: int) -> "TorusElement":
        return TorusElement(self.a.truncate(prec), self.b.truncate(prec), check=False)

    def to_json(self) -> dict:
        return {"a": self.a.to_json(), "b": self.b.to_json()}

    def __repr__(self):
        return f"TorusElement(a={self.a!r}, b={self.b!r})"


def torus_mul(x: TorusElement, y: TorusElement) -> TorusElement:
    a, b, c, d = x.a, x.b, y.a, y.b
    return TorusElement(a * c + (b * d).shift(1), a * d + b * c, check=False)


def component(x: TorusElement) -> int:
    """+1 or -1: the constant term of a, for x in the Neron model."""
    R = x.ring
    try:
        integral = x.a.is_integral() and x.b.is_integral()
    except PrecisionError:
        integral = False
    if not integral:
        raise NeronModelError("not in the Néron model: a or b is not integral in z")
    c = x.a.coeff(0)
    if c == R.one:
        return 1
    if c == R.neg(R.one):
        return -1
    raise NeronModelError("not in the Néron model: constant term of a is not ±1")


def check_integral(x: TorusElement) -> None:
    """Raise NeronModelError unless both components are integral in z."""
    if not (x.a.is_integral() and x.b.is_integral()):
        raise NeronModelError("not in the Néron model: z-non-integral coordinates")


def in_z_xi_over_z(x: TorusElement) -> bool:
    """Coordinates lie in F[[z, xi/z]]: the z^{-k} coefficient is divisible
    by xi^k."""
    R = x.ring
    for s in (x.a, x.b):
        for e, c in s.terms().items():
            if e < 0 and any(c[: min(-e, R.nilpotency)]):
                return False
    return True


# --- the norm computation ---

def _gamma(s: Series) -> Series:
    """y -> -y on a series in y."""
    R = s.ring
    return Series(R, s.val, s.prec,
                  [R.neg(c) if (s.val + i) % 2 else c for i, c in enumerate(s.coeffs)])


def _descend(s: Series) -> Series:
    """A series in y with only even powers, as a series in z = y^2."""
    R = s.ring
    terms = s.terms()
    if any(e % 2 for e in terms):
        raise ValueError("odd power of y survives the norm")
    return Series.from_dict(R, {e // 2: c for e, c in terms.items()}, (s.prec + 1) // 2)


def _ymul(x, y):
    """Torus product on pairs of y-series (z = y^2)."""
    a, b = x
    c, d = y
    return a * c + (b * d).shift(2), a * d + b * c


def torus_ring(p: int, d: int = 1, xi_order: int = 8) -> NilpotentRing:
    if p == 2:
        raise CharacteristicError("the torus needs odd characteristic")
    return NilpotentRing(FieldSpec(p, d), xi_order, "xi")


def _mu(R, t: Series, yprec: int):
    half = R.inv(R.from_int(2))
    tinv = t.inverse()
    a = (t + tinv).scale(half)
    yinv = Series.monomial(R, -1, yprec)
    b = (yinv * (tinv - t)).scale(half)
    return a, b


def norm_of_mu(R, xi, prec: int) -> TorusElement:
    """N(mu(y - xi)) = mu(t) * gamma(mu(t)), descended to z."""
    # inverting y - xi costs about one y-power per nilpotent step
    yprec = 2 * prec + 4 * R.nilpotency + 8
    t = Series.from_dict(R, {0: R.neg(xi), 1: R.one}, yprec)
    m = _mu(R, t, yprec)
    g = (_gamma(m[0]), _gamma(m[1]))
    a, b = _ymul(m, g)
    a, b = _descend(a), _descend(b)
    if min(a.prec, b.prec) < prec:
        raise PrecisionError(f"norm known only below z^{min(a.prec, b.prec)}")
    return TorusElement(a.truncate(prec), b.truncate(prec), check=False)


def norm_mu_element(p: int, d: int = 1, xi_order: int = 8, prec: int = 16) -> TorusElement:
    R = torus_ring(p, d, xi_order)
    return norm_of_mu(R, R.gen(), prec)


def closed_form_norm(R, prec: int) -> TorusElement:
    """((zeta + z)/(zeta - z), 2 xi/(zeta - z))."""
    xi = R.gen()
    zeta = R.mul(xi, xi)
    work = prec + 2 * R.nilpotency + 8
    zs = Series.from_dict(R, {0: zeta, 1: R.one}, work)
    inv = Series.from_dict(R, {0: zeta, 1: R.neg(R.one)}, work).inverse()
    a = (zs * inv).truncate(prec)
    b = inv.scale(R.add(xi, xi)).truncate(prec)
    return TorusElement(a, b, check=False)


def closed_form_ratio(R, prec: int) -> TorusElement:
    """(((z + zeta)^2 + 4 zeta z)/(zeta - z)^2, 4 xi (z + zeta)/(zeta - z)^2)."""
    xi = R.gen()
    zeta = R.mul(xi, xi)
    four = R.from_int(4)
    work = prec + 4 * R.nilpotency + 8
    zs = Series.from_dict(R, {0: zeta, 1: R.one}, work)
    inv = Series.from_dict(R, {0: zeta, 1: R.neg(R.one)}, work).inverse()
    inv2 = inv * inv
    num = zs * zs + Series.monomial(R, 1, work, R.mul(four, zeta))
    a = (num * inv2).truncate(prec)
    b = (zs * inv2).scale(R.mul(four, xi)).truncate(prec)
    return TorusElement(a, b, check=False)


def embedding_ratio(p: int, d: int = 1, xi_order: int = 8, prec: int = 16) -> TorusElement:
    """g(i) * g(i o gamma)^{-1}, where g(i o gamma) redoes the norm with
    xi -> -xi."""
    R = torus_ring(p, d, xi_order)
    g = norm_of_mu(R, R.gen(), prec)
    g2 = norm_of_mu(R, R.neg(R.gen()), prec)
    return torus_mul(g, g2.inverse())


def constant_norm(p: int, d: int = 1, prec: int = 8) -> TorusElement:
    """N(mu(y)), which equals (-1, 0)."""
    R = torus_ring(p, d, 1)
    return norm_of_mu(R, R.zero, prec)


@dataclass
class Check:
    name: str
    passed: bool
    lhs: object = None
    rhs: object = None


def verify_norm_identities(p: int, d: int = 1, xi_order: int = 8, prec: int = 16) -> list:
    """The norm, ratio and constant-norm identities, as Check records."""
    R = torus_ring(p, d, xi_order)
    g = norm_of_mu(R, R.gen(), prec)
    closed = closed_form_norm(R, prec)
    ratio = embedding_ratio(p, d, xi_order, prec)
    square = torus_mul(g, g)
    closed_r = closed_form_ratio(R, prec)
    cn = constant_norm(p, d, prec)
    checks = [
        Check("norm equals closed form", g.agrees(closed) and g.prec == closed.prec, g, closed),
        Check("norm satisfies a^2 - b^2 z = 1", g.satisfies_equation()),
        Check("ratio equals square", ratio.agrees(square), ratio, square),
        Check("ratio equals closed form", ratio.agrees(closed_r), ratio, closed_r),
        Check("constant norm is (-1, 0)", cn.agrees(TorusElement.minus_one(cn.ring, cn.prec)),
              cn, TorusElement.minus_one(cn.ring, cn.prec)),
    ]
    try:
        check_integral(ratio)
        nonintegral = False
    except NeronModelError:
        nonintegral = True
    checks.append(Check("ratio is z-non-integral", nonintegral))
    checks.append(Check("ratio lies in F[[z, xi/z]]", in_z_xi_over_z(ratio)))
    return checks
