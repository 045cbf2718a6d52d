"""Random test objects: series, loop elements, étale shtukas, dual-number
quasi-isogenies and torus points.  All take an explicit ``random.Random``."""
from __future__ import annotations

import random

from .errors import NotInvertibleError, PrecisionError
from .semilinear import LoopElement
from .series import Series
from .shtuka import LocalShtuka, transport
from .torus import TorusElement


def random_series(ring, rng: random.Random, val: int, prec: int, terms: int | None = None) -> Series:
    """Leading coefficient at z^val a unit; further coefficients random up to
    ``terms`` of them (default: all below prec)."""
    if val >= prec:
        return Series.zero(ring, prec)
    n = prec - val if terms is None else min(terms, prec - val)
    lead = ring.random(rng)
    while not ring.is_unit(lead):
        lead = ring.random(rng)
    coeffs = [lead] + [ring.random(rng) for _ in range(n - 1)]
    return Series(ring, val, prec, coeffs)


def random_loop_element(ring, r: int, prec: int, rng: random.Random, min_val: int = -3,
                        max_val: int = 3, zero_prob: float = 0.2, terms: int | None = 4) -> LoopElement:
    """Laurent-invertible r x r matrix with entry valuations in [min_val, max_val]."""
    while True:
        rows = []
        for _ in range(r):
            row = []
            for _ in range(r):
                if rng.random() < zero_prob:
                    row.append(Series.zero(ring, prec))
                else:
                    v = rng.randint(min_val, max_val)
                    row.append(random_series(ring, rng, v, prec, terms))
            rows.append(row)
        try:
            return LoopElement(rows)
        except NotInvertibleError:
            continue


def random_integral_invertible(ring, r: int, prec: int, rng: random.Random,
                               terms: int | None = None) -> LoopElement:
    """Element of GL_r(R[[z]]): invertible constant term, random higher terms."""
    n = prec if terms is None else min(terms, prec)
    while True:
        rows = [[Series(ring, 0, prec, [ring.random(rng) for _ in range(n)])
                 for _ in range(r)] for _ in range(r)]
        d = LoopElement(rows, check=False).det()
        if d.coeffs and d.val == 0 and ring.is_unit(d.coeffs[0]):
            return LoopElement(rows)


def random_etale_shtuka(ring, r: int, prec: int, rng: random.Random) -> LocalShtuka:
    return LocalShtuka(random_integral_invertible(ring, r, prec, rng), prec)


def random_dual_instance(ring, r: int, prec: int, rng: random.Random):
    """(L, L', f) over dual numbers with f: L -> L' a quasi-isogeny, L' the
    transport of L along f."""
    while True:
        try:
            b = random_loop_element(ring, r, prec + 8, rng, -1, 1, 0.2, 3)
            f = random_loop_element(ring, r, prec + 8, rng, -1, 1, 0.2, 3)
            L = LocalShtuka(b)
            L2 = transport(L, f)
            if L2.prec < prec:
                continue
            return L, L2, f
        except (NotInvertibleError, PrecisionError):
            continue


def random_torus_element(ring, prec: int, rng: random.Random, allow_minus: bool = True) -> TorusElement:
    """Cayley parametrization a = (1 + s^2 z)/(1 - s^2 z), b = 2s/(1 - s^2 z)
    with s integral, optionally multiplied by (-1, 0)."""
    s = Series(ring, 0, prec + 2, [ring.random(rng) for _ in range(prec + 2)])
    s2z = (s * s).shift(1)
    one = Series.constant(ring, ring.one, prec + 2)
    inv = (one - s2z).inverse()
    a = ((one + s2z) * inv).truncate(prec)
    b = (s * inv * 2).truncate(prec)
    x = TorusElement(a, b)
    if allow_minus and rng.random() < 0.5:
        x = TorusElement(-x.a, -x.b, check=False)
    return x
