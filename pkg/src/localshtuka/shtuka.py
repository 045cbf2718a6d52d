"""Local GL_r-shtukas given by a Frobenius matrix b (tau = b * sigma).

Convention: tau acts on column vectors by m -> b * sigma(m), and a morphism
f from (b) to (b') satisfies f * b = b' * sigma(f).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (BudgetExceededError, NotEtaleError, NotInvertibleError,
                     NotQuasiIsogenyError, PrecisionError)
from .linalg import SolverModP, kernel_mod_p, rank_over
from .rings import finite_field, ring_descriptor, ring_from_descriptor
from .semilinear import LoopElement
from .series import ZERO_TO_PRECISION, Series


class LocalShtuka:
    """Rank-r local shtuka over ``ring`` with Frobenius matrix ``b``."""

    def __init__(self, b: LoopElement, prec: int | None = None):
        self.b = b
        self.rank = b.rank
        self.ring = b.ring
        self.prec = b.prec if prec is None else prec
        if b.det().residue_valuation() is ZERO_TO_PRECISION:
            raise NotInvertibleError("Frobenius matrix not invertible at this precision")

    @classmethod
    def from_descriptor(cls, desc: dict) -> "LocalShtuka":
        ring = ring_from_descriptor(desc)
        prec = int(desc["prec"])
        rows = []
        for row in desc["b"]:
            out = []
            for e in row:
                e = dict(e)
                e.setdefault("prec", prec)
                s = Series.from_json(ring, e)
                out.append(s.truncate(prec))
            rows.append(out)
        b = LoopElement(rows)
        if b.rank != int(desc.get("rank", b.rank)):
            raise ValueError("declared rank does not match the matrix")
        return cls(b, prec)

    def to_descriptor(self) -> dict:
        d = ring_descriptor(self.ring)
        d.update({"rank": self.rank, "prec": self.prec, "b": self.b.to_json()})
        return d

    def frobenius_matrix(self) -> LoopElement:
        return self.b

    def change_ring(self, ring) -> "LocalShtuka":
        return LocalShtuka(self.b.change_ring(ring), self.prec)

    def reduce(self) -> "LocalShtuka":
        """Reduction modulo the nilpotents of the coefficient ring."""
        return LocalShtuka(self.b.reduce(), self.prec)

    def agrees(self, other: "LocalShtuka") -> bool:
        return self.rank == other.rank and self.b.agrees(other.b)

    def __repr__(self):
        return f"LocalShtuka(rank={self.rank}, ring={self.ring}, prec={self.prec})"


def is_etale(L: LocalShtuka) -> bool:
    """b integral with integral inverse."""
    return L.b.is_integral() and L.b.inverse().is_integral()


def transport(L: LocalShtuka, f: LoopElement) -> LocalShtuka:
    """The shtuka f * b * sigma(f)^{-1}; f is a quasi-isogeny from L to it."""
    b2 = f * L.b * f.frobenius().inverse()
    return LocalShtuka(b2, min(L.prec, b2.prec))


def is_quasi_isogeny(f: LoopElement, L: LocalShtuka, L2: LocalShtuka) -> bool:
    if not f.rank == L.rank == L2.rank:
        raise ValueError("ranks differ")
    if f.det().residue_valuation() is ZERO_TO_PRECISION:
        return False
    return (f * L.b).agrees(L2.b * f.frobenius())


class QuasiIsogeny:
    def __init__(self, f: LoopElement, source: LocalShtuka, target: LocalShtuka):
        if not is_quasi_isogeny(f, source, target):
            raise NotQuasiIsogenyError("f * b != b' * sigma(f)")
        self.f, self.source, self.target = f, source, target

    def compose(self, other: "QuasiIsogeny") -> "QuasiIsogeny":
        """self after other."""
        return QuasiIsogeny(self.f * other.f, other.source, self.target)

    def inverse(self) -> "QuasiIsogeny":
        return QuasiIsogeny(self.f.inverse(), self.target, self.source)


# --- Lang trivialization ---

def twisted_norm(b: LoopElement, d: int) -> LoopElement:
    """b * sigma(b) * ... * sigma^{d-1}(b)."""
    out = b
    for k in range(1, d):
        out = out * b.frobenius(k)
    return out


def _base_degree(ring) -> int:
    """m with the ring's field equal to F_{q^m}."""
    return ring.spec.d // ring.base_degree


def extension_ring(ring, d: int):
    """F_{q^d} with the same q-Frobenius as ``ring``."""
    return finite_field(ring.p, ring.base_degree * d, ring.base_degree)


def _mat_inv(F, M):
    r = len(M)
    A = [list(row) + [1 if i == j else 0 for j in range(r)] for i, row in enumerate(M)]
    for c in range(r):
        piv = next((i for i in range(c, r) if A[i][c]), None)
        if piv is None:
            return None
        A[c], A[piv] = A[piv], A[c]
        inv = F.inv(A[c][c])
        A[c] = [F.mul(x, inv) for x in A[c]]
        for i in range(r):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[c])]
    return [row[r:] for row in A]


def _mat_mul(F, A, B):
    out = []
    for row in A:
        new = []
        for col in zip(*B):
            acc = 0
            for a, b in zip(row, col):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            new.append(acc)
        out.append(new)
    return out


def _lang_at_degree(b: LoopElement, prec: int):
    """Solve c = b * sigma(c) over b's ring (already the extension), or
    return None if the residue or a lifting step has no solution there."""
    R = b.ring
    F = R.field
    p, D = F.p, F.d
    r = b.rank
    frob = R.frob
    coeff = [[[b[i, j].coeff(k) for j in range(r)] for i in range(r)] for k in range(prec)]
    b0 = coeff[0]
    # residue step: kernel of v -> v - b0 * sigma(v), flattened over F_p
    cols = []
    for i in range(r):
        for k in range(D):
            basis_el = p ** k
            fb = frob(basis_el)
            img = []
            for l in range(r):
                w = F.neg(F.mul(b0[l][i], fb))
                if l == i:
                    w = F.add(w, basis_el)
                img.extend(F.digits(w))
            cols.append(img)
    A = [list(row) for row in zip(*cols)]
    kern = kernel_mod_p(A, p, r * D)
    chosen = []
    for vec in kern:
        el = [F.from_digits(vec[l * D:(l + 1) * D]) for l in range(r)]
        if rank_over(F, chosen + [el]) == len(chosen) + 1:
            chosen.append(el)
            if len(chosen) == r:
                break
    if len(chosen) < r:
        return None
    C0 = [list(row) for row in zip(*chosen)]
    C0inv = _mat_inv(F, C0)
    # lifting: C_n = C0 * h with h - sigma(h) = C0^{-1} * D_n
    q_map = [F.digits(F.sub(p ** k, frob(p ** k))) for k in range(D)]
    solver = SolverModP([list(row) for row in zip(*q_map)], p)
    C = [C0]
    sigC = [[[frob(x) for x in row] for row in C0]]
    for n in range(1, prec):
        Dn = [[0] * r for _ in range(r)]
        for k in range(n):
            bk = coeff[n - k]
            if any(any(row) for row in bk):
                prod = _mat_mul(F, bk, sigC[k])
                Dn = [[F.add(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(Dn, prod)]
        y = _mat_mul(F, C0inv, Dn)
        h = []
        for row in y:
            hrow = []
            for x in row:
                sol = solver.solve(F.digits(x)) if x else [0] * D
                if sol is None:
                    return None
                hrow.append(F.from_digits(sol))
            h.append(hrow)
        Cn = _mat_mul(F, C0, h)
        C.append(Cn)
        sigC.append([[frob(x) for x in row] for row in Cn])
    rows = [[Series(R, 0, prec, [C[k][i][j] for k in range(prec)]) for j in range(r)]
            for i in range(r)]
    return LoopElement(rows)


def lang_trivialize(L: LocalShtuka, max_degree: int = 24, degree: int | None = None):
    """Find the smallest d (over F_q) and integrally invertible c over F_{q^d}
    with c = b * sigma(c) to precision.

    Degrees d with b * sigma(b) * ... * sigma^{d-1}(b) != 1 are skipped
    without solving: c = N_d * sigma^d(c) and sigma^d(c) = c force N_d = 1.
    """
    if L.ring.kind != "finite-field":
        raise TypeError("Lang trivialization needs a finite-field base")
    if not is_etale(L):
        raise NotEtaleError()
    m = _base_degree(L.ring)
    prec = L.prec
    b = L.b.truncate(prec)
    if degree is not None:
        candidates = [degree]
    else:
        candidates = [d for d in range(1, max_degree + 1) if d % m == 0]
    one = LoopElement.identity(L.ring, L.rank, prec)
    norm, norm_d = b, 1
    for d in candidates:
        if d % m:
            raise ValueError(f"degree {d} is not a multiple of the base degree {m}")
        while norm_d < d:
            norm = norm * b.frobenius(norm_d)
            norm_d += 1
        if not norm.agrees(one, prec):
            continue
        R = extension_ring(L.ring, d)
        bd = b if R == L.ring else b.change_ring(R)
        c = _lang_at_degree(bd, prec)
        if c is not None:
            return d, c
    raise BudgetExceededError(
        f"extension budget exceeded: no trivialization over F_(q^d) for d <= {max_degree}")


@dataclass
class TateModule:
    """tau-invariants over F_{q^d}: columns of ``basis``; ``galois`` is the
    matrix of the base field's Frobenius on them."""
    ext_degree: int
    basis: LoopElement
    galois: LoopElement

    @property
    def rank(self) -> int:
        return self.basis.rank

    def is_free(self) -> bool:
        return self.basis.is_integrally_invertible()

    def galois_is_integral(self) -> bool:
        return self.galois.is_integrally_invertible()

    def invariant_under(self, L: LocalShtuka) -> bool:
        c = self.basis
        b = L.b if L.ring == c.ring else L.b.change_ring(c.ring)
        return c.agrees(b * c.frobenius())


def tate_module(L: LocalShtuka, max_degree: int = 24, degree: int | None = None) -> TateModule:
    d, c = lang_trivialize(L, max_degree, degree)
    m = _base_degree(L.ring)
    galois = c.inverse() * c.frobenius(m)
    return TateModule(d, c, galois)


def rational_tate_of_qisog(f: QuasiIsogeny, max_degree: int = 24):
    """(c')^{-1} * f * c over the common splitting field; returns the matrix
    together with both Tate modules."""
    T = tate_module(f.source, max_degree)
    T2 = tate_module(f.target, max_degree)
    if T.ext_degree != T2.ext_degree:
        d = math.lcm(T.ext_degree, T2.ext_degree)
        T = tate_module(f.source, degree=d)
        T2 = tate_module(f.target, degree=d)
    R = T.basis.ring
    fm = f.f if f.f.ring == R else f.f.change_ring(R)
    return T2.basis.inverse() * fm * T.basis, T, T2


def is_galois_equivariant(X: LoopElement, T: TateModule, T2: TateModule) -> bool:
    return (X * T.galois).agrees(T2.galois * X)


# --- rigidity over dual numbers ---

def restrict(f: LoopElement) -> LoopElement:
    """Reduction modulo epsilon."""
    return f.reduce()


def lift_qisog_dual_numbers(fbar: LoopElement, L: LocalShtuka, L2: LocalShtuka) -> LoopElement:
    """The unique f over k[eps] reducing to fbar with f * b = b' * sigma(f):
    f = b' * sigma(fbar) * b^{-1}."""
    R = L.ring
    if R.kind != "dual-numbers" or L2.ring != R:
        raise TypeError("both shtukas must live over dual numbers")
    if not is_quasi_isogeny(fbar, L.reduce(), L2.reduce()):
        raise NotQuasiIsogenyError("not a quasi-isogeny mod eps")
    lifted = fbar.map(lambda s: s.map_coeffs(R.scalar, R))
    return L2.b * lifted.frobenius() * L.b.inverse()


def laurent_rank(g: LoopElement) -> int:
    """Rank over Laurent series: largest j with a certified nonzero j-minor."""
    from .semilinear import _minor_table
    t = _minor_table(g.rows, g.rank)
    best = 0
    for (I, _), m in t.items():
        if m.coeffs and len(I) > best:
            best = len(I)
    return best


def lift_uniqueness_dimension(L: LocalShtuka) -> int:
    """Dimension of {X : X * bbar = 0}, the eps-linear ambiguity of a lift."""
    r = L.rank
    return r * (r - laurent_rank(L.b.reduce()))
