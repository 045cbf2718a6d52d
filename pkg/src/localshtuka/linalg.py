"""Dense linear algebra over F_p (ints mod p) and over a finite field object."""
from __future__ import annotations


def rref_mod_p(rows, p: int):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    A = [list(r) for r in rows]
    if not A:
        return A, []
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] % p), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], p - 2, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] % p:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def kernel_mod_p(A, p: int, ncols: int | None = None):
    """Basis of {x : A x = 0}."""
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    R, pivots = rref_mod_p(A, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for row, pc in zip(R, pivots):
            x[pc] = (-row[f]) % p
        basis.append(x)
    return basis


class SolverModP:
    """Solves A x = y for many right-hand sides after one elimination."""

    def __init__(self, A, p: int):
        self.p = p
        m = len(A)
        self.n = len(A[0])
        aug = [list(row) + [1 if i == j else 0 for j in range(m)] for i, row in enumerate(A)]
        R, pivots = rref_mod_p(aug, p)
        self.pivots = [c for c in pivots if c < self.n]
        k = len(self.pivots)
        self.E = [row[self.n:] for row in R]
        self.rank = k

    def solve(self, y):
        """One solution or None."""
        p = self.p
        Ey = [sum(e * v for e, v in zip(row, y)) % p for row in self.E]
        if any(Ey[self.rank:]):
            return None
        x = [0] * self.n
        for i, c in enumerate(self.pivots):
            x[c] = Ey[i]
        return x


def rank_over(F, rows) -> int:
    """Rank of a matrix with entries in the finite field ``F``."""
    A = [list(r) for r in rows]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(x, inv) for x in A[r]]
        for i in range(r + 1, m):
            if A[i][c]:
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r


def rref_over(F, rows):
    """Reduced row echelon form over the finite field ``F``; zero rows dropped."""
    A = [list(r) for r in rows]
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(x, inv) for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A[:r], pivots


def reduce_against(F, vec, rref_rows, pivots):
    """Remainder of ``vec`` modulo the row space of an RREF matrix."""
    v = list(vec)
    for row, c in zip(rref_rows, pivots):
        if v[c]:
            f = v[c]
            v = [F.sub(x, F.mul(f, y)) for x, y in zip(v, row)]
    return v


def kernel_over(F, A, ncols: int):
    """Basis of {x : A x = 0} over ``F``."""
    if not A:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref_over(F, A)
    pset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(R, pivots):
            x[pc] = F.neg(row[f])
        basis.append(x)
    return basis
