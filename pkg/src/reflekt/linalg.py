"""Exact linear algebra over the integer rings and their fraction fields.

Row operations use Bareiss-style fraction-free elimination where possible;
the fraction field only appears in back-substitution, through the small
``Frac`` wrapper (a pair of ring elements reduced opportunistically).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .rings import Ring, RingElement, exact_div

Matrix = tuple[tuple[RingElement, ...], ...]
Vector = tuple[RingElement, ...]


# ---------------------------------------------------------------------------
# matrices of ring elements

def mat_mul(A, B) -> Matrix:
    n, m, p = len(A), len(B), len(B[0])
    assert len(A[0]) == m
    out = []
    for i in range(n):
        row = []
        for k in range(p):
            s = A[i][0] * B[0][k]
            for j in range(1, m):
                s = s + A[i][j] * B[j][k]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(A, v) -> Vector:
    out = []
    for row in A:
        s = row[0] * v[0]
        for j in range(1, len(v)):
            s = s + row[j] * v[j]
        out.append(s)
    return tuple(out)


def mat_conj_transpose(A) -> Matrix:
    return tuple(tuple(A[j][i].conj() for j in range(len(A))) for i in range(len(A[0])))


def identity_matrix(ring: Ring, n: int) -> Matrix:
    return tuple(tuple(ring.one if i == j else ring.zero for j in range(n))
                 for i in range(n))


def mat_eq(A, B) -> bool:
    return A == B


# ---------------------------------------------------------------------------
# fractions over a ring

class Frac:
    """num/den with both in the ring; den never zero."""

    __slots__ = ("num", "den")

    def __init__(self, num: RingElement, den: RingElement | None = None):
        if den is None:
            den = num.ring.one
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        q = exact_div(num, den)
        if q is not None:
            num, den = q, num.ring.one
        else:
            c = math.gcd(math.gcd(*[abs(a) for a in num.coeffs], 0),
                         math.gcd(*[abs(a) for a in den.coeffs], 0))
            if c > 1:
                num = RingElement(num.ring, tuple(a // c for a in num.coeffs))
                den = RingElement(den.ring, tuple(a // c for a in den.coeffs))
        self.num = num
        self.den = den

    def __add__(self, o: Frac) -> Frac:
        return Frac(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o: Frac) -> Frac:
        return Frac(self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, o: Frac) -> Frac:
        return Frac(self.num * o.num, self.den * o.den)

    def __truediv__(self, o: Frac) -> Frac:
        if o.num.is_zero():
            raise ZeroDivisionError
        return Frac(self.num * o.den, self.den * o.num)

    def __neg__(self) -> Frac:
        return Frac(-self.num, self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, o) -> bool:
        return isinstance(o, Frac) and (self.num * o.den == o.num * self.den)

    def as_ring_element(self) -> RingElement | None:
        return exact_div(self.num, self.den)

    def __repr__(self) -> str:
        if self.den == self.den.ring.one:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _frac_matrix(A) -> list[list[Frac]]:
    return [[Frac(x) for x in row] for row in A]


def rank(A) -> int:
    """Rank over the fraction field of the ring."""
    if not A:
        return 0
    M = _frac_matrix(A)
    rows, cols = len(M), len(M[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not M[i][c].is_zero()), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv = M[r][c]
        for i in range(r + 1, rows):
            if not M[i][c].is_zero():
                f = M[i][c] / pv
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


def det(A) -> RingElement:
    """Determinant via fraction-free Bareiss elimination (exact)."""
    n = len(A)
    ring = A[0][0].ring
    if n == 0:
        return ring.one
    M = [list(row) for row in A]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if M[k][k].is_zero():
            piv = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if piv is None:
                return ring.zero
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                t = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                q = exact_div(t, prev)
                assert q is not None, "Bareiss exact division failed"
                M[i][j] = q
            M[i][k] = ring.zero
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return -d if sign < 0 else d


def nullspace(A) -> list[Vector]:
    """Basis of the right null space, scaled to ring-element vectors."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    ring = A[0][0].ring if rows else None
    M = _frac_matrix(A)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not M[i][c].is_zero()), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv = M[r][c]
        M[r] = [a / pv for a in M[r]]
        for i in range(rows):
            if i != r and not M[i][c].is_zero():
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Frac(ring.zero) for _ in range(cols)]
        v[fc] = Frac(ring.one)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fc]
        # clear denominators
        den = ring.one
        for x in v:
            den = den * x.den
        out = tuple((x.num * exact_div(den, x.den)) for x in v)
        basis.append(out)
    return basis


def invert(A) -> tuple[Matrix, RingElement]:
    """Inverse as (N, d) with A^-1 = N/d; N has ring entries, d = det(A)."""
    n = len(A)
    ring = A[0][0].ring
    d = det(A)
    if d.is_zero():
        raise ZeroDivisionError("singular matrix")
    M = _frac_matrix(A)
    aug = [[Frac(ring.one if i == j else ring.zero) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if not M[i][c].is_zero())
        M[c], M[piv] = M[piv], M[c]
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = M[c][c]
        M[c] = [a / pv for a in M[c]]
        aug[c] = [a / pv for a in aug[c]]
        for i in range(n):
            if i != c and not M[i][c].is_zero():
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = aug[i][j] * Frac(d)
            xr = x.as_ring_element()
            assert xr is not None, "inverse not integral against det"
            row.append(xr)
        out.append(tuple(row))
    return tuple(out), d


def solve_exact(A, b) -> Vector | None:
    """Solve A x = b over the ring; None when no ring solution exists."""
    n = len(A)
    N, d = invert(A)
    x = mat_vec(N, b)
    out = []
    for xi in x:
        q = exact_div(xi, d)
        if q is None:
            return None
        out.append(q)
    return tuple(out)


# ---------------------------------------------------------------------------
# integer quadratic forms

def integer_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix (over Q)."""
    M = [[Fraction(x) for x in row] for row in rows]
    if not M:
        return 0
    cols = len(M[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, len(M)):
            if M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def integer_det(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    M = [[Fraction(x) for x in row] for row in rows]
    sign = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            if M[i][k] != 0:
                f = M[i][k] / M[k][k]
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    out = Fraction(sign)
    for k in range(n):
        out *= M[k][k]
    assert out.denominator == 1
    return int(out)


def short_vectors(gram: list[list[int]], bound: int) -> list[tuple[int, ...]]:
    """All nonzero integer vectors with Q(x) <= bound, up to sign.

    Exact Fincke-Pohst enumeration on a positive definite integer gram
    matrix, done in rational arithmetic.
    """
    n = len(gram)
    G = [[Fraction(x) for x in row] for row in gram]
    # rational Cholesky: Q(x) = sum_i d[i] * (x_i + sum_{j>i} u[i][j] x_j)^2
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        s = G[i][i] - sum(d[k] * u[k][i] * u[k][i] for k in range(i))
        if s <= 0:
            raise ValueError("gram matrix is not positive definite")
        d[i] = s
        u[i][i] = Fraction(1)
        for j in range(i + 1, n):
            t = G[i][j] - sum(d[k] * u[k][i] * u[k][j] for k in range(i))
            u[i][j] = t / d[i]
    out: list[tuple[int, ...]] = []
    x = [0] * n
    B = Fraction(bound)

    def rec(i: int, rem: Fraction):
        if i < 0:
            if any(x):
                out.append(tuple(x))
            return
        # bound |x_i + c| with d[i]*(x_i + c)^2 <= rem
        c = sum(u[i][j] * x[j] for j in range(i + 1, n))
        lim = rem / d[i]
        t = int(math.isqrt(int(lim))) + 2
        lo = math.ceil(-t - c)
        hi = math.floor(t - c)
        for xi in range(lo, hi + 1):
            v = d[i] * (xi + c) ** 2
            if v <= rem:
                x[i] = xi
                rec(i - 1, rem - v)
        x[i] = 0

    rec(n - 1, B)
    # dedupe sign pairs deterministically
    seen = set()
    result = []
    for v in out:
        neg = tuple(-a for a in v)
        if neg in seen:
            continue
        seen.add(v)
        result.append(v)
    return result


def quad_value(gram: list[list[int]], v: tuple[int, ...]) -> int:
    n = len(v)
    return sum(gram[i][j] * v[i] * v[j] for i in range(n) for j in range(n))
