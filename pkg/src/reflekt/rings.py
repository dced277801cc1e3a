"""Exact arithmetic in the imaginary-quadratic and cyclotomic integer rings.

Every ring is presented as Z[g] = Z[x]/(f) for a monic integer polynomial f,
with a fixed embedding of the generator g into the complex numbers.  Elements
are integer coefficient vectors in the power basis 1, g, ..., g^(deg f - 1).
Values are immutable and hashable, so they can key dictionaries of lattice
vectors and be shared freely across threads.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache


def _poly_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials; b must be monic."""
    assert b and b[-1] == 1
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1]
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] -= c * bi
        _poly_trim(a)
        if not a:
            break
    return q, a


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the m-th cyclotomic polynomial."""
    if m == 1:
        return (-1, 1)
    num = [0] * m + [1]
    num[0] = -1  # x^m - 1
    rem = num
    for d in range(1, m):
        if m % d == 0:
            rem, r = _poly_divmod(rem, list(cyclotomic_poly(d)))
            assert not r
    return tuple(rem)


def _euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


class Ring:
    """One of the supported rings of integers, with precomputed tables."""

    def __init__(self, key: str, min_poly: tuple[int, ...], symbol: str,
                 gen_value: complex, conj_gen: tuple[int, ...]):
        self.key = key
        self.min_poly = min_poly
        self.degree = len(min_poly) - 1
        self.symbol = symbol
        self.gen_value = gen_value
        d = self.degree
        # x^k mod f for k up to 2d-2, as coefficient rows
        rows: list[tuple[int, ...]] = []
        p = [1]
        for _ in range(2 * d - 1):
            rows.append(tuple(p + [0] * (d - len(p))))
            p = [0] + p
            if len(p) > d:
                c = p[d]
                p = [pi - c * fi for pi, fi in zip(p[:d], min_poly[:d])]
            _poly_trim(p)
        self._pow_rows = rows
        self._conj_rows = self._composition_rows(conj_gen)
        self._basis_values = [gen_value ** k for k in range(d)]
        self._units: tuple[RingElement, ...] | None = None
        self._zero_coeffs = (0,) * d
        self.zero = RingElement(self, (0,) * d)
        one = [0] * d
        one[0] = 1
        self.one = RingElement(self, tuple(one))
        gen = [0] * d
        if d > 1:
            gen[1] = 1
        else:
            gen[0] = round(gen_value.real)
        self.gen = RingElement(self, tuple(gen))

    def _composition_rows(self, image_of_gen: tuple[int, ...]) -> list[tuple[int, ...]]:
        """Rows of the map g^k -> h^k mod f, where h is given on the power basis."""
        d = self.degree
        rows = [self._pow_rows[0]]
        cur = [1] + [0] * (d - 1)
        img = list(image_of_gen) + [0] * (d - len(image_of_gen))
        for _ in range(1, d):
            nxt = [0] * d
            prod = _poly_mul(cur, img)
            for k, c in enumerate(prod):
                if c:
                    row = self._pow_rows[k]
                    for i in range(d):
                        nxt[i] += c * row[i]
            rows.append(tuple(nxt))
            cur = nxt
        return rows

    def __repr__(self) -> str:
        return f"Ring({self.key})"

    def element(self, coeffs) -> RingElement:
        c = tuple(int(x) for x in coeffs)
        assert len(c) == self.degree
        return RingElement(self, c)

    def from_int(self, n: int) -> RingElement:
        c = [0] * self.degree
        c[0] = int(n)
        return RingElement(self, tuple(c))

    def mul_coeffs(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        d = self.degree
        out = [0] * d
        rows = self._pow_rows
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        row = rows[i + j]
                        c = ai * bj
                        for k in range(d):
                            out[k] += c * row[k]
        return tuple(out)

    def conj_coeffs(self, a: tuple[int, ...]) -> tuple[int, ...]:
        d = self.degree
        out = [0] * d
        for i, ai in enumerate(a):
            if ai:
                row = self._conj_rows[i]
                for k in range(d):
                    out[k] += ai * row[k]
        return tuple(out)

    @property
    def is_quadratic(self) -> bool:
        return self.degree == 2

    def units(self) -> tuple[RingElement, ...]:
        """The torsion unit group (all units for the imaginary quadratic rings)."""
        if self._units is None:
            # torsion units are exactly the roots of unity; the set is generated
            # by -1 together with g whenever g itself is a root of unity
            candidates = {self.one.coeffs: self.one, (-self.one).coeffs: -self.one}
            if self._is_root_of_unity(self.gen):
                g = self.gen
                for s in (self.one, -self.one):
                    u = s
                    for _ in range(4 * self.degree * 6):
                        u = u * g
                        candidates[u.coeffs] = u
                        if u == s:
                            break
            self._units = tuple(sorted(candidates.values(), key=lambda e: e.coeffs))
        return self._units

    def _is_root_of_unity(self, x: RingElement) -> bool:
        u = x
        for _ in range(1, 4 * self.degree * 6 + 1):
            if u == self.one:
                return True
            u = u * x
        return False

    def root_of_unity(self, n: int) -> RingElement:
        """The unit embedding to exp(2*pi*i/n); raises if the ring has none."""
        target = cmath.exp(2j * cmath.pi / n)
        best = None
        for u in self.units():
            if u.mult_order() == n and abs(u.embed() - target) < 1e-9:
                best = u
        if best is None:
            raise ValueError(f"no primitive order-{n} root of unity in {self.key}")
        return best


class RingElement:
    """Element of a Ring, stored as power-basis integer coefficients.

    Treated as immutable everywhere; never mutate ``coeffs`` after creation.
    """

    __slots__ = ("ring", "coeffs", "_hash", "_str")

    def __init__(self, ring: Ring, coeffs: tuple[int, ...]):
        self.ring = ring
        self.coeffs = coeffs
        self._hash = None
        self._str = None

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = self._hash = hash((self.ring.key, self.coeffs))
        return h

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == self.ring.from_int(other)
        return (isinstance(other, RingElement) and self.ring is other.ring
                and self.coeffs == other.coeffs)

    def __add__(self, other: RingElement) -> RingElement:
        other = self._coerce(other)
        return RingElement(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: RingElement) -> RingElement:
        other = self._coerce(other)
        return RingElement(self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> RingElement:
        return RingElement(self.ring, tuple(-a for a in self.coeffs))

    def __mul__(self, other) -> RingElement:
        if isinstance(other, int):
            return RingElement(self.ring, tuple(a * other for a in self.coeffs))
        if self.ring is not other.ring:
            raise ValueError(f"ring mismatch: {self.ring.key} vs {other.ring.key}")
        return RingElement(self.ring, self.ring.mul_coeffs(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> RingElement:
        if n < 0:
            inv = self.inverse()
            return inv ** (-n)
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _coerce(self, other) -> RingElement:
        if isinstance(other, int):
            return self.ring.from_int(other)
        if self.ring is not other.ring:
            raise ValueError(f"ring mismatch: {self.ring.key} vs {other.ring.key}")
        return other

    def is_zero(self) -> bool:
        return self.coeffs == self.ring._zero_coeffs

    def conj(self) -> RingElement:
        return RingElement(self.ring, self.ring.conj_coeffs(self.coeffs))

    def galois_conjugates(self) -> list[RingElement]:
        """All Galois images of the element (identity included)."""
        ring = self.ring
        if ring.degree == 1:
            return [self]
        if ring.degree == 2:
            return [self, self.conj()]
        m = int(ring.key.split("(")[1].rstrip(")"))
        out = []
        for j in range(1, m):
            if math.gcd(j, m) == 1:
                rows = _galois_rows(ring, j, m)
                d = ring.degree
                c = [0] * d
                for i, ai in enumerate(self.coeffs):
                    if ai:
                        row = rows[i]
                        for k in range(d):
                            c[k] += ai * row[k]
                out.append(RingElement(ring, tuple(c)))
        return out

    def norm_int(self) -> int:
        """Field norm as a rational integer (product of all Galois conjugates)."""
        prod = self.ring.one
        for s in self.galois_conjugates():
            prod = prod * s
        n = prod.rational_int()
        if n is None:
            raise ArithmeticError(f"norm of {self} is not rational: {prod}")
        return n

    def norm_element(self) -> RingElement:
        """x * conj(x); a rational integer for the quadratic rings."""
        return self * self.conj()

    def rational_int(self) -> int | None:
        if all(a == 0 for a in self.coeffs[1:]):
            return self.coeffs[0]
        return None

    def is_unit(self) -> bool:
        return not self.is_zero() and abs(self.norm_int()) == 1

    def inverse(self) -> RingElement:
        inv = exact_div(self.ring.one, self)
        if inv is None:
            raise ZeroDivisionError(f"{self} is not invertible in {self.ring.key}")
        return inv

    def mult_order(self, cap: int = 1000) -> int:
        u = self
        for n in range(1, cap + 1):
            if u == self.ring.one:
                return n
            u = u * self
        raise ArithmeticError("multiplicative order exceeds cap")

    def embed(self) -> complex:
        return sum(a * bv for a, bv in zip(self.coeffs, self.ring._basis_values))

    def embed_fraction(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a) for a in self.coeffs)

    def __str__(self) -> str:
        s = self._str
        if s is None:
            s = self._str = format_element(self)
        return s

    def __repr__(self) -> str:
        return f"<{self.ring.key}: {self}>"


@lru_cache(maxsize=None)
def _galois_rows(ring: Ring, j: int, m: int) -> tuple[tuple[int, ...], ...]:
    d = ring.degree
    imgs = []
    for k in range(d):
        e = (j * k) % m
        q = [0] * e + [1]
        if e >= d:
            _, q = _poly_divmod(q, list(ring.min_poly))
        imgs.append(tuple(q + [0] * (d - len(q))))
    return tuple(imgs)


def exact_div(x: RingElement, y: RingElement) -> RingElement | None:
    """x / y when the quotient lies in the ring, else None."""
    yc = y.coeffs
    ring = x.ring
    deg = ring.degree
    if deg == 1:
        n = yc[0]
        if n == 0:
            raise ZeroDivisionError("division by zero ring element")
        return RingElement(ring, (x.coeffs[0] // n,)) if x.coeffs[0] % n == 0 else None
    if deg == 2:
        if yc == (0, 0):
            raise ZeroDivisionError("division by zero ring element")
        cof = y.conj()
        n = ring.mul_coeffs(yc, cof.coeffs)[0]
        num = ring.mul_coeffs(x.coeffs, cof.coeffs)
        if num[0] % n == 0 and num[1] % n == 0:
            return RingElement(ring, (num[0] // n, num[1] // n))
        return None
    if y.is_zero():
        raise ZeroDivisionError("division by zero ring element")
    cof = ring.one
    for s in y.galois_conjugates()[1:]:
        cof = cof * s
    n = (y * cof).rational_int()
    assert n is not None and n != 0
    num = x * cof
    if all(a % n == 0 for a in num.coeffs):
        return RingElement(ring, tuple(a // n for a in num.coeffs))
    return None


def divides(d: RingElement, x: RingElement) -> bool:
    return exact_div(x, d) is not None


# ---------------------------------------------------------------------------
# ring registry

@lru_cache(maxsize=None)
def _make_ring(key: str) -> Ring:
    if key == "Z":
        return Ring("Z", (0, 1), "", 1.0 + 0j, (0,))
    if key == "E":
        w = complex(-0.5, math.sqrt(3) / 2)
        return Ring("E", (1, 1, 1), "w", w, (-1, -1))
    if key == "G":
        return Ring("G", (1, 0, 1), "i", 1j, (0, -1))
    if key == "Zsqrt-2":
        return Ring("Zsqrt-2", (2, 0, 1), "s", complex(0, math.sqrt(2)), (0, -1))
    if key == "Zsqrt-7":
        return Ring("Zsqrt-7", (2, -1, 1), "t", complex(0.5, math.sqrt(7) / 2), (1, -1))
    m = re.fullmatch(r"Zeta\((\d+)\)", key)
    if m:
        n = int(m.group(1))
        if n <= 2:
            return _make_ring("Z")
        poly = cyclotomic_poly(n)
        zeta = cmath.exp(2j * cmath.pi / n)
        # conj(zeta) = zeta^(n-1)
        d = len(poly) - 1
        p = [0] * (n - 1) + [1]
        while len(p) - 1 >= d:
            _, r = _poly_divmod(p, list(poly))
            p = r if r else [0]
        conj_gen = tuple(p + [0] * (d - len(p)))
        return Ring(key, poly, f"z{n}", zeta, conj_gen)
    raise ValueError(f"unknown ring {key!r}")


INTEGER = _make_ring("Z")
EISENSTEIN = _make_ring("E")
GAUSSIAN = _make_ring("G")
SQRT_M2 = _make_ring("Zsqrt-2")
SQRT_M7 = _make_ring("Zsqrt-7")


def cyclotomic(m: int) -> Ring:
    return _make_ring(f"Zeta({m})")


def ring_by_key(key: str) -> Ring:
    return _make_ring(key)


# distinguished Eisenstein constants
def eisenstein_omega() -> RingElement:
    return EISENSTEIN.gen


def eisenstein_theta() -> RingElement:
    """omega - conj(omega) = sqrt(-3)."""
    w = EISENSTEIN.gen
    return w - w.conj()


def eisenstein_p() -> RingElement:
    """1 - conj(omega) = 2 + omega; a prime of norm 3."""
    return EISENSTEIN.one - EISENSTEIN.gen.conj()


# ---------------------------------------------------------------------------
# text form

def format_element(x: RingElement) -> str:
    ring = x.ring
    if x.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(x.coeffs):
        if c == 0:
            continue
        if k == 0:
            term = str(abs(c))
        else:
            sym = ring.symbol if k == 1 else f"{ring.symbol}^{k}"
            mag = abs(c)
            term = sym if mag == 1 else f"{mag}{sym}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+{term}" if c > 0 else f"-{term}")
    return "".join(parts)


_TERM_RE = re.compile(r"([+-]?)(\d*)([a-z]+\d*)?(?:\^(\d+))?")


def parse_element(ring: Ring, text: str) -> RingElement:
    """Parse the canonical text form, e.g. '1-2w', '3+i', 'z8^3', '-2'."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty ring element")
    coeffs = [0] * ring.degree
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        digits, sym, power = m.group(2), m.group(3), m.group(4)
        coeff = sign * (int(digits) if digits else 1)
        if sym is None:
            if not digits:
                raise ValueError(f"cannot parse {text!r}: bare sign")
            k = 0
        else:
            if sym != ring.symbol:
                raise ValueError(f"symbol {sym!r} does not belong to ring {ring.key}")
            k = int(power) if power else 1
        if k >= ring.degree:
            # reduce g^k mod the minimal polynomial
            p = [0] * k + [1]
            while len(p) - 1 >= ring.degree:
                _, r = _poly_divmod(p, list(ring.min_poly))
                p = r if r else [0]
            for i, c in enumerate(p):
                coeffs[i] += coeff * c
        else:
            coeffs[k] += coeff
        pos = m.end()
    return RingElement(ring, tuple(coeffs))


# ---------------------------------------------------------------------------
# vectors and primitivity

def vec(ring: Ring, entries) -> tuple[RingElement, ...]:
    out = []
    for e in entries:
        if isinstance(e, RingElement):
            out.append(e)
        elif isinstance(e, int):
            out.append(ring.from_int(e))
        elif isinstance(e, str):
            out.append(parse_element(ring, e))
        else:
            raise TypeError(f"bad vector entry {e!r}")
    return tuple(out)


def _lattice_index(rows: list[list[int]], d: int) -> int:
    """Index of the Z-span of the rows in Z^d, or 0 if the rank is deficient."""
    mat = [list(r) for r in rows]
    det = 1
    for col in range(d):
        pivot = None
        for i in range(col, len(mat)):
            if mat[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            return 0
        mat[col], mat[pivot] = mat[pivot], mat[col]
        i = col + 1
        while i < len(mat):
            if mat[i][col] == 0:
                i += 1
                continue
            a, b = mat[col][col], mat[i][col]
            if b % a == 0:
                q = b // a
                mat[i] = [x - q * y for x, y in zip(mat[i], mat[col])]
                i += 1
            else:
                g, u, v = _xgcd(a, b)
                row_c = [u * x + v * y for x, y in zip(mat[col], mat[i])]
                row_i = [-(b // g) * x + (a // g) * y for x, y in zip(mat[col], mat[i])]
                mat[col], mat[i] = row_c, row_i
        det *= mat[col][col]
    return abs(det)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def is_primitive(v: tuple[RingElement, ...]) -> bool:
    """True iff no non-unit scalar divides every coordinate.

    Decided by the index of the ideal generated by the coordinates (all the
    rings here have class number one, so content ideals are principal).
    """
    if not v or all(x.is_zero() for x in v):
        raise ValueError("zero vector has no primitivity")
    ring = v[0].ring
    d = ring.degree
    rows = []
    basis = [ring.one]
    g = ring.gen
    for _ in range(d - 1):
        basis.append(basis[-1] * g)
    for x in v:
        for b in basis:
            rows.append(list((x * b).coeffs))
    return _lattice_index(rows, d) == 1
