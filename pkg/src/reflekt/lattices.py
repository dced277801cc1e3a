"""Hermitian lattices, complex reflections and reflection-closed root sets.

The hermitian form is linear in the second argument.  Vectors are tuples of
ring elements, either in ambient coordinates (standard form) or in basis
coordinates of an abstract lattice carrying an explicit gram matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .rings import (EISENSTEIN, Ring, RingElement, eisenstein_p, exact_div,
                    format_element)

Vector = tuple[RingElement, ...]


class ReflectionError(ValueError):
    """The requested reflection does not preserve the lattice."""


@dataclass(frozen=True)
class HermitianSpace:
    """A free module O^dim with a hermitian gram matrix (identity by default)."""

    ring: Ring
    dim: int
    gram: tuple[tuple[RingElement, ...], ...]

    @staticmethod
    def standard(ring: Ring, dim: int) -> "HermitianSpace":
        return HermitianSpace(ring, dim, linalg.identity_matrix(ring, dim))

    @staticmethod
    def with_gram(ring: Ring, gram) -> "HermitianSpace":
        g = tuple(tuple(row) for row in gram)
        n = len(g)
        for i in range(n):
            for j in range(n):
                assert g[i][j] == g[j][i].conj(), "gram is not hermitian"
        return HermitianSpace(ring, n, g)

    @property
    def is_standard(self) -> bool:
        return self.gram == linalg.identity_matrix(self.ring, self.dim)

    def inner(self, x: Vector, y: Vector) -> RingElement:
        """<x, y>, conjugate-linear in x and linear in y."""
        ring = self.ring
        z = ring._zero_coeffs
        s = ring.zero
        for i, xi in enumerate(x):
            if xi.coeffs == z:
                continue
            xc = xi.conj()
            row = self.gram[i]
            for j, yj in enumerate(y):
                if yj.coeffs != z and row[j].coeffs != z:
                    s = s + xc * row[j] * yj
        return s

    def norm(self, x: Vector) -> RingElement:
        return self.inner(x, x)

    def gram_complex(self) -> np.ndarray:
        return np.array([[e.embed() for e in row] for row in self.gram],
                        dtype=complex)

    def embed_vector(self, x: Vector) -> np.ndarray:
        return np.array([e.embed() for e in x], dtype=complex)

    def is_positive_definite(self, tol: float = 1e-9) -> bool:
        w = np.linalg.eigvalsh(self.gram_complex())
        return bool(w.min() > tol)


def vec_add(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vec_scale(c: RingElement, x: Vector) -> Vector:
    return tuple(c * a for a in x)


def vec_is_zero(x: Vector) -> bool:
    return all(a.is_zero() for a in x)


class Reflector:
    """The u-reflection in a root, with precomputed covector for fast apply."""

    __slots__ = ("space", "root", "unit", "w", "nx", "s")

    def __init__(self, space: HermitianSpace, root: Vector, unit: RingElement):
        self.space = space
        self.root = root
        self.unit = unit
        self.nx = space.norm(root)
        ring = space.ring
        # w[j] = sum_i conj(x_i) gram[i][j], so <x, y> = sum_j w[j] y_j
        w = []
        for j in range(space.dim):
            s = ring.zero
            for i in range(space.dim):
                if not root[i].is_zero() and not space.gram[i][j].is_zero():
                    s = s + root[i].conj() * space.gram[i][j]
            w.append(s)
        self.w = tuple(w)
        self.s = ring.one - unit

    def apply(self, y: Vector) -> Vector:
        ring = self.space.ring
        z = ring._zero_coeffs
        ip = ring.zero
        for wj, yj in zip(self.w, y):
            if wj.coeffs != z and yj.coeffs != z:
                ip = ip + wj * yj
        if ip.coeffs == z:
            return y
        f = exact_div(self.s * ip, self.nx)
        if f is None:
            raise ReflectionError(
                f"reflection does not preserve lattice: {format_element(self.nx)} "
                f"does not divide {format_element(self.s * ip)}")
        x = self.root
        return tuple(a if b.coeffs == z else a - f * b for a, b in zip(y, x))


def reflect(space: HermitianSpace, x: Vector, u: RingElement, y: Vector) -> Vector:
    """Image of y under the u-reflection in x: y - (1-u) <x,y> |x|^-2 x."""
    return Reflector(space, x, u).apply(y)


def reflection_matrix(space: HermitianSpace, x: Vector, u: RingElement):
    """Matrix (columns = images of basis vectors) of the u-reflection in x."""
    ring = space.ring
    cols = []
    for j in range(space.dim):
        e = tuple(ring.one if i == j else ring.zero for i in range(space.dim))
        cols.append(reflect(space, x, u, e))
    return tuple(tuple(cols[j][i] for j in range(space.dim)) for i in range(space.dim))


def reflection_is_integral(space: HermitianSpace, x: Vector, u: RingElement,
                           spanning: list[Vector]) -> bool:
    """Whether the u-reflection in x maps the span of the given set into itself."""
    try:
        for y in spanning:
            reflect(space, x, u, y)
    except ReflectionError:
        return False
    return True


# ---------------------------------------------------------------------------
# unit orbits / projective roots

def unit_orbit(ring: Ring, v: Vector) -> list[Vector]:
    return [vec_scale(u, v) for u in ring.units()]


def text_key(v: Vector) -> tuple[str, ...]:
    return tuple(str(a) for a in v)


def canonical_unit_rep(ring: Ring, v: Vector) -> Vector:
    """Lexicographically least unit multiple under the canonical text form."""
    return min(unit_orbit(ring, v), key=text_key)


@dataclass(frozen=True)
class Root:
    vec: Vector
    norm: RingElement
    refl_orders: tuple[int, ...] = ()


@dataclass(frozen=True)
class ProjectiveRoot:
    rep: Root
    orbit_size: int

    def key(self) -> tuple[str, ...]:
        return text_key(self.rep.vec)


def closure_under_reflections(space: HermitianSpace, seeds: list[Vector],
                              reflections: list[tuple[Vector, RingElement]],
                              cap: int = 100000) -> list[Vector]:
    """Least superset of the seeds closed under the given reflections.

    Reflections are (root, unit) pairs; the closure also contains all unit
    multiples of its members, so it is a root set in the projective sense.
    """
    ring = space.ring
    units = ring.units()
    refl = [Reflector(space, x, u) for x, u in reflections]
    seen: dict[tuple, Vector] = {}
    queue: list[Vector] = []

    def add(v: Vector) -> None:
        for u in units:
            w = vec_scale(u, v)
            k = tuple(e.coeffs for e in w)
            if k not in seen:
                seen[k] = w
                queue.append(w)

    for s in seeds:
        add(s)
    head = 0
    while head < len(queue):
        y = queue[head]
        head += 1
        for r in refl:
            z = r.apply(y)
            k = tuple(e.coeffs for e in z)
            if k not in seen:
                add(z)
        if len(seen) > cap:
            raise ReflectionError(f"closure exceeded cap of {cap} vectors")
    return sorted(seen.values(), key=text_key)


def projectivize(ring: Ring, roots: list[Vector]) -> list[Vector]:
    """Canonical unit-orbit representatives, sorted by text key."""
    reps = {}
    for v in roots:
        r = canonical_unit_rep(ring, v)
        reps[tuple(e.coeffs for e in r)] = r
    return sorted(reps.values(), key=text_key)


# ---------------------------------------------------------------------------
# named lattices

@dataclass(frozen=True)
class NamedLattice:
    name: str
    space: HermitianSpace
    basis: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def basis_gram(self):
        return tuple(tuple(self.space.inner(a, b) for b in self.basis)
                     for a in self.basis)


def _path_gram(k: int):
    """Gram of the Eisenstein chain lattice: diag 3, <x_i, x_{i+1}> = -p."""
    E = EISENSTEIN
    p = eisenstein_p()
    g = [[E.zero for _ in range(k)] for _ in range(k)]
    for i in range(k):
        g[i][i] = E.from_int(3)
        if i + 1 < k:
            g[i][i + 1] = -p
            g[i + 1][i] = (-p).conj()
    return tuple(tuple(row) for row in g)


def eisenstein_chain_lattice(k: int) -> NamedLattice:
    name = f"E{2 * k}E"
    space = HermitianSpace.with_gram(EISENSTEIN, _path_gram(k))
    basis = tuple(tuple(EISENSTEIN.one if i == j else EISENSTEIN.zero
                        for i in range(k)) for j in range(k))
    return NamedLattice(name, space, basis)


def check_theta_condition(lattice: NamedLattice) -> bool:
    """True iff every pairwise inner product of basis vectors lies in theta*E."""
    if lattice.space.ring is not EISENSTEIN:
        raise ValueError("theta condition only applies to Eisenstein lattices")
    from .rings import eisenstein_theta
    th = eisenstein_theta()
    for a in lattice.basis:
        for b in lattice.basis:
            if exact_div(lattice.space.inner(a, b), th) is None:
                return False
    return True


def real_form_gram(lattice: NamedLattice) -> list[list[int]]:
    """Integer gram of the Z-module {b_i, w b_i} under (2/3) Re <x, y>."""
    if lattice.space.ring is not EISENSTEIN:
        raise ValueError("real form defined for Eisenstein lattices")
    w = EISENSTEIN.gen
    k = lattice.rank

    def two_thirds_re(z: RingElement) -> int:
        a, b = z.coeffs
        num = 2 * a - b
        assert num % 3 == 0, "real form is not integral"
        return num // 3

    zbasis: list[Vector] = []
    for b in lattice.basis:
        zbasis.append(b)
        zbasis.append(vec_scale(w, b))
    n = 2 * k
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[i][j] = two_thirds_re(lattice.space.inner(zbasis[i], zbasis[j]))
    return out


def real_form_stats(lattice: NamedLattice) -> tuple[int, int]:
    """(discriminant, number of norm-2 vectors) of the real form."""
    g = real_form_gram(lattice)
    disc = linalg.integer_det(g)
    sv = linalg.short_vectors(g, 2)
    count = 2 * sum(1 for v in sv if linalg.quad_value(g, v) == 2)
    return disc, count
