"""Reflection groups acting on their root vectors.

Group elements are stored as permutations of the full root-vector list; this
action is faithful because the roots span the representation and every group
element fixes the orthogonal complement of that span pointwise.  The exact
linear action on lattice vectors is recovered by expanding in a root basis,
so no fractional matrices are ever needed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .lattices import Reflector, Vector, text_key
from .rings import RingElement, exact_div
from .rootdata import RootSystem, root_system


def _compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Permutation product acting as functions: (a*b)(x) = a(b(x))."""
    return a[b]


def _inverse(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(len(a), dtype=a.dtype)
    return inv


def _is_identity(a: np.ndarray) -> bool:
    return bool((a == np.arange(len(a), dtype=a.dtype)).all())


class GroupElement:
    """An element of a reflection group, as a permutation of the root vectors."""

    __slots__ = ("group", "perm", "_hash")

    def __init__(self, group: "ReflectionGroup", perm: np.ndarray):
        self.group = group
        self.perm = perm
        self._hash = None

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.group, _compose(self.perm, other.perm))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.group, _inverse(self.perm))

    def __pow__(self, n: int) -> "GroupElement":
        if n < 0:
            return self.inverse() ** (-n)
        out = self.group.identity()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate_by(self, g: "GroupElement") -> "GroupElement":
        """g * self * g^-1."""
        return g * self * g.inverse()

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupElement) and self.group is other.group
                and np.array_equal(self.perm, other.perm))

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = self._hash = hash(self.perm.tobytes())
        return h

    def is_identity(self) -> bool:
        return _is_identity(self.perm)

    def order(self, cap: int = 10 ** 9) -> int:
        """Least n >= 1 with g^n = 1, from the cycle type."""
        seen = np.zeros(len(self.perm), dtype=bool)
        out = 1
        for start in range(len(self.perm)):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = int(self.perm[x])
                length += 1
            out = out * length // math.gcd(out, length)
            if out > cap:
                raise ArithmeticError("element order exceeds cap")
        return out

    def apply_to_vector(self, v: Vector) -> Vector:
        """Exact image of a lattice vector under the linear map."""
        return self.group.apply_perm_to_vector(self.perm, v)

    def matrix_on_span(self) -> np.ndarray:
        """Complex matrix of the element restricted to the span of the roots."""
        return self.group.matrix_on_span(self.perm)

    def __repr__(self) -> str:
        return f"<element of {self.group.system.group}, order {self.order()}>"


class StabChain:
    """Deterministic Schreier-Sims stabilizer chain on 0..degree-1."""

    class _Level:
        __slots__ = ("beta", "gens", "orbit")

        def __init__(self, beta: int):
            self.beta = beta
            self.gens: list[np.ndarray] = []
            self.orbit: dict[int, np.ndarray] = {}

    def __init__(self, degree: int, gens=()):
        self.degree = degree
        self.levels: list[StabChain._Level] = []
        self._idperm = np.arange(degree, dtype=np.int32)
        for g in gens:
            self.extend(np.asarray(g, dtype=np.int32))

    # -- chain bookkeeping

    def _rebuild_orbit(self, i: int) -> None:
        L = self.levels[i]
        L.orbit = {L.beta: self._idperm}
        frontier = [L.beta]
        while frontier:
            x = frontier.pop()
            ux = L.orbit[x]
            for s in L.gens:
                y = int(s[x])
                if y not in L.orbit:
                    L.orbit[y] = _compose(s, ux)
                    frontier.append(y)

    def _strip(self, g: np.ndarray, start: int) -> tuple[np.ndarray, int]:
        for i in range(start, len(self.levels)):
            L = self.levels[i]
            x = int(g[L.beta])
            if x not in L.orbit:
                return g, i
            g = _compose(_inverse(L.orbit[x]), g)
        return g, len(self.levels)

    def _first_moved(self, g: np.ndarray) -> int:
        moved = np.nonzero(g != self._idperm)[0]
        return int(moved[0])

    def extend(self, g: np.ndarray) -> bool:
        """Add a permutation; returns True if the group grew."""
        h, j = self._strip(g, 0)
        if _is_identity(h):
            return False
        self._add_strong_gen(h, 0, j)
        self._complete_from(j)
        return True

    def _add_strong_gen(self, h: np.ndarray, lo: int, j: int) -> None:
        """Install h as a strong generator for levels lo..j."""
        if j == len(self.levels):
            self.levels.append(StabChain._Level(self._first_moved(h)))
        for l in range(lo, j + 1):
            if l < len(self.levels):
                self.levels[l].gens.append(h)
                self._rebuild_orbit(l)

    def _complete_from(self, start: int) -> None:
        i = min(start, len(self.levels) - 1)
        while i >= 0:
            restart = False
            L = self.levels[i]
            points = list(L.orbit.keys())
            for x in points:
                ux = L.orbit[x]
                for s in list(L.gens):
                    y = int(s[x])
                    uy = L.orbit[y]
                    sg = _compose(_inverse(uy), _compose(s, ux))
                    if _is_identity(sg):
                        continue
                    r, j = self._strip(sg, i + 1)
                    if not _is_identity(r):
                        self._add_strong_gen(r, i + 1, j)
                        i = min(j, len(self.levels) - 1)
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    # -- queries

    def order(self) -> int:
        out = 1
        for L in self.levels:
            out *= len(L.orbit)
        return out

    @property
    def base(self) -> list[int]:
        return [L.beta for L in self.levels]

    def contains(self, g: np.ndarray) -> bool:
        h, _ = self._strip(np.asarray(g, dtype=np.int32), 0)
        return _is_identity(h)

    def sample(self, rng) -> np.ndarray:
        """Uniformly random element (rng is a numpy Generator)."""
        g = self._idperm
        for L in self.levels:
            pts = sorted(L.orbit.keys())
            x = pts[int(rng.integers(len(pts)))]
            g = _compose(g, L.orbit[x])
        return g


class ReflectionGroup:
    """A unitary reflection group together with its permutation action."""

    def __init__(self, system: RootSystem):
        self.system = system
        self.degree = len(system.vectors)
        self._refl_perm_cache: dict[int, np.ndarray] = {}
        self._chain: StabChain | None = None
        self._span_data = None

    # -- permutations

    def perm_of_reflector(self, refl: Reflector) -> np.ndarray:
        sysd = self.system
        out = np.empty(self.degree, dtype=np.int32)
        for i, v in enumerate(sysd.vectors):
            img = refl.apply(v)
            out[i] = sysd.vec_index[tuple(e.coeffs for e in img)]
        return out

    def reflection_perm(self, proj_idx: int) -> np.ndarray:
        p = self._refl_perm_cache.get(proj_idx)
        if p is None:
            sysd = self.system
            refl = Reflector(sysd.space, sysd.gen_roots[proj_idx],
                             sysd.gen_units[proj_idx])
            p = self.perm_of_reflector(refl)
            self._refl_perm_cache[proj_idx] = p
        return p

    def reflection(self, proj_idx: int) -> GroupElement:
        return GroupElement(self, self.reflection_perm(proj_idx))

    def reflection_in(self, root: Vector, u: RingElement) -> GroupElement:
        refl = Reflector(self.system.space, root, u)
        return GroupElement(self, self.perm_of_reflector(refl))

    def identity(self) -> GroupElement:
        return GroupElement(self, np.arange(self.degree, dtype=np.int32))

    # -- the full group

    def stab_chain(self) -> StabChain:
        if self._chain is None:
            gens = [self.reflection_perm(i)
                    for i in range(self.system.num_projective)]
            self._chain = StabChain(self.degree, gens)
        return self._chain

    def order(self) -> int:
        return self.stab_chain().order()

    def subgroup_order(self, elements: list[GroupElement]) -> int:
        chain = StabChain(self.degree, [g.perm for g in elements])
        return chain.order()

    def contains(self, g: GroupElement) -> bool:
        return self.stab_chain().contains(g.perm)

    def sample(self, rng) -> GroupElement:
        return GroupElement(self, self.stab_chain().sample(rng))

    # -- exact linear action

    def _span_basis(self):
        """Root indices forming a basis of the span, plus expansion data."""
        if self._span_data is None:
            sysd = self.system
            ring = sysd.space.ring
            rank = sysd.rank
            basis_idx: list[int] = []
            rows: list[list[Fraction]] = []
            # choose rank-many roots independent over the fraction field,
            # then rank-many coordinate rows giving an invertible square
            chosen: list[Vector] = []
            for i, v in enumerate(sysd.vectors):
                if len(basis_idx) == rank:
                    break
                if linalg.rank(tuple(chosen + [v])) > len(chosen):
                    chosen.append(v)
                    basis_idx.append(i)
            B_cols = chosen  # rank vectors in ambient dim
            dim = sysd.space.dim
            row_idx: list[int] = []
            sub_rows: list[tuple[RingElement, ...]] = []
            for r in range(dim):
                if len(row_idx) == rank:
                    break
                cand = sub_rows + [tuple(B_cols[j][r] for j in range(rank))]
                if linalg.rank(tuple(cand)) > len(sub_rows):
                    sub_rows.append(cand[-1])
                    row_idx.append(r)
            Nmat, den = linalg.invert(tuple(sub_rows))
            self._span_data = (basis_idx, row_idx, Nmat, den)
        return self._span_data

    def apply_perm_to_vector(self, perm: np.ndarray, v: Vector) -> Vector:
        basis_idx, row_idx, Nmat, den = self._span_basis()
        sysd = self.system
        ring = sysd.space.ring
        sub = tuple(v[r] for r in row_idx)
        coeffs = linalg.mat_vec(Nmat, sub)  # den * coordinates in root basis
        out = [ring.zero] * sysd.space.dim
        for c, bi in zip(coeffs, basis_idx):
            if c.is_zero():
                continue
            img = sysd.vectors[int(perm[bi])]
            for t in range(len(out)):
                out[t] = out[t] + c * img[t]
    # divide by the common denominator; integral for vectors in the lattice
        res = []
        for x in out:
            q = exact_div(x, den)
            if q is None:
                raise ValueError("vector is not in the lattice spanned by roots")
            res.append(q)
        return tuple(res)

    def matrix_on_span(self, perm: np.ndarray) -> np.ndarray:
        basis_idx, row_idx, Nmat, den = self._span_basis()
        sysd = self.system
        rank = sysd.rank
        den_c = complex(den.embed())
        N_c = np.array([[e.embed() for e in row] for row in Nmat], dtype=complex)
        cols = []
        for bi in basis_idx:
            img = sysd.vectors[int(perm[bi])]
            sub = np.array([img[r].embed() for r in row_idx], dtype=complex)
            cols.append(N_c @ sub / den_c)
        return np.array(cols, dtype=complex).T

    # -- spectral data

    def element_order(self, g: GroupElement) -> int:
        return g.order()

    def eigenvalue_phases(self, g: GroupElement,
                          tol: float = 1e-6) -> list[Fraction]:
        """Eigenvalue phases as exact fractions k/n, n = order of g."""
        n = g.order()
        M = self.matrix_on_span(g.perm)
        eig = np.linalg.eigvals(M)
        phases = []
        for lam in eig:
            k = round(np.angle(lam) / (2 * np.pi) * n) % n
            target = np.exp(2j * np.pi * k / n)
            if abs(lam - target) > tol:
                raise ArithmeticError(
                    f"eigenvalue {lam} does not snap to a {n}-th root of unity")
            phases.append(Fraction(int(k), n))
        return sorted(phases)

    def mirror_order(self, proj_idx: int) -> int:
        return self.system.orders[proj_idx]


@lru_cache(maxsize=None)
def reflection_group(name: str) -> ReflectionGroup:
    return ReflectionGroup(root_system(name))


def brute_force_elements(group: ReflectionGroup,
                         gens: list[GroupElement] | None = None,
                         cap: int = 500000) -> list[GroupElement]:
    """All elements by BFS closure; an independent oracle for small groups."""
    if gens is None:
        gens = [group.reflection(i)
                for i in range(group.system.num_projective)]
    seen = {group.identity(): None}
    frontier = [group.identity()]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s * g
                if h not in seen:
                    seen[h] = None
                    nxt.append(h)
        if len(seen) > cap:
            raise ArithmeticError("closure exceeded cap")
        frontier = nxt
    return list(seen.keys())
