"""Diagrams: hermitian gram matrices up to vertex permutation and unit gauge.

A diagram's canonical form is the lexicographically least gauge-normalized
gram matrix over all vertex orderings.  For a fixed ordering the unit gauge
is resolved by a breadth-first spanning tree: the first vertex gets unit 1
and each tree edge entry is minimized over the free unit, which determines
it uniquely; chord entries are then forced.  This is invariant under
pre-gauging, so equal canonical keys mean gauge-permutation equivalence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from . import linalg
from .lattices import HermitianSpace, Vector
from .rings import EISENSTEIN, Ring, RingElement, eisenstein_p, exact_div


@dataclass(frozen=True)
class Diagram:
    gram: tuple[tuple[RingElement, ...], ...]
    ring: Ring

    @property
    def size(self) -> int:
        return len(self.gram)

    def space(self) -> HermitianSpace:
        return HermitianSpace.with_gram(self.ring, self.gram)


def diagram_of(space: HermitianSpace, roots: list[Vector]) -> Diagram:
    gram = tuple(tuple(space.inner(a, b) for b in roots) for a in roots)
    return Diagram(gram, space.ring)


# ---------------------------------------------------------------------------
# canonical form

def _entry_key(x: RingElement):
    return x.coeffs


def _gauge_for_order(gram, order, units, one):
    """Gauge-normalized matrix for a fixed vertex order; see module docstring."""
    k = len(order)
    M = [[gram[order[i]][order[j]] for j in range(k)] for i in range(k)]
    u = [None] * k
    u[0] = one
    # BFS over nonzero entries in deterministic order
    changed = True
    while changed:
        changed = False
        for i in range(k):
            if u[i] is None:
                continue
            for j in range(k):
                if u[j] is None and not M[i][j].is_zero():
                    base = u[i].conj() * M[i][j]
                    u[j] = min(units, key=lambda c: _entry_key(base * c))
                    changed = True
    for i in range(k):
        if u[i] is None:
            u[i] = one
    out = tuple(tuple((u[i].conj() * M[i][j] * u[j]) for j in range(k))
                for i in range(k))
    return out


def _signature(gram, i):
    row = sorted(x.norm_int() for j, x in enumerate(gram[i]) if j != i)
    return (gram[i][i].coeffs, tuple(row))


def canonical_key(D: Diagram) -> tuple:
    """Canonical row-major coefficient key, minimal over orderings and gauge."""
    k = D.size
    ring = D.ring
    units = ring.units()
    one = ring.one
    sigs = [_signature(D.gram, i) for i in range(k)]
    classes: dict[tuple, list[int]] = {}
    for i, s in enumerate(sigs):
        classes.setdefault(s, []).append(i)
    best = None
    # permutations must respect the per-vertex signature classes
    class_list = sorted(classes.keys())
    pools = [classes[c] for c in class_list]
    sizes = [len(p) for p in pools]
    for assignment in itertools.product(*(itertools.permutations(p) for p in pools)):
        # vertices in signature-class order define the candidate ordering
        order = [v for group in assignment for v in group]
        key_mat = _gauge_for_order(D.gram, order, units, one)
        key = tuple(x.coeffs for row in key_mat for x in row)
        if best is None or key < best:
            best = key
    return best


def canonical_form(D: Diagram) -> Diagram:
    """A representative gram matrix realizing the canonical key."""
    key = canonical_key(D)
    k = D.size
    ring = D.ring
    deg = ring.degree
    flat = [RingElement(ring, key[i]) for i in range(k * k)]
    gram = tuple(tuple(flat[i * k + j] for j in range(k)) for i in range(k))
    return Diagram(gram, ring)


def diagrams_equivalent(D1: Diagram, D2: Diagram) -> bool:
    return D1.size == D2.size and canonical_key(D1) == canonical_key(D2)


# ---------------------------------------------------------------------------
# balanced numberings

@dataclass(frozen=True)
class BalancedNumbering:
    values: tuple[RingElement, ...]


def find_balanced_numbering(D: Diagram) -> BalancedNumbering | None:
    """A null numbering with some entry exactly 1, when one exists.

    Solves sum_x n_x <a, x> = 0 for every vertex a; any solution vector y =
    sum n_x x has norm 0, so a diagram carrying one cannot be definite.
    """
    ns = linalg.nullspace(D.gram)
    ring = D.ring
    for v in ns:
        for pivot in v:
            if pivot.is_zero():
                continue
            scaled = []
            ok = True
            for x in v:
                q = exact_div(x, pivot)
                if q is None:
                    ok = False
                    break
                scaled.append(q)
            if ok:
                return BalancedNumbering(tuple(scaled))
    return None


def verify_balanced(D: Diagram, numbering: BalancedNumbering) -> bool:
    vals = numbering.values
    ring = D.ring
    if not any(v == ring.one for v in vals):
        return False
    for a in range(D.size):
        s = ring.zero
        for x in range(D.size):
            s = s + vals[x] * D.gram[a][x]
        if not s.is_zero():
            return False
    return True


def numbering_vector_norm(D: Diagram, numbering: BalancedNumbering) -> RingElement:
    """Norm of sum n_x x in the lattice presented by the gram matrix."""
    vals = numbering.values
    ring = D.ring
    s = ring.zero
    for i in range(D.size):
        for j in range(D.size):
            s = s + vals[i].conj() * D.gram[i][j] * vals[j]
    return s


def indefinite_witness(D: Diagram, numbering: BalancedNumbering) -> bool:
    """True iff the numbering has an entry 1 and its vector has norm zero."""
    if not any(v == D.ring.one for v in numbering.values):
        return False
    return numbering_vector_norm(D, numbering).is_zero()


# ---------------------------------------------------------------------------
# definiteness

def is_definite(D: Diagram) -> bool:
    """Exact positive-definiteness of the hermitian gram matrix."""
    d = linalg.det(D.gram)
    if d.is_zero():
        return False
    # exact leading principal minors via the ring determinant
    k = D.size
    for t in range(1, k + 1):
        sub = tuple(tuple(D.gram[i][j] for j in range(t)) for i in range(t))
        dt = linalg.det(sub)
        v = dt.embed()
        assert abs(v.imag) < 1e-9
        if v.real <= 0:
            return False
    return True


# ---------------------------------------------------------------------------
# circuits over the Eisenstein integers

@dataclass(frozen=True)
class CircSpec:
    k: int
    u: RingElement  # unit of the Eisenstein ring


def circ_diagram(spec: CircSpec) -> Diagram:
    """Circuit of norm-3 vertices: consecutive entries -p, closing entry -u*p."""
    E = EISENSTEIN
    p = eisenstein_p()
    k = spec.k
    g = [[E.zero] * k for _ in range(k)]
    for i in range(k):
        g[i][i] = E.from_int(3)
    for i in range(k - 1):
        g[i][i + 1] = -p
        g[i + 1][i] = (-p).conj()
    g[0][k - 1] = -(spec.u * p)
    g[k - 1][0] = (-(spec.u * p)).conj()
    return Diagram(tuple(tuple(row) for row in g), E)


# witnesses from the indefiniteness argument: for u = e^(2 pi i nu / 6) the
# first k entries give a norm-zero vector of the circuit lattice
_CIRC_WITNESS = {
    1: ("1", "-w", "-1-w", "-1-w", "-1-w"),
    2: ("1", "-w", "-1-w", "-1", "-1"),
    3: ("1", "-w", "-1-w", "-1", "w"),
    4: ("1", "-w", "-1-w", "-1", "w"),
    5: ("1", "1", "1", "1", "1"),
    6: ("1", "-w", "-w", "-w", "-w"),
}


def _unit_nu(u: RingElement) -> int:
    """nu with u = e^(2 pi i nu/6) among the six Eisenstein units."""
    import cmath
    z = u.embed()
    nu = round(cmath.phase(z) * 6 / (2 * cmath.pi)) % 6
    return 6 if nu == 0 else nu


def circ_reduce(spec: CircSpec):
    """Reduce a circuit: the three good cases are equivalent to the chain
    diagrams; everything else is indefinite with an explicit witness.

    Returns ("E6E", diagram) / ("E8E", diagram) / ("indefinite", numbering).
    """
    from .rings import parse_element
    E = EISENSTEIN
    p = eisenstein_p()
    w = E.gen
    u = spec.u
    k = spec.k
    assert k in (3, 4, 5)
    D = circ_diagram(spec)
    good3 = (u == -E.one or u == w.conj())
    if k == 3 and good3:
        # x3' = x2 - conj(u) x3 in lattice coordinates
        vecs = _circuit_basis(k)
        x1, x2, x3 = vecs
        x3p = tuple(a - u.conj() * b for a, b in zip(x2, x3))
        space = D.space()
        newd = diagram_of(space, [x1, x2, x3p])
        return ("E6E", newd)
    if k == 4 and u == w.conj():
        vecs = _circuit_basis(k)
        x1, x2, x3, x4 = vecs
        x4p = tuple(w.conj() * a - p * b - c for a, b, c in zip(x2, x3, x4))
        space = D.space()
        newd = diagram_of(space, [x1, x2, x3, x4p])
        return ("E8E", newd)
    nu = _unit_nu(u)
    vals = tuple(parse_element(E, t) for t in _CIRC_WITNESS[nu][:k])
    numbering = BalancedNumbering(vals)
    assert indefinite_witness(D, numbering), \
        f"circuit witness failed for k={k}, nu={nu}"
    return ("indefinite", numbering)


def _circuit_basis(k: int) -> list[Vector]:
    E = EISENSTEIN
    return [tuple(E.one if i == j else E.zero for i in range(k))
            for j in range(k)]


# ---------------------------------------------------------------------------
# classification of connected norm-3 diagrams over the Eisenstein integers

def _offdiag_choices():
    E = EISENSTEIN
    p = eisenstein_p()
    return [E.zero] + [-(u * p) for u in E.units()]


def enumerate_connected_diagrams(k: int, definite_only: bool = False):
    """Connected k-vertex diagrams, diagonal 3, off-diagonal in {0} u theta*units.

    The enumeration runs column by column; the first nonzero entry in each
    column is pinned to -p, which normalizes away the unit-gauge action.
    With definite_only, prefixes whose leading principal block is not
    positive definite are pruned (a principal submatrix of a definite matrix
    is definite), which keeps the rank-5 search tractable.
    """
    import numpy as np

    E = EISENSTEIN
    p = eisenstein_p()
    nonzero = [-(u * p) for u in E.units()]
    three = E.from_int(3)

    def column_patterns(j):
        yield (E.zero,) * j
        for t in range(j):
            tails = itertools.product(nonzero + [E.zero], repeat=j - t - 1)
            for tail in tails:
                yield (E.zero,) * t + (-p,) + tail

    def prefix_ok(g, size):
        M = np.array([[g[i][j].embed() for j in range(size)]
                      for i in range(size)])
        return bool(np.linalg.eigvalsh(M).min() > 1e-7)

    def connected(g):
        seen = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for y in range(k):
                if y not in seen and not g[x][y].is_zero():
                    seen.add(y)
                    frontier.append(y)
        return len(seen) == k

    g = [[E.zero] * k for _ in range(k)]
    for i in range(k):
        g[i][i] = three

    def rec(j):
        if j == k:
            if connected(g):
                yield Diagram(tuple(tuple(row) for row in g), E)
            return
        for pat in column_patterns(j):
            for i in range(j):
                g[i][j] = pat[i]
                g[j][i] = pat[i].conj()
            if definite_only and not prefix_ok(g, j + 1):
                continue
            yield from rec(j + 1)
        for i in range(j):
            g[i][j] = E.zero
            g[j][i] = E.zero

    yield from rec(1)


def chain_norm3_vectors(k: int) -> list[Vector]:
    """All hermitian-norm-3 vectors of the rank-k chain lattice, exactly."""
    from .lattices import eisenstein_chain_lattice, real_form_gram
    E = EISENSTEIN
    w = E.gen
    lat = eisenstein_chain_lattice(k)
    g = real_form_gram(lat)
    out = []
    for zv in linalg.short_vectors(g, 2):
        if linalg.quad_value(g, zv) != 2:
            continue
        v = tuple(E.element((zv[2 * i], zv[2 * i + 1])) for i in range(k))
        out.append(v)
        out.append(tuple(-e for e in v))
    return out


def lattice_isometric_to_chain(D: Diagram) -> bool:
    """Explicit isometry search from L(D) onto the chain lattice of equal rank.

    Images of the basis vertices are sought among the norm-3 vectors of the
    chain lattice with exactly matching gram entries; equality of real-form
    determinants promotes the embedding to an isometry.
    """
    from .lattices import NamedLattice, eisenstein_chain_lattice, real_form_stats
    k = D.size
    chain = eisenstein_chain_lattice(k)
    lat = NamedLattice("cand", D.space(), tuple(_circuit_basis(k)))
    if real_form_stats(lat) != real_form_stats(chain):
        return False
    cands = chain_norm3_vectors(k)
    space = chain.space
    images: list[Vector] = []

    def ok(v):
        i = len(images)
        for j, wv in enumerate(images):
            if space.inner(wv, v) != D.gram[j][i]:
                return False
        return space.inner(v, v) == D.gram[i][i]

    def rec() -> bool:
        if len(images) == k:
            return True
        for v in cands:
            if ok(v):
                images.append(v)
                if rec():
                    return True
                images.pop()
        return False

    return rec()


def classify_norm3_diagrams(max_rank: int):
    """Equivalence classes of definite connected diagrams up to max_rank.

    Diagrams are equivalent when their lattices are isometric.  Each
    gauge-permutation class is merged into its lattice class via invariants
    plus the explicit isometry search; the expected outcome is a single
    chain-lattice class per rank <= 4 and none beyond.
    """
    from .lattices import NamedLattice, eisenstein_chain_lattice, real_form_stats
    out: dict[int, dict] = {}
    for k in range(1, max_rank + 1):
        gauge_classes: dict[tuple, int] = {}
        reps: dict[tuple, Diagram] = {}
        for D in enumerate_connected_diagrams(k, definite_only=True):
            if not is_definite(D):
                continue
            key = canonical_key(D)
            gauge_classes[key] = gauge_classes.get(key, 0) + 1
            reps.setdefault(key, D)
        merged: list[dict] = []
        for key, D in reps.items():
            basis = _circuit_basis(k)
            lat = NamedLattice(f"rank{k}", D.space(), tuple(basis))
            disc, n2 = real_form_stats(lat)
            chain_iso = lattice_isometric_to_chain(D)
            placed = False
            for cls in merged:
                if cls["disc"] == disc and cls["norm2"] == n2 and \
                        cls["chain_isometric"] == chain_iso and chain_iso:
                    cls["count"] += gauge_classes[key]
                    cls["gauge_classes"] += 1
                    placed = True
                    break
            if not placed:
                merged.append({
                    "rank": k, "disc": disc, "norm2": n2,
                    "chain_isometric": chain_iso,
                    "count": gauge_classes[key], "gauge_classes": 1,
                    "name": chain_class_names().get(k, f"rank{k}")
                    if chain_iso else f"rank{k}-other",
                })
        out[k] = {"classes": merged}
    return out


def chain_class_names() -> dict[int, str]:
    return {1: "E2E", 2: "E4E", 3: "E6E", 4: "E8E"}


# ---------------------------------------------------------------------------
# graph automorphisms

def diagram_automorphisms(D: Diagram) -> list[tuple[int, ...]]:
    """Vertex permutations preserving the gram matrix up to unit gauge."""
    k = D.size
    ring = D.ring
    units = ring.units()
    one = ring.one
    base = _gauge_for_order(D.gram, list(range(k)), units, one)
    base_key = tuple(x.coeffs for row in base for x in row)
    out = []
    sigs = [_signature(D.gram, i) for i in range(k)]
    for perm in itertools.permutations(range(k)):
        if any(sigs[perm[i]] != sigs[i] for i in range(k)):
            continue
        key_mat = _gauge_for_order(D.gram, list(perm), units, one)
        key = tuple(x.coeffs for row in key_mat for x in row)
        if key == base_key:
            out.append(perm)
    return out


def has_rotation_of_order(D: Diagram, n: int) -> bool:
    autos = diagram_automorphisms(D)
    for perm in autos:
        # order of the permutation
        seen = [False] * len(perm)
        order = 1
        for s in range(len(perm)):
            if seen[s]:
                continue
            length = 0
            x = s
            while not seen[x]:
                seen[x] = True
                x = perm[x]
                length += 1
            order = order * length // _gcd(order, length)
        if order % n == 0:
            return True
    return False


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# DOT output

def to_dot(D: Diagram, name: str = "diagram",
           dotted_vertices: tuple[int, ...] = (),
           numbering: BalancedNumbering | None = None) -> str:
    """Directed DOT graph; edges labeled unless they carry the default -p."""
    E = EISENSTEIN
    p = eisenstein_p()
    lines = [f"digraph {name} {{"]
    for i in range(D.size):
        label = str(D.gram[i][i])
        if numbering is not None:
            label += f" | n={numbering.values[i]}"
        lines.append(f'  v{i} [label="{label}"];')
    for i in range(D.size):
        for j in range(i + 1, D.size):
            m = D.gram[j][i]  # edge drawn from j to i carries <x_i, x_j>-conj
            if m.is_zero():
                continue
            attrs = []
            if D.gram[i][j] != -p:
                attrs.append(f'label="{D.gram[i][j]}"')
            if i in dotted_vertices or j in dotted_vertices:
                attrs.append('style=dotted')
            attr = (" [" + ", ".join(attrs) + "]") if attrs else ""
            lines.append(f"  v{j} -> v{i}{attr};")
    lines.append("}")
    return "\n".join(lines)
