"""Fixed points of the mirror-symmetrization map and simple-system selection.

The map sends a vector w (off the mirrors) to a weighted sum of root
directions, each rotated to pair positively with w.  Its fixed points
generalize dominant Weyl vectors; the roots whose mirrors sit closest to a
maximal fixed point in the Fubini-Study metric are the selected "simple"
roots.  All of this runs in floating point on the embedded root data; the
selected roots themselves are exact ring vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import linalg
from .lattices import text_key
from .rootdata import RootSystem, root_system


class MirrorProximityError(ValueError):
    """The vector is (numerically) on a mirror; reseed and retry."""


@dataclass
class WeylConfig:
    tol: float = 1e-8
    max_iter: int = 100000
    weight_exponent: float = 2.0
    window: int = 20
    start_mirror_eps: float = 1e-6
    sym_cluster_tol: float = 1e-6
    tie_tol: float = 1e-6


@dataclass
class WeylState:
    w: np.ndarray
    sym_value: float
    iterations: int
    converged: bool
    trial_seed: int
    first_stable_iter: int = -1
    reseeds: int = 0


@dataclass
class SimpleSystem:
    proj_indices: tuple[int, ...]
    distances: tuple[float, ...]
    gram: tuple
    independent: bool
    spans_rank: bool
    tie_flag: bool


class AlphaContext:
    """Embedded root data with weights, for fast evaluation of the map."""

    def __init__(self, system: RootSystem, weight_exponent: float = 2.0):
        self.system = system
        self.weight_exponent = weight_exponent
        G = system.space.gram_complex()
        self.G = G
        R = np.array([[e.embed() for e in r] for r in system.proj_reps],
                     dtype=complex)
        self.R = R
        self.W = R.conj() @ G          # row i dot w = <r_i, w>
        norms2 = np.einsum("ij,ij->i", self.W, R).real
        self.root_norms = np.sqrt(norms2)
        orders = np.array(system.orders, dtype=float)
        self.mu = self.root_norms ** -1 * orders ** (-weight_exponent)

    def hinner(self, a: np.ndarray, b: np.ndarray) -> complex:
        """Hermitian form <a, b> of the ambient space (linear in b)."""
        return complex(a.conj() @ self.G @ b)

    def hnorm(self, w: np.ndarray) -> float:
        return float(np.sqrt(max(0.0, (w.conj() @ self.G @ w).real)))

    def inner_all(self, w: np.ndarray) -> np.ndarray:
        return self.W @ w

    def alpha(self, w: np.ndarray, mirror_eps: float = 1e-12) -> np.ndarray:
        z = self.inner_all(w)
        az = np.abs(z)
        wn = self.hnorm(w)
        if az.min() <= mirror_eps * self.root_norms.min() * wn:
            raise MirrorProximityError("vector lies on a mirror")
        return (self.mu * z / az) @ self.R

    def sym(self, w: np.ndarray) -> float:
        z = self.inner_all(w)
        return float(self.mu @ np.abs(z) / self.hnorm(w))

    def fs_distances(self, w: np.ndarray) -> np.ndarray:
        z = np.abs(self.inner_all(w))
        s = z / (self.root_norms * self.hnorm(w))
        return np.arcsin(np.clip(s, 0.0, 1.0))

    def min_mirror_distance(self, w: np.ndarray) -> float:
        return float(self.fs_distances(w).min())


@lru_cache(maxsize=None)
def alpha_context(group: str, weight_exponent: float = 2.0) -> AlphaContext:
    return AlphaContext(root_system(group), weight_exponent)


def alpha(group: str, w, weight_exponent: float = 2.0) -> np.ndarray:
    return alpha_context(group, weight_exponent).alpha(np.asarray(w, dtype=complex))


def sym(group: str, w, weight_exponent: float = 2.0) -> float:
    return alpha_context(group, weight_exponent).sym(np.asarray(w, dtype=complex))


def fs_distance(group: str, proj_idx: int, w,
                weight_exponent: float = 2.0) -> float:
    ctx = alpha_context(group, weight_exponent)
    return float(ctx.fs_distances(np.asarray(w, dtype=complex))[proj_idx])


def _random_start(ctx: AlphaContext, rng, mirror_eps: float) -> np.ndarray:
    dim = ctx.system.space.dim
    for _ in range(1000):
        parts = rng.uniform(-1.0, 1.0, size=(dim, 2))
        w = parts[:, 0] + 1j * parts[:, 1]
        n = ctx.hnorm(w)
        if n < 1e-3:
            continue
        z = np.abs(ctx.inner_all(w)) / (ctx.root_norms * n)
        if z.min() > mirror_eps:
            return w / n
    raise MirrorProximityError("could not draw a start vector off the mirrors")


def _align_phase(ctx: AlphaContext, prev: np.ndarray, cur: np.ndarray) -> np.ndarray:
    ip = ctx.hinner(prev, cur)
    if abs(ip) < 1e-30:
        return cur
    return cur * (ip.conjugate() / abs(ip))


def iterate_to_fixed_point(group: str, trial_seed: int,
                           cfg: WeylConfig | None = None,
                           w0=None) -> WeylState:
    """Iterate the map from a seeded random start until projective stability.

    Iterates are renormalized to unit length; convergence requires the
    projective step ratio to stay below tol for a window of consecutive
    iterations.  The converged vector is rescaled so |w| equals its sym
    value, making it an honest fixed point.
    """
    cfg = cfg or WeylConfig()
    ctx = alpha_context(group, cfg.weight_exponent)
    rng = np.random.default_rng((0x5EED, hash(group) & 0xFFFF, trial_seed))
    reseeds = 0
    if w0 is None:
        w = _random_start(ctx, rng, cfg.start_mirror_eps)
    else:
        w = np.asarray(w0, dtype=complex)
        w = w / ctx.hnorm(w)
    streak = 0
    first_stable = -1
    iterations = 0
    converged = False
    while iterations < cfg.max_iter:
        try:
            nxt = ctx.alpha(w)
        except MirrorProximityError:
            # perturb deterministically and continue
            reseeds += 1
            w = _random_start(ctx, rng, cfg.start_mirror_eps)
            streak = 0
            continue
        iterations += 1
        nxt = nxt / ctx.hnorm(nxt)
        nxt = _align_phase(ctx, w, nxt)
        ratio = float(ctx.hnorm(nxt - w) ** 2 / ctx.hnorm(w) ** 2)
        w = nxt
        if ratio < cfg.tol:
            if first_stable < 0:
                first_stable = iterations
            streak += 1
            if streak >= cfg.window:
                converged = True
                break
        else:
            streak = 0
            first_stable = -1
    s = ctx.sym(w)
    return WeylState(w=w * s, sym_value=s, iterations=iterations,
                     converged=converged, trial_seed=trial_seed,
                     first_stable_iter=first_stable, reseeds=reseeds)


def select_simple_system(group: str, state: WeylState,
                         cfg: WeylConfig | None = None) -> SimpleSystem:
    """The k projective roots whose mirrors are closest to the fixed point."""
    cfg = cfg or WeylConfig()
    system = root_system(group)
    ctx = alpha_context(group, cfg.weight_exponent)
    d = ctx.fs_distances(state.w)
    keys = [text_key(r) for r in system.proj_reps]
    order = sorted(range(len(d)), key=lambda i: (d[i], keys[i]))
    k = system.simple_count
    chosen = order[:k]
    tie = False
    if len(order) > k and d[order[k]] - d[order[k - 1]] < cfg.tie_tol:
        tie = True
    roots = [system.proj_reps[i] for i in chosen]
    gram = tuple(tuple(system.space.inner(a, b) for b in roots) for a in roots)
    rank = linalg.rank(tuple(roots))
    return SimpleSystem(
        proj_indices=tuple(chosen),
        distances=tuple(float(d[i]) for i in chosen),
        gram=gram,
        independent=(rank == k),
        spans_rank=(rank == system.rank),
        tie_flag=tie,
    )


def cluster_values(values: list[float], tol: float) -> list[tuple[float, int]]:
    """Group floats into clusters of width tol; returns (center, count) pairs."""
    out: list[list[float]] = []
    for v in sorted(values):
        if out and v - out[-1][-1] <= tol:
            out[-1].append(v)
        else:
            out.append([v])
    return [(sum(c) / len(c), len(c)) for c in out]


@dataclass
class TrialReport:
    group: str
    trials: int
    seed: int
    states: list[WeylState]
    systems: list[SimpleSystem | None]
    converged_count: int
    sym_clusters: list[tuple[float, int]]
    max_sym: float
    valid_count: int
    diagram_classes: dict[tuple, int]
    generation_checks: dict[tuple, bool]
    independent_fraction: float

    @property
    def generation_ok(self) -> bool:
        return bool(self.generation_checks) and all(self.generation_checks.values())


def run_trials(group: str, n_trials: int, seed: int,
               cfg: WeylConfig | None = None,
               check_generation: str = "per_class") -> TrialReport:
    """Run the fixed-point algorithm n_trials times and aggregate.

    check_generation: 'per_class' verifies one representative simple system
    per diagram class, 'per_trial' every valid system, 'none' skips.
    """
    from . import diagrams
    from .groups import reflection_group

    cfg = cfg or WeylConfig()
    system = root_system(group)
    states = [iterate_to_fixed_point(group, seed + t, cfg)
              for t in range(n_trials)]
    conv = [st for st in states if st.converged]
    clusters = cluster_values([st.sym_value for st in conv],
                              cfg.sym_cluster_tol) if conv else []
    max_sym = max((c for c, _ in clusters), default=float("nan"))

    systems: list[SimpleSystem | None] = []
    diagram_classes: dict[tuple, int] = {}
    class_rep_system: dict[tuple, SimpleSystem] = {}
    valid = 0
    indep = 0
    for st in states:
        if not (st.converged and abs(st.sym_value - max_sym) <= cfg.sym_cluster_tol):
            systems.append(None)
            continue
        ss = select_simple_system(group, st, cfg)
        systems.append(ss)
        if ss.independent:
            indep += 1
        if ss.spans_rank:
            valid += 1
            key = diagrams.canonical_key(diagrams.Diagram(ss.gram, system.space.ring))
            diagram_classes[key] = diagram_classes.get(key, 0) + 1
            class_rep_system.setdefault(key, ss)

    generation_checks: dict[tuple, bool] = {}
    if check_generation != "none":
        G = reflection_group(group)
        full = G.order()
        targets: list[tuple[tuple, SimpleSystem]] = []
        if check_generation == "per_class":
            targets = list(class_rep_system.items())
        else:
            for ss in systems:
                if ss is not None and ss.spans_rank:
                    targets.append((ss.proj_indices, ss))
        for key, ss in targets:
            refl = [G.reflection(i) for i in ss.proj_indices]
            generation_checks[key] = (G.subgroup_order(refl) == full)

    return TrialReport(
        group=system.group, trials=n_trials, seed=seed, states=states,
        systems=systems, converged_count=len(conv),
        sym_clusters=clusters, max_sym=max_sym, valid_count=valid,
        diagram_classes=diagram_classes, generation_checks=generation_checks,
        independent_fraction=indep / n_trials if n_trials else 0.0,
    )


def max_mirror_distance(group: str, seed: int = 0, step: float = 0.2,
                        iters: int = 4000,
                        weight_exponent: float = 2.0) -> np.ndarray:
    """Hill-climb a local maximizer of the distance to the mirror arrangement."""
    ctx = alpha_context(group, weight_exponent)
    rng = np.random.default_rng((0xD157, seed))
    dim = ctx.system.space.dim
    w = _random_start(ctx, rng, 1e-6)
    best = ctx.min_mirror_distance(w)
    stall = 0
    for _ in range(iters):
        eta = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        cand = w + step * eta
        n = ctx.hnorm(cand)
        if n < 1e-12:
            continue
        cand = cand / n
        val = ctx.min_mirror_distance(cand)
        if val > best:
            best = val
            w = cand
            stall = 0
        else:
            stall += 1
            if stall >= 60:
                step *= 0.5
                stall = 0
                if step < 1e-9:
                    break
    return w
