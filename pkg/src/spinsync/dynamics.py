"""Homogeneous Kuramoto gradient flow on weighted graphs.

The phase of vertex v obeys  dtheta_v/dt = sum_u w_uv sin(theta_u - theta_v)
over its neighbors, which is minus the gradient of the potential
U = w(G) - sum_uv w_uv cos(theta_u - theta_v).  Phase vectors are plain
numpy arrays of radians; helpers reduce them to the canonical [0, 2pi)
representative and compare them modulo global rotation.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatchError, NotAnEquilibriumError

__all__ = [
    "EQ_TOL",
    "CONSENSUS_TOL",
    "MATCH_TOL",
    "Classification",
    "TrajectoryResult",
    "McReport",
    "rhs",
    "potential",
    "residual",
    "integrate",
    "classify",
    "monte_carlo",
    "canonical_phases",
    "phase_spread",
    "rotation_distance",
]

TWO_PI = 2.0 * np.pi

EQ_TOL = 1e-10
CONSENSUS_TOL = 1e-6
MATCH_TOL = 1e-5


def _check_dim(g, theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (g.n,):
        raise DimensionMismatchError(f"phase vector of shape {theta.shape} for graph of order {g.n}")
    return theta


def canonical_phases(theta) -> np.ndarray:
    """Canonical representative with every angle reduced to [0, 2pi)."""
    return np.mod(np.asarray(theta, dtype=float), TWO_PI)


def wrap_angles(d) -> np.ndarray:
    """Reduce angle differences to [-pi, pi)."""
    return np.mod(np.asarray(d, dtype=float) + np.pi, TWO_PI) - np.pi


def phase_spread(theta) -> float:
    """Circular spread after rotating the first phase to 0.

    Exact for configurations clustered within a half circle, which is the
    regime where consensus detection operates.
    """
    theta = np.asarray(theta, dtype=float)
    if theta.size == 0:
        return 0.0
    d = wrap_angles(theta - theta[0])
    return float(d.max() - d.min())


def rotation_distance(theta, phi) -> float:
    """Max-norm circular distance between two phase vectors modulo global rotation."""
    d = wrap_angles(np.asarray(theta, float) - np.asarray(phi, float))
    z = np.exp(1j * d).mean()
    if abs(z) < 1e-12:
        return float(np.pi)
    c = np.angle(z)
    return float(np.max(np.abs(wrap_angles(d - c))))


# -- vector field ------------------------------------------------------------


def rhs(g, theta) -> np.ndarray:
    """Right-hand side of the flow: component v is sum_u w_uv sin(theta_u - theta_v)."""
    theta = _check_dim(g, theta)
    u, v, w = g.edge_arrays()
    s = w * np.sin(theta[u] - theta[v])
    return np.bincount(v, weights=s, minlength=g.n) - np.bincount(u, weights=s, minlength=g.n)


def potential(g, theta) -> float:
    """Potential energy U >= 0, zero exactly on edge-wise phase agreement."""
    theta = _check_dim(g, theta)
    u, v, w = g.edge_arrays()
    return float(g.total_weight - np.sum(w * np.cos(theta[u] - theta[v])))


def residual(g, theta) -> float:
    """Max-norm of the right-hand side; below EQ_TOL counts as an equilibrium."""
    r = rhs(g, theta)
    return float(np.max(np.abs(r))) if r.size else 0.0


# -- classification ----------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    """Outcome of equilibrium classification.

    kind is one of "consensus", "known", "unclassified"; index points into
    the list of known equilibria when kind == "known".
    """

    kind: str
    index: int | None = None

    def label(self) -> str:
        if self.kind == "known":
            return f"known[{self.index}]"
        return self.kind


CONSENSUS = Classification("consensus")
UNCLASSIFIED = Classification("unclassified")


def _classify_point(theta, known, consensus_tol, match_tol) -> Classification:
    if phase_spread(theta) < consensus_tol:
        return CONSENSUS
    for i, ref in enumerate(known):
        if rotation_distance(theta, ref) < match_tol:
            return Classification("known", i)
    return UNCLASSIFIED


def classify(
    g,
    theta,
    known=(),
    *,
    eq_tol: float = EQ_TOL,
    consensus_tol: float = CONSENSUS_TOL,
    match_tol: float = MATCH_TOL,
) -> Classification:
    """Classify an equilibrium as consensus, a known equilibrium, or unclassified.

    Comparison against known equilibria is quotiented by global rotation.
    Raises NotAnEquilibriumError when the residual is above eq_tol.
    """
    theta = _check_dim(g, theta)
    res = residual(g, theta)
    if res >= eq_tol:
        raise NotAnEquilibriumError(f"residual {res:.3e} >= {eq_tol:.3e}")
    return _classify_point(theta, known, consensus_tol, match_tol)


# -- integration -------------------------------------------------------------


@dataclass
class TrajectoryResult:
    final: np.ndarray
    t_final: float
    residual: float
    classification: Classification
    steps: int
    converged: bool
    potential_trace: np.ndarray | None = None


def integrate(
    g,
    theta0,
    *,
    step: float = 0.01,
    t_max: float = 1e4,
    eq_tol: float = EQ_TOL,
    known=(),
    consensus_tol: float = CONSENSUS_TOL,
    match_tol: float = MATCH_TOL,
    track_potential: bool = False,
) -> TrajectoryResult:
    """Integrate the gradient flow with fixed-step classical Runge-Kutta.

    Marches until the residual drops below eq_tol or t_max is reached; the
    fixed step keeps runs bitwise reproducible across platforms.  Hitting
    t_max is reported through converged=False, never as an exception.  The
    final point is classified (consensus first, then the known list).
    """
    if step <= 0 or t_max <= 0:
        raise ValueError("step and t_max must be positive")
    theta = np.array(_check_dim(g, theta0), dtype=float)
    max_steps = int(np.ceil(t_max / step))
    trace = [potential(g, theta)] if track_potential else None
    h = float(step)
    steps = 0
    converged = False
    res = 0.0
    while True:
        k1 = rhs(g, theta)
        res = float(np.max(np.abs(k1))) if k1.size else 0.0
        if res < eq_tol:
            converged = True
            break
        if steps >= max_steps:
            break
        k2 = rhs(g, theta + 0.5 * h * k1)
        k3 = rhs(g, theta + 0.5 * h * k2)
        k4 = rhs(g, theta + h * k3)
        theta += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        steps += 1
        if track_potential:
            trace.append(potential(g, theta))
    final = canonical_phases(theta)
    if converged:
        cls = _classify_point(final, known, consensus_tol, match_tol)
    else:
        cls = UNCLASSIFIED
    return TrajectoryResult(
        final=final,
        t_final=steps * h,
        residual=res,
        classification=cls,
        steps=steps,
        converged=converged,
        potential_trace=np.asarray(trace) if track_potential else None,
    )


# -- Monte Carlo -------------------------------------------------------------


@dataclass(frozen=True)
class McReport:
    trials: int
    seed: int
    counts: dict
    fraction_consensus: Fraction


def default_workers() -> int:
    env = os.environ.get("SPINSYNC_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    # counter-based stream keyed by (seed, trial): reproducible regardless of
    # execution order or worker count
    key = np.array([seed % 2**64, trial], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def monte_carlo(
    g,
    trials: int,
    seed: int,
    *,
    known=(),
    step: float = 0.01,
    t_max: float = 1e4,
    eq_tol: float = EQ_TOL,
    consensus_tol: float = CONSENSUS_TOL,
    match_tol: float = MATCH_TOL,
    workers: int | None = None,
) -> McReport:
    """Estimate attractor frequencies from uniform random initial phases.

    Trial t draws its start from an independent Philox stream keyed by
    (seed, t), so reports are identical for identical (seed, trials, opts)
    no matter how trials are distributed over workers.  Trials that hit
    t_max without converging count as unclassified.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers is None:
        workers = default_workers()

    def run(t: int) -> str:
        rng = _trial_rng(seed, t)
        theta0 = rng.uniform(0.0, TWO_PI, g.n)
        out = integrate(
            g,
            theta0,
            step=step,
            t_max=t_max,
            eq_tol=eq_tol,
            known=known,
            consensus_tol=consensus_tol,
            match_tol=match_tol,
        )
        return out.classification.label()

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            labels = list(ex.map(run, range(trials)))
    else:
        labels = [run(t) for t in range(trials)]
    counts = dict(sorted(Counter(labels).items()))
    return McReport(
        trials=trials,
        seed=seed,
        counts=counts,
        fraction_consensus=Fraction(counts.get("consensus", 0), trials),
    )
