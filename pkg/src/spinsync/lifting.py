"""Phase lifting between a weighted base graph and its spinning.

A base phase vector lifts to the spun graph by copying each vertex's phase
to its whole fiber.  The lift preserves equilibria in both directions, and
the lifted Hessian's spectrum contains the base spectrum (with multiplicity)
plus (k-1)*|base| extra eigenvalues that are provably positive once the spin
count exceeds twice the total base weight.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import EQ_TOL, integrate, residual, rhs
from .errors import DimensionMismatchError, MatchFailureError, NotAnEquilibriumError
from .graphs import SpinGraph, WeightedGraph, spin
from .spectral import eigen, hessian

__all__ = ["LiftReport", "lift_phases", "equilibrium_correspondence", "spectral_correspondence", "find_equilibrium"]


def lift_phases(theta, s: SpinGraph) -> np.ndarray:
    """Copy base phases fiber-wise onto the spun graph (constant on fibers)."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (s.base.n,):
        raise DimensionMismatchError(f"phase vector of shape {theta.shape} for base of order {s.base.n}")
    return np.repeat(theta, s.k)


def equilibrium_correspondence(g: WeightedGraph, theta, k: int) -> tuple[float, float]:
    """Residuals of theta on the base and of its lift on the k-spinning.

    Each lifted equation collapses to the base equation at its fiber's
    vertex, so up to rounding the two residuals vanish together.
    """
    s = spin(g, k)
    base_res = residual(g, theta)
    lifted_res = residual(s, lift_phases(theta, s))
    return base_res, lifted_res


@dataclass
class LiftReport:
    """Spectral correspondence between a base equilibrium and its lift.

    matched pairs every base eigenvalue (with multiplicity) with its nearest
    lifted eigenvalue; extras are the (k-1)*|base| eigenvalues left over.
    weight_bound_holds records whether k exceeds twice the total base
    weight, the regime where the extras are guaranteed positive.
    """

    k: int
    base_residual: float
    lifted_residual: float
    matched: list
    extras: np.ndarray
    extras_min: float
    weight_bound_holds: bool


def _match_spectra(base_vals: np.ndarray, lifted_vals: np.ndarray, tol: float):
    used = np.zeros(lifted_vals.size, dtype=bool)
    matched = []
    for b in base_vals:
        gaps = np.abs(lifted_vals - b)
        gaps[used] = np.inf
        idx = int(np.argmin(gaps))
        gap = float(gaps[idx])
        if gap > tol:
            raise MatchFailureError(
                f"base eigenvalue {b:.6g} has no lifted partner within {tol:.3e} (nearest gap {gap:.3e})"
            )
        used[idx] = True
        matched.append((float(b), float(lifted_vals[idx]), gap))
    extras = np.sort(lifted_vals[~used])
    return matched, extras


def spectral_correspondence(
    g: WeightedGraph,
    theta,
    k: int,
    *,
    eq_tol: float = EQ_TOL,
    gap_tol: float | None = None,
) -> LiftReport:
    """Eigendecompose the base and lifted Hessians and match their spectra.

    Matching is greedy nearest-neighbor over the sorted lists, which is
    optimal for one-dimensional transport and deterministic.  A gap above
    tolerance raises MatchFailureError, signalling a genuine violation of
    the spectral correspondence.
    """
    base_res = residual(g, theta)
    if base_res >= eq_tol:
        raise NotAnEquilibriumError(f"residual {base_res:.3e} >= {eq_tol:.3e}")
    s = spin(g, k)
    lifted_theta = lift_phases(theta, s)
    lifted_res = residual(s, lifted_theta)
    h_base = hessian(g, theta)
    h_lift = hessian(s, lifted_theta)
    scale = 1.0 + float(np.max(np.sum(np.abs(h_lift), axis=1)))
    tol = 1e-8 * scale if gap_tol is None else float(gap_tol)
    base_vals = eigen(h_base).eigenvalues
    lifted_vals = eigen(h_lift).eigenvalues
    matched, extras = _match_spectra(base_vals, lifted_vals, tol)
    return LiftReport(
        k=int(k),
        base_residual=base_res,
        lifted_residual=lifted_res,
        matched=matched,
        extras=extras,
        extras_min=float(extras.min()) if extras.size else float("inf"),
        weight_bound_holds=int(k) > 2 * g.total_weight,
    )


def find_equilibrium(
    g,
    theta0,
    *,
    step: float = 0.05,
    coarse_tol: float = 1e-6,
    target: float = 1e-12,
    t_max: float = 5e3,
    max_newton: int = 60,
) -> np.ndarray:
    """Descend the gradient flow from theta0 and polish with damped Newton steps.

    Integration brings the residual down to coarse_tol; Newton steps
    (least-squares, so the singular all-ones direction is ignored) then
    converge quadratically to machine-level residuals at any nearby
    critical point, stable or not.  Returns the polished phases; the caller
    decides whether the achieved residual is good enough.
    """
    theta = np.asarray(integrate(g, theta0, step=step, eq_tol=coarse_tol, t_max=t_max).final, dtype=float)
    for _ in range(max_newton):
        r = rhs(g, theta)
        rn = float(np.max(np.abs(r)))
        if rn < target:
            break
        h = hessian(g, theta)
        delta = np.linalg.lstsq(h, r, rcond=None)[0]
        improved = False
        for _ in range(30):
            cand = theta + delta
            if residual(g, cand) < rn:
                theta = cand
                improved = True
                break
            delta *= 0.5
        if not improved:
            # Newton stalled (degenerate Hessian); fall back to the flow
            theta = np.asarray(
                integrate(g, theta, step=step / 5.0, eq_tol=max(target, rn / 100.0), t_max=t_max).final,
                dtype=float,
            )
    return theta
