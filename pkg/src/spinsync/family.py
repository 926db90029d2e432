"""The eight-vertex weighted ring family with a closed-form equilibrium and spectrum.

The family lives on vertices 0..7 arranged in a ring and carries four edge
classes: the four "rung" pairs (2i, 2i+1) with weight a, the eight
distance-2 chords with weight b, the four alternating ring pairs
(2i+1, 2i+2) with weight c, and the four long chords (2i+1, 2i+4) with
weight d (indices mod 8).  Every vertex meets one a-edge, two b-edges, one
c-edge and one d-edge, so the weighted degree is a + 2b + c + d.

With a > d there is an explicit non-consensus equilibrium whose phases
advance by pi/2 around the ring, offset by alpha = arctan(c/(a-d)) on odd
vertices.  The b-chords sit at phase difference pi/2 and drop out of both
the equilibrium equations and the Hessian, which, after scaling by
(a-d)/cos(alpha), becomes an integer matrix whose full eigensystem is
closed-form.  Stability reduces to the exact integer test c^2 vs 2ad.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParamsError
from .graphs import WeightedGraph

__all__ = [
    "FamilyParams",
    "family_graph",
    "family_equilibrium",
    "tilt_angle",
    "scaled_hessian",
    "closed_form_spectrum",
    "eigenvector_basis",
    "basis_eigenvalues",
    "stability_criterion",
    "A_EDGES",
    "B_EDGES",
    "C_EDGES",
    "D_EDGES",
]

A_EDGES = ((0, 1), (2, 3), (4, 5), (6, 7))
C_EDGES = ((1, 2), (3, 4), (5, 6), (0, 7))
B_EDGES = ((0, 2), (1, 3), (2, 4), (3, 5), (4, 6), (5, 7), (0, 6), (1, 7))
D_EDGES = ((1, 4), (3, 6), (0, 5), (2, 7))


@dataclass(frozen=True)
class FamilyParams:
    """Edge weights (a, b, c, d) by class; requires a >= 1, c >= 1, a > d, all nonnegative."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 0:
                raise InvalidParamsError(f"{name}={value!r} must be a nonnegative integer")
        if self.a < 1:
            raise InvalidParamsError("a must be >= 1")
        if self.c < 1:
            raise InvalidParamsError("c must be >= 1")
        if self.a <= self.d:
            raise InvalidParamsError(f"a={self.a} must exceed d={self.d}")

    @property
    def f(self) -> int:
        return self.a - self.d

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


def family_graph(p: FamilyParams) -> WeightedGraph:
    """The weighted graph of the family; zero-weight classes are omitted."""
    edges = []
    for cls_edges, w in ((A_EDGES, p.a), (B_EDGES, p.b), (C_EDGES, p.c), (D_EDGES, p.d)):
        edges.extend((u, v, w) for u, v in cls_edges)
    return WeightedGraph.drop_zero_edges(8, edges)


def tilt_angle(p: FamilyParams) -> float:
    """Phase offset alpha of odd vertices, arctan(c/(a-d)), in (0, pi/2)."""
    return math.atan2(p.c, p.a - p.d)


def family_equilibrium(p: FamilyParams) -> np.ndarray:
    """The explicit non-consensus equilibrium: theta_{2i} = i*pi/2, theta_{2i+1} = i*pi/2 + alpha."""
    alpha = tilt_angle(p)
    i = np.arange(4, dtype=float)
    theta = np.empty(8)
    theta[0::2] = i * (math.pi / 2.0)
    theta[1::2] = i * (math.pi / 2.0) + alpha
    return theta


def scaled_hessian(p: FamilyParams) -> np.ndarray:
    """The integer matrix (f/cos alpha) * Hessian at the family equilibrium.

    Diagonal c^2 + f^2; a-edges carry -a*f, c-edges -c^2, d-edges f*d;
    b-edges vanish because their phase difference is exactly pi/2.
    """
    a, c, d = p.a, p.c, p.d
    f = a - d
    m = np.zeros((8, 8))
    for u, v in A_EDGES:
        m[u, v] = m[v, u] = -a * f
    for u, v in C_EDGES:
        m[u, v] = m[v, u] = -c * c
    for u, v in D_EDGES:
        m[u, v] = m[v, u] = f * d
    np.fill_diagonal(m, c * c + f * f)
    return m


def _radical(p: FamilyParams) -> int:
    a, c, f = p.a, p.c, p.f
    return 4 * a * a * f * f - 4 * a * f**3 + c**4 + f**4


def closed_form_spectrum(p: FamilyParams) -> np.ndarray:
    """All eight eigenvalues of the scaled Hessian, sorted ascending.

    They are 0, 2f^2, 2c^2, 2c^2 + 2f^2, and c^2 + f^2 +- r each twice,
    with r = sqrt(4 a^2 f^2 - 4 a f^3 + c^4 + f^4).
    """
    c2 = p.c * p.c
    f2 = p.f * p.f
    r = math.sqrt(_radical(p))
    vals = [0.0, 2.0 * f2, 2.0 * c2, 2.0 * (c2 + f2), c2 + f2 + r, c2 + f2 + r, c2 + f2 - r, c2 + f2 - r]
    return np.sort(np.asarray(vals))


def basis_eigenvalues(p: FamilyParams) -> np.ndarray:
    """Eigenvalues in the column order of eigenvector_basis."""
    c2 = p.c * p.c
    f2 = p.f * p.f
    r = math.sqrt(_radical(p))
    return np.asarray(
        [c2 + f2 + r, c2 + f2 + r, c2 + f2 - r, c2 + f2 - r, 0.0, 2.0 * f2, 2.0 * c2, 2.0 * (c2 + f2)]
    )


def eigenvector_basis(p: FamilyParams) -> np.ndarray:
    """A full eigenvector basis of the scaled Hessian, one eigenvector per column.

    Columns pair with basis_eigenvalues(p); the fifth column is the all-ones
    kernel direction.
    """
    a, c = p.a, p.c
    f = p.f
    r = math.sqrt(_radical(p))
    rc = r / (c * c)
    g1 = f * (2 * a - f) / (c * c)
    g2 = -g1
    return np.asarray(
        [
            [-rc, g2, rc, g2, 1, 1, -1, -1],
            [g1, rc, g1, -rc, 1, -1, -1, 1],
            [0, -1, 0, -1, 1, -1, 1, -1],
            [-1, 0, -1, 0, 1, 1, 1, 1],
            [rc, g1, -rc, g1, 1, 1, -1, -1],
            [g2, -rc, g2, rc, 1, -1, -1, 1],
            [0, 1, 0, 1, 1, -1, 1, -1],
            [1, 0, 1, 0, 1, 1, 1, 1],
        ],
        dtype=float,
    )


def stability_criterion(p: FamilyParams) -> str:
    """Exact stability of the family equilibrium: the integer test c^2 vs 2ad.

    The smallest eigenvalue pair of the scaled Hessian on the all-ones
    complement is c^2 + f^2 - r, whose sign equals the sign of c^2 - 2ad
    because (c^2 + f^2)^2 - r^2 = 2 f^2 (c^2 - 2ad); deciding on integers
    keeps the marginal boundary exact.
    """
    lhs = p.c * p.c
    rhs = 2 * p.a * p.d
    if lhs > rhs:
        return "stable"
    if lhs == rhs:
        return "marginal"
    return "unstable"
