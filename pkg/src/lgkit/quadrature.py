"""Quadrature rules shared by every numerical integral in the package."""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.hermite import hermgauss
from numpy.polynomial.legendre import leggauss

__all__ = ["QuadratureSpec", "nodes_weights", "grid_2d", "polar_rule", "gauss_hermite"]

RULES = ("gauss-legendre", "midpoint")


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor-product rule on the box [-half_width, half_width]^d.

    ``tol`` is the target accuracy; node-doubling self-checks fail when the
    refined result moves by more than ``10 * tol``.
    """

    half_width: float = 6.0
    nodes_per_axis: int = 96
    rule: str = "gauss-legendre"
    tol: float = 1e-6

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        if self.nodes_per_axis < 8:
            raise ValueError(f"nodes_per_axis must be >= 8, got {self.nodes_per_axis}")
        if self.rule not in RULES:
            raise ValueError(f"rule must be one of {RULES}, got {self.rule!r}")

    def refined(self):
        """Same rule with twice the nodes."""
        return QuadratureSpec(self.half_width, 2 * self.nodes_per_axis, self.rule, self.tol)


@lru_cache(maxsize=64)
def _unit_rule(rule, n):
    if rule == "gauss-legendre":
        x, w = leggauss(n)
    else:
        w = np.full(n, 2.0 / n)
        x = -1.0 + w * (np.arange(n) + 0.5)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def nodes_weights(q):
    """1-D nodes and weights for ``q`` on [-half_width, half_width]."""
    x, w = _unit_rule(q.rule, q.nodes_per_axis)
    return q.half_width * x, q.half_width * w


def grid_2d(q):
    """Mesh (a, b) and product weights for a 2-D integral, indexing 'ij'."""
    x, w = nodes_weights(q)
    a, b = np.meshgrid(x, x, indexing="ij")
    return a, b, np.outer(w, w)


def polar_rule(r_max, n_r=96, n_phi=64):
    """Nodes for integrals over the plane in polar form.

    Gauss-Legendre in r on [0, r_max] and the trapezoid rule in phi (spectral
    for periodic integrands).  Returned weights include the Jacobian r.
    """
    x, w = _unit_rule("gauss-legendre", n_r)
    r = 0.5 * r_max * (x + 1.0)
    wr = 0.5 * r_max * w * r
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    rr, pp = np.meshgrid(r, phi, indexing="ij")
    return rr, pp, np.outer(wr, np.full(n_phi, 2 * np.pi / n_phi))


@lru_cache(maxsize=8)
def gauss_hermite(n):
    """Gauss-Hermite nodes and weights for the weight exp(-x^2)."""
    x, w = hermgauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w
