"""Phase grids and quadrature rules on the prior support."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class PhaseGrid:
    """Uniform phase grid with composite Simpson weights.

    nodes[0] = a, nodes[-1] = b, strictly increasing; weights integrate
    smooth functions on [a, b] and sum to b - a.
    """

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.size < 3 or nodes.size % 2 == 0:
            raise ParameterError("grid needs an odd node count >= 3")
        if not np.all(np.diff(nodes) > 0):
            raise ParameterError("grid nodes must be strictly increasing")
        span = nodes[-1] - nodes[0]
        if abs(weights.sum() - span) > 1e-12 * max(1.0, span):
            raise ParameterError("quadrature weights do not sum to the span")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def lower(self) -> float:
        return float(self.nodes[0])

    @property
    def upper(self) -> float:
        return float(self.nodes[-1])

    @property
    def size(self) -> int:
        return int(self.nodes.size)

    @property
    def spacing(self) -> float:
        return float(self.nodes[1] - self.nodes[0])

    def nearest_index(self, theta: float) -> int:
        """Index of the grid node closest to theta (theta must lie in range)."""
        from .errors import RangeError

        h = self.spacing
        if theta < self.lower - 0.5 * h or theta > self.upper + 0.5 * h:
            raise RangeError(f"theta={theta} outside grid [{self.lower}, {self.upper}]")
        j = int(round((theta - self.lower) / h))
        return min(max(j, 0), self.size - 1)

    def integrate(self, values: np.ndarray) -> float:
        return float(self.weights @ np.asarray(values, dtype=float))


def simpson_grid(a: float, b: float, num_nodes: int = 2049) -> PhaseGrid:
    """Uniform grid on [a, b] with composite Simpson weights.

    num_nodes must be odd. Simpson is exact for cubics, which keeps the
    flat-prior variance and the zero-observation bounds exact.
    """
    if not b > a:
        raise ParameterError("grid requires b > a")
    if num_nodes < 3 or num_nodes % 2 == 0:
        raise ParameterError("Simpson rule needs an odd node count >= 3")
    nodes = np.linspace(a, b, num_nodes)
    h = (b - a) / (num_nodes - 1)
    weights = np.full(num_nodes, 2.0)
    weights[1::2] = 4.0
    weights[0] = weights[-1] = 1.0
    weights *= h / 3.0
    return PhaseGrid(nodes=nodes, weights=weights)


def gauss_legendre_nodes(a: float, b: float, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [a, b]."""
    if count < 1:
        raise ParameterError("quadrature needs at least one node")
    x, w = np.polynomial.legendre.leggauss(count)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w
