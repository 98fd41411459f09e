import numpy as np
from sympy import Rational
from .basePotential import BasePotential
from ..distribution.polynomialState import exactRational
from ..errors import ConfigError


class ZeroPotential(BasePotential):

    kind = "zero"

    def evaluateMany(self, xs):
        return np.zeros(np.shape(xs), dtype=float)

    def localPolynomial(self):
        return [Rational(0)]


class HarmonicPotential(BasePotential):

    """V(x) = omega**2 * x**2"""

    kind = "harmonic"

    def __init__(self, omega=1.0, quad_bound_k=0.0, growth_x0=0.0):
        super().__init__(quad_bound_k, growth_x0)
        self.omega = float(omega)

    def parameters(self):
        return dict(omega=self.omega, **super().parameters())

    def evaluateMany(self, xs):
        xs = np.asarray(xs, dtype=float)
        return self.omega**2 * xs**2

    def localPolynomial(self):
        return [Rational(0), Rational(0), exactRational(self.omega)**2]


class SquareWellPotential(BasePotential):

    """V(x) = depth for |x| < width / 2, 0 elsewhere."""

    kind = "square_well"

    def __init__(self, depth=-1.0, width=1.0, quad_bound_k=0.0, growth_x0=0.0):
        super().__init__(quad_bound_k, growth_x0)
        self.depth = float(depth)
        self.width = float(width)
        if self.width < 0:
            raise ConfigError("square_well width must be >= 0")

    def parameters(self):
        return dict(depth=self.depth, width=self.width, **super().parameters())

    def evaluateMany(self, xs):
        xs = np.asarray(xs, dtype=float)
        return np.where(np.abs(xs) < self.width / 2, self.depth, 0.0)

    def localPolynomial(self):
        if self.width > 0:
            return [exactRational(self.depth)]
        return [Rational(0)]


class TabulatedPotential(BasePotential):

    """Linear interpolation between (x, V) nodes, extended by the first and
    last nodal values outside the table.
    """

    kind = "tabulated"

    def __init__(self, nodes=(), quad_bound_k=0.0, growth_x0=0.0):
        super().__init__(quad_bound_k, growth_x0)
        try:
            table = np.array([(float(x), float(v)) for x, v in nodes], dtype=float)
        except (TypeError, ValueError):
            raise ConfigError("tabulated nodes must be a list of (x, V) pairs")
        if len(table) < 2:
            raise ConfigError("tabulated potential needs at least 2 nodes")
        if not np.all(np.isfinite(table)):
            raise ConfigError("tabulated nodes must be finite")
        if not np.all(np.diff(table[:, 0]) > 0):
            raise ConfigError("tabulated x nodes must be strictly increasing")
        self.xNodes = table[:, 0]
        self.vNodes = table[:, 1]

    def parameters(self):
        nodes = [(x, v) for x, v in zip(self.xNodes.tolist(), self.vNodes.tolist())]
        return dict(nodes=nodes, **super().parameters())

    def evaluateMany(self, xs):
        # np.interp clamps to the end values, which is the constant extension
        return np.interp(np.asarray(xs, dtype=float), self.xNodes, self.vNodes)
