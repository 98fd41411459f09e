import logging
import math
import numpy as np


class BasePotential:

    """A real potential V(x) on the whole line, bounded below by
    -quadBoundK * x**2 for large |x|.

    Subclasses implement `evaluateMany()` on numpy arrays; everything else
    is derived from it.
    """

    kind = None

    def __init__(self, quad_bound_k=0.0, growth_x0=0.0):
        quad_bound_k = float(quad_bound_k)
        growth_x0 = float(growth_x0)
        if not quad_bound_k >= 0:
            raise ValueError("quad_bound_k must be >= 0")
        if not growth_x0 >= 0:
            raise ValueError("growth_x0 must be >= 0")
        self.quadBoundK = quad_bound_k
        self.growthX0 = growth_x0

    def __repr__(self):
        params = ", ".join(f"{k}={v!r}" for k, v in self.parameters().items())
        return f"{self.__class__.__name__}({params})"

    def parameters(self):
        return dict(quad_bound_k=self.quadBoundK, growth_x0=self.growthX0)

    def evaluate(self, x):
        if not math.isfinite(x):
            raise ValueError("x must be finite")
        return float(self.evaluateMany(np.array([x], dtype=float))[0])

    def evaluateMany(self, xs):
        raise NotImplementedError()

    def evaluateOnGrid(self, grid):
        """V at every interior node of `grid`, in node order (left half,
        the interface node, right half). A declared growth bound
        (quad_bound_k > 0) is checked on the same nodes.
        """
        values = self.evaluateMany(grid.nodes)
        if self.quadBoundK > 0:
            self.checkGrowthCondition(self.growthX0, grid.nodes)
        return values

    def checkGrowthCondition(self, x0, xs):
        """Return the sample points with |x| > x0 where V(x) > -k x**2
        fails. An empty array means the condition holds on the sample.
        """
        xs = np.asarray(xs, dtype=float)
        xs = xs[np.abs(xs) > x0]
        values = self.evaluateMany(xs)
        failing = xs[~(values > -self.quadBoundK * xs**2)]
        if len(failing):
            logging.warning("%r violates V(x) > -%s x^2 at %d sample points",
                            self, self.quadBoundK, len(failing))
        return failing

    def localPolynomial(self):
        """Exact rational coefficients (constant term first) of V in a
        neighborhood of 0, or None when V is not polynomial there.
        """
        return None
