import functools
import numpy as np
import scipy.integrate
import scipy.special
from .polynomialState import boundaryValues, degree, floatCoefficients
from ..grid.layout import Dirichlet, Robin


class _BaseTestFunction:

    """A test function supported on [center - radius, center + radius]."""

    polynomialDegree = None  # set when the function is polynomial on its support

    def __init__(self, center, radius, amplitude=1.0):
        if not radius > 0:
            raise ValueError("radius must be > 0")
        self.center = float(center)
        self.radius = float(radius)
        self.amplitude = float(amplitude)

    def __repr__(self):
        return (f"{self.__class__.__name__}(center={self.center!r}, "
                f"radius={self.radius!r}, amplitude={self.amplitude!r})")

    @property
    def support(self):
        return self.center - self.radius, self.center + self.radius

    def _scaled(self, xs):
        u = (np.asarray(xs, dtype=float) - self.center) / self.radius
        inside = np.abs(u) < 1
        return u, inside

    def valuesAtZero(self):
        """(t(0), t'(0))"""
        return float(self.value(0.0)), float(self.derivative(0.0))

    def value(self, xs):
        raise NotImplementedError()

    def derivative(self, xs):
        raise NotImplementedError()

    def secondDerivative(self, xs):
        raise NotImplementedError()


class BumpTestFunction(_BaseTestFunction):

    """amplitude * exp(-1 / (1 - u**2)), u = (x - center) / radius"""

    def _parts(self, xs):
        u, inside = self._scaled(xs)
        u = np.where(inside, u, 0)
        oneMinus = 1 - u**2
        t = np.where(inside, self.amplitude * np.exp(-1 / oneMinus), 0)
        g1 = -2 * u / oneMinus**2
        g2 = -2 / oneMinus**2 - 8 * u**2 / oneMinus**3
        return t, g1, g2

    def value(self, xs):
        return self._parts(xs)[0]

    def derivative(self, xs):
        t, g1, g2 = self._parts(xs)
        return t * g1 / self.radius

    def secondDerivative(self, xs):
        t, g1, g2 = self._parts(xs)
        return t * (g1**2 + g2) / self.radius**2


def _bumpValue(u, amplitude, order):
    return amplitude * (1 - u**2)**order


def _bumpDerivative(u, amplitude, radius, order):
    return amplitude * order * (1 - u**2)**(order - 1) * (-2 * u) / radius


def _bumpSecondDerivative(u, amplitude, radius, order):
    m = order
    return (amplitude / radius**2) * (
        4 * m * (m - 1) * u**2 * (1 - u**2)**(m - 2) - 2 * m * (1 - u**2)**(m - 1))


class PolynomialBumpTestFunction(_BaseTestFunction):

    """amplitude * (1 - u**2)**order on |u| < 1, twice continuously
    differentiable for order >= 3.
    """

    def __init__(self, center, radius, amplitude=1.0, order=4):
        super().__init__(center, radius, amplitude)
        if order < 3:
            raise ValueError("order must be >= 3")
        self.order = order
        self.polynomialDegree = 2 * order

    def value(self, xs):
        u, inside = self._scaled(xs)
        return np.where(inside, _bumpValue(u, self.amplitude, self.order), 0)

    def derivative(self, xs):
        u, inside = self._scaled(xs)
        return np.where(inside, _bumpDerivative(u, self.amplitude, self.radius, self.order), 0)

    def secondDerivative(self, xs):
        u, inside = self._scaled(xs)
        return np.where(inside, _bumpSecondDerivative(u, self.amplitude, self.radius, self.order), 0)


class PolynomialBumpBatch:

    """Several polynomial bumps of one order, paired in a single pass.

    The evaluation methods take `xs` of shape (len(batch), m), one row per
    bump, and every pairing of a batch returns one value per bump.
    """

    def __init__(self, centers, radii, amplitudes=None, order=4):
        centers = np.asarray(centers, dtype=float)
        radii = np.asarray(radii, dtype=float)
        amplitudes = np.ones_like(centers) if amplitudes is None else np.asarray(amplitudes, dtype=float)
        if centers.ndim != 1 or centers.shape != radii.shape or centers.shape != amplitudes.shape:
            raise ValueError("centers, radii and amplitudes must be 1-d arrays of one length")
        if not np.all(radii > 0):
            raise ValueError("radii must be > 0")
        if order < 3:
            raise ValueError("order must be >= 3")
        self.centers = centers
        self.radii = radii
        self.amplitudes = amplitudes
        self.order = order
        self.polynomialDegree = 2 * order

    @classmethod
    def fromTestFunctions(cls, testFunctions):
        testFunctions = list(testFunctions)
        orders = {t.order for t in testFunctions}
        if len(orders) != 1:
            raise ValueError("a batch needs polynomial bumps of a single order")
        return cls([t.center for t in testFunctions], [t.radius for t in testFunctions],
                   [t.amplitude for t in testFunctions], orders.pop())

    def __len__(self):
        return len(self.centers)

    def __iter__(self):
        for center, radius, amplitude in zip(self.centers, self.radii, self.amplitudes):
            yield PolynomialBumpTestFunction(center, radius, amplitude, self.order)

    @property
    def support(self):
        return self.centers - self.radii, self.centers + self.radii

    def _scaled(self, xs):
        u = (np.asarray(xs, dtype=float) - self.centers[:, None]) / self.radii[:, None]
        return u, np.abs(u) < 1

    def value(self, xs):
        u, inside = self._scaled(xs)
        return np.where(inside, _bumpValue(u, self.amplitudes[:, None], self.order), 0)

    def derivative(self, xs):
        u, inside = self._scaled(xs)
        d = _bumpDerivative(u, self.amplitudes[:, None], self.radii[:, None], self.order)
        return np.where(inside, d, 0)

    def secondDerivative(self, xs):
        u, inside = self._scaled(xs)
        d = _bumpSecondDerivative(u, self.amplitudes[:, None], self.radii[:, None], self.order)
        return np.where(inside, d, 0)

    def valuesAtZero(self):
        zeros = np.zeros((len(self), 1))
        return self.value(zeros)[:, 0], self.derivative(zeros)[:, 0]


@functools.lru_cache(maxsize=None)
def _legendreRule(n):
    return scipy.special.roots_legendre(n)


def _gaussLegendreRows(func, a, b, n):
    """One Gauss-Legendre rule per row over [a[i], b[i]]; empty rows give 0."""
    nodes, weights = _legendreRule(n)
    half = np.where(b > a, (b - a) / 2, 0.0)
    xs = half[:, None] * nodes + ((a + b) / 2)[:, None]
    return half * (func(xs) @ weights)


def _integrate(func, a, b, testFunction, extraDegree):
    if testFunction.polynomialDegree is not None:
        # Gauss-Legendre with n nodes is exact up to degree 2n - 1
        n = (testFunction.polynomialDegree + extraDegree) // 2 + 2
        if isinstance(testFunction, PolynomialBumpBatch):
            return _gaussLegendreRows(func, a, b, n)
        if not a < b:
            return 0.0
        value, _ = scipy.integrate.fixed_quad(func, a, b, n=n)
        return float(value)
    if not a < b:
        return 0.0
    value, _ = scipy.integrate.quad(func, a, b, epsabs=1e-13, epsrel=1e-13, limit=200)
    return value


def _pieces(testFunction, window=None):
    lo, hi = testFunction.support
    if window is not None:
        window = float(window)
        if np.any(np.asarray(lo) < -window) or np.any(np.asarray(hi) > window):
            raise ValueError(f"test function support {testFunction.support} exceeds the window")
    return (lo, np.minimum(hi, 0.0)), (np.maximum(lo, 0.0), hi)


def pairWithTest(distribution, testFunction, window=None):
    """<d, t> = int regular * t + cDelta t(0) - cDeltaPrime t'(0).

    With a PolynomialBumpBatch the result is an array, one entry per bump.
    """
    total = 0.0
    for poly, (a, b) in zip(distribution.regular, _pieces(testFunction, window)):
        if poly.is_zero:
            continue
        coefficients = floatCoefficients(poly)
        total = total + _integrate(lambda xs: np.polyval(coefficients, xs) * testFunction.value(xs),
                                   a, b, testFunction, degree(poly))
    t0, t1 = testFunction.valuesAtZero()
    return total + float(distribution.cDelta) * t0 - float(distribution.cDeltaPrime) * t1


def pairH0ByParts(state, potential, testFunction):
    """<H0 psi, t> = <psi, -t'' + V t>, with no knowledge of jump terms."""
    vPoly = potential.poly
    vCoefficients = floatCoefficients(vPoly)
    total = 0.0
    for poly, (a, b) in zip((state.p1, state.p2), _pieces(testFunction, state.window)):
        if poly.is_zero:
            continue
        coefficients = floatCoefficients(poly)

        def integrand(xs):
            adjoint = -testFunction.secondDerivative(xs) + np.polyval(vCoefficients, xs) * testFunction.value(xs)
            return np.polyval(coefficients, xs) * adjoint

        total = total + _integrate(integrand, a, b, testFunction, degree(poly) + degree(vPoly))
    return total


def pairDirectSumByParts(state, potential, testFunction):
    """<chi_1 H0 p1 + chi_2 H0 p2, t>, differentiating the pieces numerically
    from their float coefficients.
    """
    vCoefficients = floatCoefficients(potential.poly)
    total = 0.0
    for poly, (a, b) in zip((state.p1, state.p2), _pieces(testFunction, state.window)):
        if poly.is_zero:
            continue
        coefficients = floatCoefficients(poly)
        second = np.polyder(coefficients, 2) if len(coefficients) > 2 else np.zeros(1)

        def integrand(xs):
            action = -np.polyval(second, xs) + np.polyval(vCoefficients, xs) * np.polyval(coefficients, xs)
            return action * testFunction.value(xs)

        total = total + _integrate(integrand, a, b, testFunction, degree(poly) + degree(potential.poly))
    return total


def pairBoundaryPotentialByDefinition(region, bc, state, testFunction):
    """<B_k psi, t> from <delta' phi, t> = -(phi t)'(0) and
    <d/dx [delta g], t> = -g(0) t'(0), before any coefficient collapse.
    """
    value, slope = (float(v) for v in boundaryValues(state.piece(region)))
    sign = (-1)**region
    t0, t1 = testFunction.valuesAtZero()
    deltaPrimePhi = -(slope * t0 + value * t1)
    deltaPhi = value * t0
    if isinstance(bc, Dirichlet):
        return -deltaPrimePhi + sign * deltaPhi
    elif isinstance(bc, Robin):
        lam = float(bc.lam)
        composite = -(slope - lam * value) * t1
        return deltaPrimePhi + 2 * lam * deltaPhi + sign * composite
    raise TypeError("bc must be Robin or Dirichlet")


def pairResidualByDefinition(state, potential, bcLeft, bcRight, testFunction, flipLeftSign=False):
    leftSign = 1 if flipLeftSign else -1
    return (pairH0ByParts(state, potential, testFunction)
            + leftSign * pairBoundaryPotentialByDefinition(1, bcLeft, state, testFunction)
            + pairBoundaryPotentialByDefinition(2, bcRight, state, testFunction)
            - pairDirectSumByParts(state, potential, testFunction))


def relativeDeviation(a, b):
    return np.abs(a - b) / np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
