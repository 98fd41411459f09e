from dataclasses import dataclass, field
from fractions import Fraction
import numpy as np
from sympy import QQ, Rational
from sympy.polys.rings import PolyElement, ring


polyRing, x = ring("x", QQ)
zeroPoly = polyRing.zero


def rationalPoly(value):
    """Coerce to an element of QQ[x]. Accepts a ring element, a number, or
    a sequence of coefficients with the constant term first.
    """
    if isinstance(value, PolyElement):
        if value.ring != polyRing:
            raise ValueError(f"expected a polynomial in QQ[x], got an element of {value.ring}")
        return value
    if isinstance(value, (list, tuple)):
        return polyRing.from_dict({(k,): exactRational(c) for k, c in enumerate(value)})
    return polyRing.from_dict({(0,): exactRational(value)})


def exactRational(value):
    """Floats are read through their shortest decimal repr, so 0.1 -> 1/10."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, float):
        if not np.isfinite(value):
            raise ValueError("coefficients must be finite")
        return Rational(repr(value))
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    if isinstance(value, QQ.dtype):
        return QQ.to_sympy(value)
    return Rational(value)


def boundaryValues(poly):
    """(p(0), p'(0)) as exact rationals."""
    return QQ.to_sympy(poly.coeff(1)), QQ.to_sympy(poly.coeff(x))


def degree(poly):
    return 0 if poly.is_zero else poly.degree()


def floatCoefficients(poly):
    """Highest-degree first, for numpy.polyval."""
    coefficients = np.zeros(degree(poly) + 1, dtype=float)
    for (k,), c in poly.terms():
        coefficients[-1 - k] = int(c.numerator) / int(c.denominator)
    return coefficients


@dataclass(frozen=True, eq=False)
class PiecewisePolyState:

    """psi = chi_1 p1 + chi_2 p2 near 0: p1 lives on x < 0, p2 on x > 0,
    both valid on the window (-window, window).
    """

    p1: PolyElement
    p2: PolyElement
    window: Rational = Rational(1)
    degreeBound: int = 6

    def __post_init__(self):
        p1 = rationalPoly(self.p1)
        p2 = rationalPoly(self.p2)
        for poly in (p1, p2):
            if degree(poly) > self.degreeBound:
                raise ValueError(f"degree {poly.degree()} exceeds the bound {self.degreeBound}")
        window = exactRational(self.window)
        if not window > 0:
            raise ValueError("window must be > 0")
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)
        object.__setattr__(self, "window", window)

    def piece(self, region):
        if region == 1:
            return self.p1
        elif region == 2:
            return self.p2
        raise ValueError("region must be 1 or 2")

    def __add__(self, other):
        bound = max(self.degreeBound, other.degreeBound)
        return PiecewisePolyState(self.p1 + other.p1, self.p2 + other.p2,
                                  min(self.window, other.window), bound)

    def scaled(self, factor):
        factor = exactRational(factor)
        return PiecewisePolyState(self.p1 * factor, self.p2 * factor, self.window, self.degreeBound)


@dataclass(frozen=True, eq=False)
class SingularDistribution:

    """regular + cDelta * delta + cDeltaPrime * delta'. `regular` is the
    pair (left piece, right piece) of polynomials.
    """

    regular: tuple = (zeroPoly, zeroPoly)
    cDelta: Rational = Rational(0)
    cDeltaPrime: Rational = Rational(0)

    def __post_init__(self):
        left, right = self.regular
        object.__setattr__(self, "regular", (rationalPoly(left), rationalPoly(right)))
        object.__setattr__(self, "cDelta", exactRational(self.cDelta))
        object.__setattr__(self, "cDeltaPrime", exactRational(self.cDeltaPrime))

    def __add__(self, other):
        return SingularDistribution(
            (self.regular[0] + other.regular[0], self.regular[1] + other.regular[1]),
            self.cDelta + other.cDelta,
            self.cDeltaPrime + other.cDeltaPrime)

    def __neg__(self):
        return SingularDistribution((-self.regular[0], -self.regular[1]), -self.cDelta, -self.cDeltaPrime)

    def __sub__(self, other):
        return SingularDistribution(
            (self.regular[0] - other.regular[0], self.regular[1] - other.regular[1]),
            self.cDelta - other.cDelta,
            self.cDeltaPrime - other.cDeltaPrime)

    def __eq__(self, other):
        if not isinstance(other, SingularDistribution):
            return NotImplemented
        return (self.regular[0] == other.regular[0] and self.regular[1] == other.regular[1]
                and self.cDelta == other.cDelta and self.cDeltaPrime == other.cDeltaPrime)

    def __repr__(self):
        left, right = (p.as_expr() for p in self.regular)
        return (f"SingularDistribution(regular=({left}, {right}), "
                f"cDelta={self.cDelta}, cDeltaPrime={self.cDeltaPrime})")

    def scaled(self, factor):
        factor = exactRational(factor)
        return SingularDistribution(
            (self.regular[0] * factor, self.regular[1] * factor),
            self.cDelta * factor, self.cDeltaPrime * factor)

    @property
    def isRegularZero(self):
        return self.regular[0].is_zero and self.regular[1].is_zero

    @property
    def isSquareIntegrable(self):
        """Locally L2 iff there is no delta or delta' part."""
        return self.cDelta == 0 and self.cDeltaPrime == 0

    @property
    def isZero(self):
        return self.isRegularZero and self.isSquareIntegrable

    def singularNorm(self):
        return max(abs(self.cDelta), abs(self.cDeltaPrime))


@dataclass(frozen=True, eq=False)
class LocalPotential:

    """V near the interface, as a polynomial with rational coefficients."""

    poly: PolyElement = field(default_factory=lambda: zeroPoly)

    def __post_init__(self):
        object.__setattr__(self, "poly", rationalPoly(self.poly))

    def coefficients(self):
        """Exact coefficients, constant term first."""
        return [QQ.to_sympy(self.poly.coeff(x**k)) for k in range(degree(self.poly) + 1)]

    @classmethod
    def fromPotential(cls, potential):
        coefficients = potential.localPolynomial()
        if coefficients is None:
            raise ValueError(f"{potential!r} is not polynomial near 0")
        return cls(list(coefficients))
