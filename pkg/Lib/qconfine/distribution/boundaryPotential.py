"""Exact action of the confining Hamiltonians on piecewise polynomial
states near the interface, written as H0 plus a boundary potential
supported at 0.

The boundary potential of region k with parameter lam acts as

    finite lam:  d'_k + 2 lam d_k + (-1)**k d/dx [d_k (d/dx - lam)]
    lam = inf:  -d'_k + (-1)**k d_k

where d_k psi = delta(x) phi_k(x) and d'_k psi = delta'(x) phi_k(x). The
composite term is read as delta(x) (phi_k' - lam phi_k), collapsed to its
value at 0 before the outer derivative. With delta' f = f(0) delta' - f'(0)
delta and delta f = f(0) delta only delta and delta' ever appear.
"""

from sympy import Rational
from .polynomialState import (
    LocalPotential, SingularDistribution, boundaryValues, exactRational, x, zeroPoly,
)
from ..grid.layout import Dirichlet, Robin


def exactLambda(bc):
    if not isinstance(bc, Robin):
        raise TypeError("expected a Robin boundary parameter")
    return exactRational(bc.lam)


def _satisfiesCondition(poly, bc):
    value, slope = boundaryValues(poly)
    if isinstance(bc, Dirichlet):
        return value == 0
    return slope == exactLambda(bc) * value


def inDomain(state, bcLeft, bcRight):
    """(left_ok, right_ok): p_k'(0) = lam_k p_k(0), or p_k(0) = 0 for
    Dirichlet, compared exactly.
    """
    return _satisfiesCondition(state.p1, bcLeft), _satisfiesCondition(state.p2, bcRight)


def _regularAction(state, potential):
    V = _asLocalPotential(potential).poly
    return tuple(-poly.diff(x).diff(x) + V * poly for poly in (state.p1, state.p2))


def _asLocalPotential(potential):
    if potential is None:
        return LocalPotential()
    if isinstance(potential, LocalPotential):
        return potential
    return LocalPotential(potential)


def applyDirectSum(state, potential=None):
    """chi_1 H0 p1 + chi_2 H0 p2: always regular."""
    return SingularDistribution(_regularAction(state, potential))


def applyH0Distributional(state, potential=None):
    """-psi'' + V psi in the sense of distributions. The jumps of psi and
    psi' at 0 produce the delta' and delta terms.
    """
    value1, slope1 = boundaryValues(state.p1)
    value2, slope2 = boundaryValues(state.p2)
    return SingularDistribution(
        _regularAction(state, potential),
        cDelta=-(slope2 - slope1),
        cDeltaPrime=-(value2 - value1),
    )


def applyBoundaryPotential(region, bc, state):
    """The purely singular boundary potential of region 1 or 2."""
    phi = state.piece(region)
    sign = (-1)**region
    value, slope = boundaryValues(phi)
    if isinstance(bc, Dirichlet):
        cDeltaPrime = -value
        cDelta = slope + sign * value
    elif isinstance(bc, Robin):
        lam = exactLambda(bc)
        cDeltaPrime = value + sign * (slope - lam * value)
        cDelta = 2 * lam * value - slope
    else:
        raise TypeError("bc must be Robin or Dirichlet")
    return SingularDistribution((zeroPoly, zeroPoly), cDelta, cDeltaPrime)


def boundaryPotentialResidual(state, potential, bcLeft, bcRight, flipLeftSign=False):
    """(H0 - B_1 + B_2) psi - chi_1 H0 p1 - chi_2 H0 p2.

    The regular part always cancels. The singular part vanishes exactly when
    both boundary conditions hold. `flipLeftSign` adds B_1 instead of
    subtracting it; it exists to check that the verification catches a wrong
    sign.
    """
    leftSign = Rational(1) if flipLeftSign else Rational(-1)
    return (applyH0Distributional(state, potential)
            + applyBoundaryPotential(1, bcLeft, state).scaled(leftSign)
            + applyBoundaryPotential(2, bcRight, state)
            - applyDirectSum(state, potential))
