from .polynomialState import (  # noqa: F401
    LocalPotential, PiecewisePolyState, SingularDistribution, rationalPoly, x,
)
from .boundaryPotential import (  # noqa: F401
    applyBoundaryPotential, applyDirectSum, applyH0Distributional,
    boundaryPotentialResidual, inDomain,
)
from .pairing import (  # noqa: F401
    BumpTestFunction, PolynomialBumpTestFunction, pairWithTest,
)
