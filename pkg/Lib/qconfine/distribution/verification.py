"""Randomized exact sweep over pairs of boundary parameters: on-domain
states must leave no residue, states violating a boundary condition by a
rational amount eps must leave a singular residue that is linear in eps,
and every symbolic residue must agree with its quadrature pairing.
"""

from dataclasses import dataclass, field
import logging
import numpy as np
from sympy import Rational
from .boundaryPotential import boundaryPotentialResidual, exactLambda
from .pairing import PolynomialBumpBatch, pairResidualByDefinition, pairWithTest, relativeDeviation
from .polynomialState import LocalPotential, PiecewisePolyState, rationalPoly
from ..errors import VerificationError
from ..grid.layout import Dirichlet, parseBoundaryParam


oracleTolerance = 1e-9


@dataclass(frozen=True)
class VerificationSettings:
    seed: int = 0
    casesPerPair: int = 200
    lambdas: tuple = (-5, -1, 0, 1, 5, "inf")
    degree: int = 6
    flipLeftSign: bool = False
    testFunctionsPerCase: int = 20
    potential: tuple = (0, 0, 1)  # x**2, constant term first

    def __post_init__(self):
        if self.casesPerPair < 1:
            raise ValueError("casesPerPair must be >= 1")
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        if self.testFunctionsPerCase < 0:
            raise ValueError("testFunctionsPerCase must be >= 0")
        if not self.lambdas:
            raise ValueError("lambdas must not be empty")

    @property
    def boundaryParams(self):
        return [parseBoundaryParam(lam) for lam in self.lambdas]


@dataclass
class VerificationReport:
    seed: int
    potential: list = field(default_factory=list)  # exact coefficients of V near 0
    casesOnDomain: int = 0
    casesOffDomain: int = 0
    maxOnDomainResidue: Rational = Rational(0)
    minOffDomainResidueNorm: Rational = None
    oracleMaxDeviation: float = 0.0
    regularPartAlwaysZero: bool = True
    linearInViolation: bool = True
    failures: list = field(default_factory=list)

    @property
    def contractHolds(self):
        return (self.maxOnDomainResidue == 0
                and self.minOffDomainResidueNorm is not None
                and self.minOffDomainResidueNorm > 0
                and self.regularPartAlwaysZero
                and self.linearInViolation
                and self.oracleMaxDeviation <= oracleTolerance)

    def asDict(self):
        minOff = self.minOffDomainResidueNorm
        return dict(
            seed=self.seed,
            potential=[str(c) for c in self.potential],
            cases_on_domain=self.casesOnDomain,
            cases_off_domain=self.casesOffDomain,
            max_on_domain_residue=str(self.maxOnDomainResidue),
            min_off_domain_residue_norm=None if minOff is None else str(minOff),
            oracle_max_deviation=self.oracleMaxDeviation,
            regular_part_always_zero=self.regularPartAlwaysZero,
            linear_in_violation=self.linearInViolation,
            contract_holds=self.contractHolds,
        )

    def check(self):
        if not self.contractHolds:
            details = "; ".join(self.failures[:5])
            raise VerificationError(f"boundary potential contract violated: {details}")


def randomRational(rng, nonzero=False):
    numerator = 0
    while True:
        numerator = int(rng.integers(-9, 10))
        if numerator or not nonzero:
            break
    return Rational(numerator, int(rng.integers(1, 10)))


def randomOnDomainPiece(rng, bc, degree):
    """Coefficients (constant term first) with the boundary condition
    imposed on the two lowest ones.
    """
    coefficients = [randomRational(rng) for i in range(degree + 1)]
    if isinstance(bc, Dirichlet):
        coefficients[0] = Rational(0)
    else:
        coefficients[1] = exactLambda(bc) * coefficients[0]
    return rationalPoly(coefficients)


def violation(bc):
    """The unit perturbation that breaks `bc` by exactly 1."""
    if isinstance(bc, Dirichlet):
        return rationalPoly([1])
    return rationalPoly([0, 1])


def randomTestFunctions(rng, window, count):
    """`count` polynomial bumps that cover 0 and stay inside the window."""
    window = float(window)
    centers = rng.uniform(-0.4, 0.4, count) * window
    radii = rng.uniform(np.abs(centers) + 0.1 * window, 0.999 * (window - np.abs(centers)))
    return PolynomialBumpBatch(centers, radii)


def randomTestFunction(rng, window):
    return next(iter(randomTestFunctions(rng, window, 1)))


def _offDomainState(state, bcLeft, bcRight, side, eps):
    """side 0 breaks the left condition, 1 the right one, 2 both."""
    p1, p2 = state.p1, state.p2
    if side in (0, 2):
        p1 = p1 + violation(bcLeft) * eps
    if side in (1, 2):
        p2 = p2 + violation(bcRight) * eps
    return PiecewisePolyState(p1, p2, state.window, state.degreeBound)


def runBoundaryPotentialSweep(settings):
    rng = np.random.default_rng(settings.seed)
    potential = LocalPotential(list(settings.potential))
    report = VerificationReport(seed=settings.seed, potential=potential.coefficients())
    bcs = settings.boundaryParams

    def checkOracle(state, bcLeft, bcRight, residue):
        if not settings.testFunctionsPerCase:
            return
        bumps = randomTestFunctions(rng, state.window, settings.testFunctionsPerCase)
        symbolic = pairWithTest(residue, bumps, state.window)
        direct = pairResidualByDefinition(state, potential, bcLeft, bcRight, bumps,
                                          flipLeftSign=settings.flipLeftSign)
        report.oracleMaxDeviation = max(report.oracleMaxDeviation,
                                        float(np.max(relativeDeviation(symbolic, direct))))

    def residualOf(state, bcLeft, bcRight):
        residue = boundaryPotentialResidual(state, potential, bcLeft, bcRight,
                                            flipLeftSign=settings.flipLeftSign)
        if not residue.isRegularZero:
            report.regularPartAlwaysZero = False
            report.failures.append(f"regular part left over for {bcLeft}, {bcRight}")
        return residue

    for bcLeft in bcs:
        for bcRight in bcs:
            for i in range(settings.casesPerPair):
                state = PiecewisePolyState(
                    randomOnDomainPiece(rng, bcLeft, settings.degree),
                    randomOnDomainPiece(rng, bcRight, settings.degree),
                    degreeBound=settings.degree)
                residue = residualOf(state, bcLeft, bcRight)
                report.casesOnDomain += 1
                size = residue.singularNorm()
                if size > report.maxOnDomainResidue:
                    report.maxOnDomainResidue = size
                    report.failures.append(f"on-domain residue {residue!r} for {bcLeft}, {bcRight}")
                checkOracle(state, bcLeft, bcRight, residue)

                eps = randomRational(rng, nonzero=True)
                side = int(rng.integers(0, 3))
                broken = _offDomainState(state, bcLeft, bcRight, side, eps)
                doubled = _offDomainState(state, bcLeft, bcRight, side, 2 * eps)
                base = residue
                residue = residualOf(broken, bcLeft, bcRight)
                if residualOf(doubled, bcLeft, bcRight) - base != (residue - base).scaled(2):
                    report.linearInViolation = False
                    report.failures.append(f"residue not linear in the violation for {bcLeft}, {bcRight}")
                report.casesOffDomain += 1
                size = residue.singularNorm()
                if report.minOffDomainResidueNorm is None or size < report.minOffDomainResidueNorm:
                    report.minOffDomainResidueNorm = size
                if size == 0:
                    report.failures.append(f"off-domain state left no residue for {bcLeft}, {bcRight}")
                checkOracle(broken, bcLeft, bcRight, residue)
            logging.info("verified %d cases for (%s, %s)", settings.casesPerPair, bcLeft, bcRight)
    return report
