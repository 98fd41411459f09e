import logging
import math
import numpy as np
import pytest
from sympy import Rational
from qconfine.errors import ConfigError
from qconfine.grid import Grid
from qconfine.potential import getPotentialClass, kindNames, potentialFromDict
from qconfine.potential.builtinPotentials import (
    HarmonicPotential, SquareWellPotential, TabulatedPotential, ZeroPotential,
)


def test_kindNames():
    assert kindNames == ["harmonic", "square_well", "tabulated", "zero"]


@pytest.mark.parametrize("kind", ["zero", "harmonic", "square_well", "tabulated"])
def test_getPotentialClass(kind):
    assert getPotentialClass(kind).kind == kind


def test_getPotentialClass_unknown():
    with pytest.raises(ConfigError):
        getPotentialClass("morse")


evaluateTestData = [
    (ZeroPotential(), 3.5, 0.0),
    (HarmonicPotential(omega=1), 2.0, 4.0),
    (HarmonicPotential(omega=1), -2.0, 4.0),
    (HarmonicPotential(omega=2), 0.5, 1.0),
    (SquareWellPotential(depth=-1, width=1), 0.0, -1.0),
    (SquareWellPotential(depth=-1, width=1), 0.49, -1.0),
    (SquareWellPotential(depth=-1, width=1), 0.5, 0.0),
    (SquareWellPotential(depth=-1, width=1), 2.0, 0.0),
    (TabulatedPotential([(0, 0), (1, 2)]), 0.5, 1.0),
    (TabulatedPotential([(0, 0), (1, 2)]), 5.0, 2.0),
    (TabulatedPotential([(0, 0), (1, 2)]), -5.0, 0.0),
]


@pytest.mark.parametrize("potential,x,expectedValue", evaluateTestData)
def test_evaluate(potential, x, expectedValue):
    assert potential.evaluate(x) == pytest.approx(expectedValue)


@pytest.mark.parametrize("x", [math.inf, -math.inf, math.nan])
def test_evaluate_nonFinite(x):
    with pytest.raises(ValueError):
        HarmonicPotential().evaluate(x)


tabulatedErrorData = [
    [(0, 0)],
    [],
    [(1, 0), (0, 1)],
    [(0, 0), (0, 1)],
    [(0, 0), (1, math.nan)],
    [(0, 0), (1,)],
]


@pytest.mark.parametrize("nodes", tabulatedErrorData)
def test_tabulated_errors(nodes):
    with pytest.raises(ConfigError):
        TabulatedPotential(nodes)


def test_evaluateOnGrid():
    grid = Grid(1.0, 4)
    values = HarmonicPotential().evaluateOnGrid(grid)
    assert values.tolist() == [0.5625, 0.25, 0.0625, 0.0, 0.0625, 0.25, 0.5625]


def test_evaluateOnGrid_symmetric():
    grid = Grid(3.0, 1000)
    values = HarmonicPotential(omega=1.3).evaluateOnGrid(grid)
    assert np.array_equal(values, values[::-1])


def test_potentialFromDict():
    potential = potentialFromDict(dict(kind="harmonic", omega=2.0))
    assert isinstance(potential, HarmonicPotential)
    assert potential.omega == 2.0
    assert isinstance(potentialFromDict({}), ZeroPotential)


@pytest.mark.parametrize("block", [
    dict(kind="harmonic", depth=1.0),
    dict(kind="nothing"),
    dict(kind="square_well", width=-1.0),
])
def test_potentialFromDict_errors(block):
    with pytest.raises(ConfigError):
        potentialFromDict(block)


def test_checkGrowthCondition():
    xs = np.linspace(-10, 10, 201)
    assert len(HarmonicPotential().checkGrowthCondition(1.0, xs)) == 0
    deep = TabulatedPotential([(-1, 0), (1, -100)], quad_bound_k=1.0)
    failing = deep.checkGrowthCondition(5.0, xs)
    assert len(failing) > 0
    assert np.all(failing > 5.0)


def test_evaluateOnGrid_growthWarning(caplog):
    grid = Grid(10.0, 100)
    deep = TabulatedPotential([(-1, 0), (1, -1000)], quad_bound_k=1.0)
    with caplog.at_level(logging.WARNING):
        values = deep.evaluateOnGrid(grid)
    assert values[-1] == -1000
    assert "violates" in caplog.text


@pytest.mark.parametrize("potential", [
    TabulatedPotential([(-1, 0), (1, -1000)]),
    TabulatedPotential([(-1, 0), (1, -1000)], quad_bound_k=1.0, growth_x0=40.0),
    HarmonicPotential(quad_bound_k=0.5),
])
def test_evaluateOnGrid_noGrowthWarning(potential, caplog):
    with caplog.at_level(logging.WARNING):
        potential.evaluateOnGrid(Grid(10.0, 100))
    assert "violates" not in caplog.text


def test_growthX0_errors():
    with pytest.raises(ValueError):
        HarmonicPotential(growth_x0=-1.0)


localPolynomialTestData = [
    (ZeroPotential(), [Rational(0)]),
    (HarmonicPotential(omega=3), [0, 0, 9]),
    (HarmonicPotential(omega=0.1), [0, 0, Rational(1, 100)]),
    (SquareWellPotential(depth=-2.5, width=1), [Rational(-5, 2)]),
    (SquareWellPotential(depth=-0.1, width=1), [Rational(-1, 10)]),
    (SquareWellPotential(depth=-2.5, width=0), [0]),
    (TabulatedPotential([(0, 0), (1, 1)]), None),
]


@pytest.mark.parametrize("potential,expectedCoefficients", localPolynomialTestData)
def test_localPolynomial(potential, expectedCoefficients):
    assert potential.localPolynomial() == expectedCoefficients


def test_repr():
    assert repr(HarmonicPotential(omega=2)) == "HarmonicPotential(omega=2.0, quad_bound_k=0.0, growth_x0=0.0)"
