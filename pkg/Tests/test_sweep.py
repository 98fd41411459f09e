import math
import pytest
from qconfine.grid import Dirichlet, Grid, Robin
from qconfine.potential.builtinPotentials import ZeroPotential
from qconfine.solve.spectral import robinBoxLevels
from qconfine.solve.sweep import isMonotone, sweepLambda
from testSupport import relativeError


ladder = [Robin(-1.0), Robin(0.0), Robin(1.0), Robin(10.0), Robin(100.0), Robin(1e4)]


@pytest.mark.asyncio
async def test_sweepLambda_rightBlockMonotone():
    rows = await sweepLambda(Grid(1.0, 400), ZeroPotential(), ladder + [Dirichlet()])
    assert [row.bc for row in rows] == ladder + [Dirichlet()]
    assert isMonotone(rows)
    dirichletLevel = rows[-1].eigenvalues[0]
    assert relativeError(dirichletLevel, math.pi**2) < 1e-3
    assert relativeError(rows[-2].eigenvalues[0], dirichletLevel) < 1e-3


@pytest.mark.asyncio
async def test_sweepLambda_leftBlockMirrors():
    grid = Grid(1.0, 400)
    rows = await sweepLambda(grid, ZeroPotential(), ladder, block="left")
    mirrored = await sweepLambda(grid, ZeroPotential(), [Robin(-row.bc.lam) for row in rows])
    for row, mirroredRow in zip(rows, mirrored):
        assert row.eigenvalues == pytest.approx(mirroredRow.eigenvalues, rel=1e-12, abs=1e-9)
    # the left block reaches its Dirichlet limit as lam -> -inf
    assert isMonotone(list(reversed(rows)))


@pytest.mark.asyncio
async def test_sweepLambda_neumannDirichletBox():
    rows = await sweepLambda(Grid(1.0, 400), ZeroPotential(), [Robin(0.0)])
    assert len(rows) == 1
    assert relativeError(rows[0].eigenvalues[0], 2.4674) < 1e-3


@pytest.mark.asyncio
async def test_sweepLambda_againstOracle():
    rows = await sweepLambda(Grid(1.0, 400), ZeroPotential(), ladder, count=3)
    for row in rows:
        expected = robinBoxLevels(1.0, row.bc, 3)
        for value, expectedValue in zip(row.eigenvalues, expected):
            assert abs(value - expectedValue) <= 1e-3 * max(1, abs(expectedValue))


@pytest.mark.asyncio
async def test_sweepLambda_errors():
    grid = Grid(1.0, 10)
    with pytest.raises(ValueError):
        await sweepLambda(grid, ZeroPotential(), [])
    with pytest.raises(ValueError):
        await sweepLambda(grid, ZeroPotential(), [Robin(0.0)], block="middle")
    with pytest.raises(TypeError):
        await sweepLambda(grid, ZeroPotential(), [0.0])


@pytest.mark.asyncio
async def test_sweepLambda_zeroCount():
    rows = await sweepLambda(Grid(1.0, 10), ZeroPotential(), [Robin(0.0), Dirichlet()], count=0)
    assert [row.eigenvalues for row in rows] == [(), ()]
    assert [row.label for row in rows] == ["0", "inf"]
