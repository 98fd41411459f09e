import math
import numpy as np
import pytest
from qconfine.errors import ConfigError
from qconfine.grid import (
    Dirichlet, Grid, GridLayout, Robin, WaveFunction, applyHamiltonian, buildConfined,
    buildH0, commutatorProjector, innerProduct, parseBoundaryParam, projectRegion,
    symmetryDefect, toDenseMatrix, transferState,
)
from qconfine.potential.builtinPotentials import HarmonicPotential, ZeroPotential
from testSupport import boundaryPairs, randomState


@pytest.mark.parametrize("halfWidth,nPerSide,exceptionClass", [
    (0.0, 10, ValueError),
    (-1.0, 10, ValueError),
    (math.inf, 10, ValueError),
    (1.0, 2, ValueError),
    (1.0, 10.0, TypeError),
])
def test_grid_errors(halfWidth, nPerSide, exceptionClass):
    with pytest.raises(exceptionClass):
        Grid(halfWidth, nPerSide)


def test_grid_nodes():
    grid = Grid(2.0, 4)
    assert grid.spacing == 0.5
    assert grid.nodes.tolist() == [-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5]
    assert grid.nodes[grid.interfaceIndex] == 0.0
    assert np.array_equal(grid.nodes, -grid.nodes[::-1])
    with pytest.raises(ValueError):
        grid.nodes[0] = 1


parseTestData = [
    (0, Robin(0.0)),
    (2.5, Robin(2.5)),
    ("-3", Robin(-3.0)),
    ("inf", Dirichlet()),
    ("INF", Dirichlet()),
    (math.inf, Dirichlet()),
    (Dirichlet(), Dirichlet()),
]


@pytest.mark.parametrize("value,expectedParam", parseTestData)
def test_parseBoundaryParam(value, expectedParam):
    assert parseBoundaryParam(value) == expectedParam


@pytest.mark.parametrize("value", ["abc", -math.inf, math.nan, True, None, [1]])
def test_parseBoundaryParam_errors(value):
    with pytest.raises(ConfigError):
        parseBoundaryParam(value)


def test_boundaryParam_str():
    assert str(Robin(0.1)) == "0.10000000000000001"
    assert str(Robin(1e4)) == "10000"
    assert str(Dirichlet()) == "inf"


@pytest.mark.parametrize("bcLeft,bcRight,expectedSize", [
    (Dirichlet(), Dirichlet(), 6),
    (Robin(0.0), Dirichlet(), 7),
    (Dirichlet(), Robin(0.0), 7),
    (Robin(1.0), Robin(-1.0), 8),
])
def test_confinedLayout(bcLeft, bcRight, expectedSize):
    grid = Grid(2.0, 4)
    layout = GridLayout.forConfined(grid, bcLeft, bcRight)
    assert layout.size == expectedSize
    assert np.all(layout.nodes[layout.regionMask(1)] <= 0)
    assert np.all(layout.nodes[layout.regionMask(2)] >= 0)
    interfaceEntries = layout.globalIndices == grid.interfaceIndex
    assert np.all(layout.weights[interfaceEntries] == 0.5)
    assert np.all(layout.weights[~interfaceEntries] == 1.0)


def test_globalLayout():
    grid = Grid(2.0, 4)
    layout = GridLayout.forGlobal(grid)
    assert layout.regions.tolist() == [1, 1, 1, 1, 2, 2, 2]
    assert layout.edgeMask().tolist() == [True, True, False, False, False, True, True]


def test_buildH0_freeSmallGrid():
    # L = 2, n = 4: h = 0.5, so 1/h**2 = 4
    H = buildH0(Grid(2.0, 4), ZeroPotential())
    assert H.size == 7
    assert H.diag.tolist() == [8.0] * 7
    assert H.offdiag.tolist() == [-4.0] * 6


def test_buildH0_harmonicDiagonal():
    grid = Grid(1.0, 4)
    H = buildH0(grid, HarmonicPotential())
    assert H.diag[grid.interfaceIndex] == 32.0
    assert H.diag[0] == 32.5625


def test_buildConfined_dirichlet():
    H = buildConfined(Grid(2.0, 4), ZeroPotential(), Dirichlet(), Dirichlet())
    assert H.leftBlock.diag.tolist() == [8.0, 8.0, 8.0]
    assert H.rightBlock.diag.tolist() == [8.0, 8.0, 8.0]
    assert H.leftBlock.offdiag.tolist() == [-4.0, -4.0]


def test_buildConfined_robinInterfaceRows():
    H = buildConfined(Grid(2.0, 4), ZeroPotential(), Robin(1.0), Robin(1.0))
    # 2/h**2 -/+ 2 lam/h, h = 0.5
    assert H.leftBlock.diag[-1] == 4.0
    assert H.rightBlock.diag[0] == 12.0
    assert H.leftBlock.offdiag[-1] == -4.0 * math.sqrt(2)
    assert H.rightBlock.offdiag[0] == -4.0 * math.sqrt(2)
    assert H.leftBlock.offdiag[0] == -4.0


def test_buildConfined_badParam():
    with pytest.raises(TypeError):
        buildConfined(Grid(2.0, 4), ZeroPotential(), 1.0, Dirichlet())


@pytest.mark.parametrize("bcLeft,bcRight", boundaryPairs)
def test_selfAdjointSurrogate(bcLeft, bcRight):
    rng = np.random.default_rng(20)
    H = buildConfined(Grid(3.0, 60), HarmonicPotential(), bcLeft, bcRight)
    assert symmetryDefect(H) == 0
    for i in range(100):
        phi = randomState(H.layout, rng, complexValued=True)
        psi = randomState(H.layout, rng, complexValued=True)
        lhs = innerProduct(applyHamiltonian(H, phi), psi)
        rhs = innerProduct(phi, applyHamiltonian(H, psi))
        assert abs(lhs - rhs) <= 1e-12 * max(1, abs(lhs))


def test_symmetryDefect_array():
    assert symmetryDefect(np.array([[1.0, 2.0], [2.5, 1.0]])) == 0.5
    assert symmetryDefect(toDenseMatrix(buildH0(Grid(1.0, 5), ZeroPotential()))) == 0
    with pytest.raises(ValueError):
        symmetryDefect(np.zeros((2, 3)))


def test_blocksDecoupled():
    H = buildConfined(Grid(1.0, 10), ZeroPotential(), Robin(2.0), Robin(-1.0))
    dense = toDenseMatrix(H)
    leftSize = H.layout.leftSize
    assert np.all(dense[:leftSize, leftSize:] == 0)
    assert np.all(dense[leftSize:, :leftSize] == 0)


@pytest.mark.parametrize("bcLeft,bcRight", boundaryPairs)
def test_commutatorProjector_vanishes(bcLeft, bcRight):
    rng = np.random.default_rng(2)
    H = buildConfined(Grid(1.0, 30), HarmonicPotential(), bcLeft, bcRight)
    for i in range(100):
        psi = randomState(H.layout, rng, complexValued=True)
        for region in (1, 2):
            assert np.all(commutatorProjector(H, psi, region).amplitudes == 0)


def test_commutatorProjector_globalLeaks():
    rng = np.random.default_rng(3)
    H = buildH0(Grid(1.0, 30), ZeroPotential())
    psi = randomState(H.layout, rng)
    assert np.any(commutatorProjector(H, psi, 1).amplitudes != 0)


@pytest.mark.parametrize("bcLeft,bcRight", boundaryPairs)
def test_localAgreementAwayFromInterface(bcLeft, bcRight):
    rng = np.random.default_rng(4)
    grid = Grid(2.0, 50)
    potential = HarmonicPotential(omega=0.7)
    H0 = buildH0(grid, potential)
    H = buildConfined(grid, potential, bcLeft, bcRight)
    quiet = (np.abs(grid.nodes) <= 2 * grid.spacing) | (np.abs(grid.nodes) >= grid.halfWidth - 2 * grid.spacing)
    for i in range(50):
        values = rng.standard_normal(len(grid.nodes))
        values[quiet] = 0
        psiGlobal = WaveFunction(values, H0.layout)
        psiConfined = transferState(psiGlobal, H.layout)
        resultGlobal = applyHamiltonian(H0, psiGlobal).amplitudes
        resultConfined = applyHamiltonian(H, psiConfined).amplitudes
        assert np.array_equal(resultConfined, resultGlobal[H.layout.globalIndices])


def test_applyHamiltonian_dimensionMismatch():
    grid = Grid(1.0, 5)
    H = buildConfined(grid, ZeroPotential(), Dirichlet(), Dirichlet())
    psi = WaveFunction(np.ones(len(grid.nodes)), GridLayout.forGlobal(grid))
    with pytest.raises(ValueError):
        applyHamiltonian(H, psi)


def test_applyHamiltonian_zero():
    H = buildConfined(Grid(1.0, 5), HarmonicPotential(), Robin(3.0), Dirichlet())
    psi = WaveFunction(np.zeros(H.size), H.layout)
    assert np.all(applyHamiltonian(H, psi).amplitudes == 0)


def test_projectRegion():
    grid = Grid(2.0, 4)
    layout = GridLayout.forGlobal(grid)
    psi = WaveFunction(np.arange(1.0, 8.0), layout)
    assert projectRegion(psi, 1).amplitudes.tolist() == [1, 2, 3, 4, 0, 0, 0]
    assert projectRegion(psi, 2).amplitudes.tolist() == [0, 0, 0, 0, 5, 6, 7]
    with pytest.raises(ValueError):
        projectRegion(psi, 3)


def test_innerProduct_trapezoidal():
    # the h-weighted product of a Robin layout is the trapezoidal rule with
    # the interface node counted half on each side
    grid = Grid(1.0, 8)
    layout = GridLayout.forConfined(grid, Robin(0.0), Robin(0.0))
    psi = WaveFunction.fromNodalValues(np.ones(layout.size), layout)
    assert innerProduct(psi, psi) == pytest.approx(2 * grid.halfWidth - grid.spacing)


def test_transferState_roundTripAwayFromInterface():
    grid = Grid(1.0, 6)
    layoutGlobal = GridLayout.forGlobal(grid)
    layoutConfined = GridLayout.forConfined(grid, Robin(1.0), Robin(2.0))
    psi = WaveFunction(np.linspace(1, 2, len(grid.nodes)), layoutGlobal)
    back = transferState(transferState(psi, layoutConfined), layoutGlobal)
    assert np.allclose(back.amplitudes, psi.amplitudes, rtol=0, atol=1e-15)


def test_waveFunction_errors():
    layout = GridLayout.forGlobal(Grid(1.0, 4))
    with pytest.raises(ValueError):
        WaveFunction(np.ones(3), layout)
    with pytest.raises(ValueError):
        WaveFunction(np.ones((7, 1)), layout)
    with pytest.raises(ValueError):
        WaveFunction(np.zeros(7), layout).normalized()


@pytest.mark.parametrize("nPerSide", [4, 50])
def test_buildH0_constantVector(nPerSide):
    # a constant is annihilated by -d2/dx2 everywhere except next to the walls at +/-L
    grid = Grid(1.0, nPerSide)
    H = buildH0(grid, ZeroPotential())
    result = applyHamiltonian(H, WaveFunction(np.ones(H.size), H.layout)).amplitudes
    assert np.all(result[1:-1] == 0)
    assert result[0] == result[-1] == pytest.approx(1 / grid.spacing**2)
