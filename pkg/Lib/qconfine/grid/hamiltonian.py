from dataclasses import dataclass
import math
from typing import Any
import numpy as np
import scipy.linalg
from .layout import Dirichlet, Grid, GridLayout, Robin
from .waveFunction import WaveFunction, projectRegion


@dataclass(frozen=True, eq=False)
class TridiagonalBlock:

    """Real symmetric tridiagonal matrix, each off-diagonal entry stored once."""

    diag: np.ndarray
    offdiag: np.ndarray
    region: int = 0  # 0 for the undivided global operator

    def __post_init__(self):
        if len(self.offdiag) != max(len(self.diag) - 1, 0):
            raise ValueError("offdiag must have one entry less than diag")
        self.diag.setflags(write=False)
        self.offdiag.setflags(write=False)

    @property
    def size(self):
        return len(self.diag)

    def matvec(self, vector):
        result = self.diag * vector
        if len(vector) > 1:
            result[:-1] += self.offdiag * vector[1:]
            result[1:] += self.offdiag * vector[:-1]
        return result

    def toDense(self):
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


class _BaseHamiltonian:

    def blockSlices(self):
        """Pairs of (block, slice into the state vector)."""
        start = 0
        for block in self.blocks:
            yield block, slice(start, start + block.size)
            start += block.size

    @property
    def size(self):
        return sum(block.size for block in self.blocks)


@dataclass(frozen=True, eq=False)
class GlobalHamiltonian(_BaseHamiltonian):

    """-d2/dx2 + V on the undivided grid: the node at 0 is an ordinary
    interior node, no interface condition.
    """

    block: TridiagonalBlock
    grid: Grid
    potential: Any
    layout: GridLayout

    @property
    def blocks(self):
        return (self.block,)

    @property
    def diag(self):
        return self.block.diag

    @property
    def offdiag(self):
        return self.block.offdiag


@dataclass(frozen=True, eq=False)
class ConfinedHamiltonian(_BaseHamiltonian):

    """Direct sum of a left and a right block with boundary data at 0.
    No entry couples the two blocks.
    """

    leftBlock: TridiagonalBlock
    rightBlock: TridiagonalBlock
    bcLeft: Any
    bcRight: Any
    grid: Grid
    potential: Any
    layout: GridLayout

    @property
    def blocks(self):
        return (self.leftBlock, self.rightBlock)


def buildH0(grid, potential):
    V = potential.evaluateOnGrid(grid)
    invH2 = grid.inverseSpacingSquared
    diag = 2 * invH2 + V
    offdiag = np.full(len(diag) - 1, -invH2)
    block = TridiagonalBlock(diag, offdiag)
    return GlobalHamiltonian(block, grid, potential, GridLayout.forGlobal(grid))


def buildConfined(grid, potential, bcLeft, bcRight):
    """Assemble the confining operator: the direct sum of a left and a right block.

    A Robin block keeps the node at 0; its row comes from eliminating the
    ghost node across 0 with the centered condition phi'(0) = lam * phi(0),
    then rescaling the interface unknown by sqrt(1/2) so that the matrix is
    symmetric. A Dirichlet block drops the node at 0.
    """
    for bc in (bcLeft, bcRight):
        if not isinstance(bc, (Robin, Dirichlet)):
            raise TypeError("boundary parameters must be Robin or Dirichlet")
    layout = GridLayout.forConfined(grid, bcLeft, bcRight)
    V = potential.evaluateOnGrid(grid)
    h = grid.spacing
    invH2 = grid.inverseSpacingSquared
    interfaceOffdiag = -math.sqrt(2) * invH2

    leftIndices = layout.globalIndices[:layout.leftSize]
    leftDiag = 2 * invH2 + V[leftIndices]
    leftOffdiag = np.full(len(leftIndices) - 1, -invH2)
    if isinstance(bcLeft, Robin):
        # ghost node phi(h) = phi(-h) + 2 h lam phi(0)
        leftDiag[-1] = 2 * invH2 - 2 * bcLeft.lam / h + V[grid.interfaceIndex]
        leftOffdiag[-1] = interfaceOffdiag

    rightIndices = layout.globalIndices[layout.leftSize:]
    rightDiag = 2 * invH2 + V[rightIndices]
    rightOffdiag = np.full(len(rightIndices) - 1, -invH2)
    if isinstance(bcRight, Robin):
        # ghost node phi(-h) = phi(h) - 2 h lam phi(0)
        rightDiag[0] = 2 * invH2 + 2 * bcRight.lam / h + V[grid.interfaceIndex]
        rightOffdiag[0] = interfaceOffdiag

    return ConfinedHamiltonian(
        TridiagonalBlock(leftDiag, leftOffdiag, region=1),
        TridiagonalBlock(rightDiag, rightOffdiag, region=2),
        bcLeft, bcRight, grid, potential, layout,
    )


def _checkLayout(hamiltonian, psi):
    if psi.layout.size != hamiltonian.size:
        raise ValueError(f"dimension mismatch: state of size {psi.layout.size}, "
                         f"operator of size {hamiltonian.size}")


def applyHamiltonian(hamiltonian, psi):
    _checkLayout(hamiltonian, psi)
    amplitudes = psi.amplitudes
    result = np.zeros_like(amplitudes, dtype=np.result_type(amplitudes, float))
    for block, blockSlice in hamiltonian.blockSlices():
        result[blockSlice] = block.matvec(amplitudes[blockSlice])
    return WaveFunction(result, hamiltonian.layout)


def commutatorProjector(hamiltonian, psi, region):
    """P_k (H psi) - H (P_k psi)"""
    _checkLayout(hamiltonian, psi)
    first = projectRegion(applyHamiltonian(hamiltonian, psi), region)
    second = applyHamiltonian(hamiltonian, projectRegion(psi, region))
    return psi.withAmplitudes(first.amplitudes - second.amplitudes)


def toDenseMatrix(hamiltonian):
    return scipy.linalg.block_diag(*(block.toDense() for block in hamiltonian.blocks))


def symmetryDefect(matrixOrHamiltonian):
    """max |H_ij - H_ji|; accepts an assembled operator or a square array."""
    if isinstance(matrixOrHamiltonian, _BaseHamiltonian):
        matrix = toDenseMatrix(matrixOrHamiltonian)
    else:
        matrix = np.asarray(matrixOrHamiltonian, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("expected a square matrix")
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix - matrix.T)))
