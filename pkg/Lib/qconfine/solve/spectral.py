from dataclasses import dataclass
import math
from typing import Tuple
import numpy as np
import scipy.linalg
import scipy.optimize
from ..errors import NumericalError
from ..grid.hamiltonian import applyHamiltonian
from ..grid.layout import Dirichlet, Robin
from ..grid.waveFunction import WaveFunction


regionTags = {0: "global", 1: "left", 2: "right"}


@dataclass(frozen=True, eq=False)
class EigenDecomposition:

    """Eigenpairs in ascending order. Eigenvectors are WaveFunctions,
    normalized in the h-weighted inner product.
    """

    eigenvalues: np.ndarray
    eigenvectors: Tuple[WaveFunction, ...]
    regionTags: Tuple[str, ...]

    def __len__(self):
        return len(self.eigenvalues)

    def __iter__(self):
        return zip(self.eigenvalues, self.eigenvectors, self.regionTags)


def eigenTridiagonal(diag, offdiag, count):
    """The `count` lowest eigenpairs of a real symmetric tridiagonal matrix,
    by Sturm-sequence bisection plus inverse iteration (LAPACK stebz/stein).
    Returns (eigenvalues, eigenvectors) with unit Euclidean-norm columns.
    """
    diag = np.asarray(diag, dtype=float)
    offdiag = np.asarray(offdiag, dtype=float)
    size = len(diag)
    if len(offdiag) != max(size - 1, 0):
        raise ValueError("offdiag must have one entry less than diag")
    if not 1 <= count <= size:
        raise ValueError(f"count must be between 1 and {size}, got {count}")
    if size == 1:
        return diag.copy(), np.ones((1, 1))
    try:
        eigenvalues, eigenvectors = scipy.linalg.eigh_tridiagonal(
            diag, offdiag, select="i", select_range=(0, count - 1),
            lapack_driver="stebz")
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"tridiagonal eigensolver failed: {e}", index=_failedIndex(e))
    if not np.all(np.isfinite(eigenvectors)):
        raise NumericalError("inverse iteration produced non-finite eigenvectors")
    return eigenvalues, eigenvectors


def _failedIndex(error):
    # LAPACK reports the failing eigenvector in its info value, which scipy
    # puts in the message text.
    digits = [int(word) for word in str(error).replace(",", " ").split() if word.isdigit()]
    return digits[-1] if digits else None


def _blockDecomposition(hamiltonian, block, blockSlice, count):
    eigenvalues, vectors = eigenTridiagonal(block.diag, block.offdiag, count)
    scale = 1 / math.sqrt(hamiltonian.grid.spacing)
    states = []
    for column in vectors.T:
        amplitudes = np.zeros(hamiltonian.size)
        amplitudes[blockSlice] = column * scale
        states.append(WaveFunction(amplitudes, hamiltonian.layout))
    return [(value, block.region, state) for value, state in zip(eigenvalues, states)]


def _mergePairs(pairs):
    # ties are ordered by region: left before right
    pairs = sorted(pairs, key=lambda item: (item[0], item[1]))
    return EigenDecomposition(
        np.array([value for value, region, state in pairs]),
        tuple(state for value, region, state in pairs),
        tuple(regionTags[region] for value, region, state in pairs),
    )


def eigenConfined(hamiltonian, countPerBlock):
    """Union of the block spectra; every eigenvector vanishes on the other
    block.
    """
    pairs = []
    for block, blockSlice in hamiltonian.blockSlices():
        count = min(countPerBlock, block.size)
        if count < 1:
            continue
        pairs.extend(_blockDecomposition(hamiltonian, block, blockSlice, count))
    return _mergePairs(pairs)


def eigenGlobal(hamiltonian, count):
    block, blockSlice = next(hamiltonian.blockSlices())
    return _mergePairs(_blockDecomposition(hamiltonian, block, blockSlice, count))


def parityLevels(decomposition, parity):
    """Eigenvalues of a global decomposition whose eigenvectors are even
    (parity=+1) or odd (parity=-1) under x -> -x. The odd levels of an even
    potential are the Dirichlet levels of either half-line.
    """
    if parity not in (1, -1):
        raise ValueError("parity must be +1 or -1")
    levels = []
    for value, state, tag in decomposition:
        amplitudes = state.amplitudes
        mirrored = amplitudes[::-1]
        if np.linalg.norm(amplitudes - parity * mirrored) < np.linalg.norm(amplitudes) * 1e-6:
            levels.append(value)
    return np.array(levels)


def residual(hamiltonian, energy, psi):
    """||H psi - E psi|| / ||psi||, h-weighted."""
    norm = psi.norm()
    if norm == 0:
        raise ValueError("residual of the zero state is undefined")
    hPsi = applyHamiltonian(hamiltonian, psi)
    return psi.withAmplitudes(hPsi.amplitudes - energy * psi.amplitudes).norm() / norm


def _robinMatching(energy, halfWidth, lam):
    """G(E) = c(L) + lam * s(L), where s(y), c(y) solve -u'' = E u with
    s(0) = 0, s'(0) = 1 and c = s'. psi(x) = s(L - x) vanishes at L, and
    psi'(0) = lam * psi(0) is equivalent to G(E) = 0.
    """
    if energy > 0:
        k = math.sqrt(energy)
        return math.cos(k * halfWidth) + lam * math.sin(k * halfWidth) / k
    elif energy < 0:
        # divided by cosh(kappa L) > 0, which keeps the sign and avoids overflow
        kappa = math.sqrt(-energy)
        return 1 + lam * math.tanh(kappa * halfWidth) / kappa
    else:
        return 1 + lam * halfWidth


def robinBoxLevels(halfWidth, bc, count, side="right"):
    """The `count` lowest eigenvalues of -psi'' = E psi on a box of width
    `halfWidth` with psi = 0 at the far wall and the condition `bc` at 0.

    side="right" is the box (0, L) with psi'(0) = lam psi(0); side="left"
    is (-L, 0) with the same condition, which mirrors to lam -> -lam.
    """
    if not halfWidth > 0:
        raise ValueError("halfWidth must be > 0")
    if count < 0:
        raise ValueError("count must be >= 0")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    dirichletLevels = [(n * math.pi / halfWidth)**2 for n in range(1, count + 1)]
    if isinstance(bc, Dirichlet):
        return np.array(dirichletLevels)
    if not isinstance(bc, Robin):
        raise TypeError("bc must be Robin or Dirichlet")
    lam = float(bc.lam) if side == "right" else -float(bc.lam)

    # The Robin levels interlace with the Dirichlet ones, and G = +-1 at every
    # Dirichlet level, so [D_(n-1), D_n] brackets exactly one root. Below
    # -(|lam| + 1)**2, G is positive.
    lowest = -(abs(lam) + 1)**2 - 1
    brackets = zip([lowest] + dirichletLevels[:-1], dirichletLevels)
    levels = []
    for index, (a, b) in enumerate(brackets):
        ga = _robinMatching(a, halfWidth, lam)
        gb = _robinMatching(b, halfWidth, lam)
        if not ga * gb < 0:
            raise NumericalError(f"no sign change bracketing Robin level {index}", index=index)
        level = scipy.optimize.bisect(_robinMatching, a, b, args=(halfWidth, lam),
                                      xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=400)
        levels.append(level)
    return np.array(levels)
