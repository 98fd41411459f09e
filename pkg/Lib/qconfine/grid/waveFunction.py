from dataclasses import dataclass
import numpy as np
from .layout import GridLayout


@dataclass(frozen=True, eq=False)
class WaveFunction:

    """Amplitudes over the entries of a GridLayout. For Robin interface
    entries the amplitude is sqrt(1/2) * phi(0), which makes the plain
    h-weighted inner product the trapezoidal L2 product of the nodal values.
    """

    amplitudes: np.ndarray
    layout: GridLayout

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes)
        if amplitudes.ndim != 1:
            raise ValueError("amplitudes must be a 1-dimensional array")
        if len(amplitudes) != self.layout.size:
            raise ValueError(f"dimension mismatch: {len(amplitudes)} amplitudes for "
                             f"a layout of size {self.layout.size}")
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def fromNodalValues(cls, values, layout):
        return cls(np.asarray(values) * layout.sqrtWeights, layout)

    def nodalValues(self):
        return self.amplitudes / self.layout.sqrtWeights

    def withAmplitudes(self, amplitudes):
        return self.__class__(amplitudes, self.layout)

    def norm(self):
        return float(np.sqrt(innerProduct(self, self).real))

    def normalized(self):
        norm = self.norm()
        if norm == 0:
            raise ValueError("cannot normalize the zero state")
        return self.withAmplitudes(self.amplitudes / norm)


def innerProduct(phi, psi):
    """h * sum(conj(phi_j) * psi_j)"""
    if phi.layout.size != psi.layout.size:
        raise ValueError("dimension mismatch")
    return phi.layout.grid.spacing * np.vdot(phi.amplitudes, psi.amplitudes)


def projectRegion(psi, region):
    """Multiplication by the indicator of region 1 or 2. Entries outside the
    region become exact zeros.
    """
    mask = psi.layout.regionMask(region)
    return psi.withAmplitudes(np.where(mask, psi.amplitudes, 0))


def transferState(psi, layout):
    """Resample `psi` onto another layout of the same grid, going through
    nodal values. A node present twice in the source (the Robin interface
    copies) gets the mean of its copies; a node absent from the source
    gets 0.
    """
    source = psi.layout
    if source.grid != layout.grid:
        raise ValueError("layouts belong to different grids")
    numNodes = len(layout.grid.nodes)
    values = np.zeros(numNodes, dtype=psi.amplitudes.dtype)
    counts = np.zeros(numNodes)
    np.add.at(values, source.globalIndices, psi.nodalValues())
    np.add.at(counts, source.globalIndices, 1)
    shared = counts > 1
    values[shared] = values[shared] / counts[shared]
    return WaveFunction.fromNodalValues(values[layout.globalIndices], layout)
