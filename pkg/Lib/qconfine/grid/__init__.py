from .layout import Dirichlet, Grid, GridLayout, Robin, parseBoundaryParam  # noqa: F401
from .waveFunction import WaveFunction, innerProduct, projectRegion, transferState  # noqa: F401
from .hamiltonian import (  # noqa: F401
    ConfinedHamiltonian, GlobalHamiltonian, TridiagonalBlock,
    applyHamiltonian, buildConfined, buildH0, commutatorProjector,
    symmetryDefect, toDenseMatrix,
)
