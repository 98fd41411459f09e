from dataclasses import dataclass
from functools import cached_property
import math
from typing import Union
import numpy as np
from ..errors import ConfigError


@dataclass(frozen=True)
class Grid:

    """Uniform grid over [-halfWidth, halfWidth] with nPerSide intervals on
    each side of the interface at x = 0. The outer endpoints carry
    homogeneous Dirichlet conditions and are not part of any state vector.
    """

    halfWidth: float
    nPerSide: int

    def __post_init__(self):
        if not (math.isfinite(self.halfWidth) and self.halfWidth > 0):
            raise ValueError("halfWidth must be a positive finite number")
        if not isinstance(self.nPerSide, int) or isinstance(self.nPerSide, bool):
            raise TypeError("nPerSide must be an integer")
        if self.nPerSide < 3:
            raise ValueError("nPerSide must be >= 3")

    @property
    def spacing(self):
        return self.halfWidth / self.nPerSide

    @cached_property
    def nodes(self):
        """All interior nodes of the undivided grid. Computed as (j - n) * h
        so that the node set is exactly symmetric about 0.
        """
        n = self.nPerSide
        nodes = np.arange(-n + 1, n, dtype=float) * self.spacing
        nodes.setflags(write=False)
        return nodes

    @property
    def interfaceIndex(self):
        return self.nPerSide - 1

    @cached_property
    def inverseSpacingSquared(self):
        return 1.0 / self.spacing**2


@dataclass(frozen=True)
class Robin:

    """phi'(0) = lam * phi(0), lam finite. Robin(0) is the Neumann case."""

    lam: float

    def __post_init__(self):
        if not math.isfinite(self.lam):
            raise ValueError("Robin parameter must be finite, use Dirichlet() for lambda = inf")

    def __str__(self):
        return f"{float(self.lam):.17g}"


@dataclass(frozen=True)
class Dirichlet:

    """phi(0) = 0, the lambda = inf member of the family."""

    def __str__(self):
        return "inf"


BoundaryParam = Union[Robin, Dirichlet]


def parseBoundaryParam(value):
    """Accept a real number or the literal "inf" (case-insensitive)."""
    if isinstance(value, (Robin, Dirichlet)):
        return value
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "+inf"):
            return Dirichlet()
        try:
            value = float(value)
        except ValueError:
            raise ConfigError(f"boundary parameter must be a number or \"inf\", got {value!r}")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"boundary parameter must be a number or \"inf\", got {value!r}")
    if math.isinf(value) and value > 0:
        return Dirichlet()
    if not math.isfinite(value):
        raise ConfigError(f"boundary parameter must be finite or \"inf\", got {value!r}")
    return Robin(value)


@dataclass(frozen=True, eq=False)
class GridLayout:

    """Ordering of a state vector over grid nodes.

    For every vector entry: the node position, the region it belongs to
    (1 for x <= 0 side, 2 for the x >= 0 side), the index of its node in
    `grid.nodes` and its quadrature weight (1/2 for the interface node of
    a Robin block, 1 elsewhere). A confined layout lists the left block
    first, then the right block.
    """

    grid: Grid
    globalIndices: np.ndarray
    regions: np.ndarray
    weights: np.ndarray
    leftSize: int

    @classmethod
    def forGlobal(cls, grid):
        indices = np.arange(len(grid.nodes))
        # the node at 0 is counted in region 1
        regions = np.where(grid.nodes <= 0, 1, 2)
        weights = np.ones(len(indices))
        return cls(grid, indices, regions, weights, int(np.sum(regions == 1)))

    @classmethod
    def forConfined(cls, grid, bcLeft, bcRight):
        n = grid.nPerSide
        interface = grid.interfaceIndex
        leftEnd = interface + 1 if isinstance(bcLeft, Robin) else interface
        rightStart = interface if isinstance(bcRight, Robin) else interface + 1
        leftIndices = np.arange(0, leftEnd)
        rightIndices = np.arange(rightStart, 2 * n - 1)
        indices = np.concatenate([leftIndices, rightIndices])
        regions = np.concatenate([np.full(len(leftIndices), 1), np.full(len(rightIndices), 2)])
        weights = np.where(indices == interface, 0.5, 1.0)
        return cls(grid, indices, regions, weights, len(leftIndices))

    def __post_init__(self):
        for array in (self.globalIndices, self.regions, self.weights):
            array.setflags(write=False)

    @property
    def size(self):
        return len(self.globalIndices)

    @cached_property
    def nodes(self):
        nodes = self.grid.nodes[self.globalIndices]
        nodes.setflags(write=False)
        return nodes

    @cached_property
    def sqrtWeights(self):
        return np.sqrt(self.weights)

    def regionMask(self, region):
        if region not in (1, 2):
            raise ValueError("region must be 1 or 2")
        return self.regions == region

    def edgeMask(self):
        """Entries within 2h of the truncation walls at +/-L."""
        grid = self.grid
        return np.abs(self.nodes) >= grid.halfWidth - 2 * grid.spacing * (1 + 1e-12)
