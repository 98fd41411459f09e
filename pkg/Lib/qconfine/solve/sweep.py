import asyncio
from dataclasses import dataclass
import logging
from typing import Tuple
import numpy as np
from .spectral import eigenTridiagonal
from ..grid.hamiltonian import buildConfined
from ..grid.layout import Dirichlet, Robin


blockNames = ("left", "right")


@dataclass(frozen=True)
class SweepRow:
    bc: object  # Robin or Dirichlet
    eigenvalues: Tuple[float, ...]

    @property
    def label(self):
        return str(self.bc)


def _blockLevels(grid, potential, bc, block, count):
    if block == "left":
        hamiltonian = buildConfined(grid, potential, bc, Dirichlet())
        tridiagonal = hamiltonian.leftBlock
    else:
        hamiltonian = buildConfined(grid, potential, Dirichlet(), bc)
        tridiagonal = hamiltonian.rightBlock
    count = min(count, tridiagonal.size)
    if count < 1:
        return SweepRow(bc, ())
    eigenvalues, vectors = eigenTridiagonal(tridiagonal.diag, tridiagonal.offdiag, count)
    return SweepRow(bc, tuple(float(value) for value in eigenvalues))


async def sweepLambda(grid, potential, ladder, block="right", count=1, executor=None):
    """Lowest `count` levels of one confined block for every boundary
    parameter of `ladder`, computed as concurrently as possible. Rows come
    back in ladder order.
    """
    if block not in blockNames:
        raise ValueError(f"block must be one of {blockNames}, got {block!r}")
    if not ladder:
        raise ValueError("the lambda ladder must not be empty")
    for bc in ladder:
        if not isinstance(bc, (Robin, Dirichlet)):
            raise TypeError("ladder entries must be Robin or Dirichlet")
    loop = asyncio.get_running_loop()
    rows = await asyncio.gather(*(
        loop.run_in_executor(executor, _blockLevels, grid, potential, bc, block, count)
        for bc in ladder))
    logging.info("swept %d boundary parameters on the %s block", len(rows), block)
    return list(rows)


def isMonotone(rows, eigenIndex=0):
    """True when level `eigenIndex` is nondecreasing along the rows."""
    levels = np.array([row.eigenvalues[eigenIndex] for row in rows])
    return bool(np.all(np.diff(levels) >= 0))
