from dataclasses import dataclass, field
import logging
from typing import List
import numpy as np
import scipy.linalg
from ..errors import NumericalError
from ..grid.hamiltonian import applyHamiltonian
from ..grid.waveFunction import WaveFunction, innerProduct, projectRegion


boundaryTouchThreshold = 1e-8


@dataclass(frozen=True)
class PropagatorConfig:
    dt: float
    nSteps: int
    recordEvery: int = 1
    snapshotEvery: int = 0  # 0: no snapshots

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be > 0")
        if self.nSteps < 1 or self.recordEvery < 1:
            raise ValueError("nSteps and recordEvery must be >= 1")
        if self.snapshotEvery < 0:
            raise ValueError("snapshotEvery must be >= 0")

    @classmethod
    def forGrid(cls, grid, nSteps, recordEvery=1, dt=None, snapshotEvery=0):
        """Default time step h**2 / 2."""
        if dt is None:
            dt = grid.spacing**2 / 2
        return cls(dt, nSteps, recordEvery, snapshotEvery)


@dataclass
class Trajectory:
    times: List[float] = field(default_factory=list)
    norms: List[float] = field(default_factory=list)
    region1Prob: List[float] = field(default_factory=list)
    region2Prob: List[float] = field(default_factory=list)
    energy: List[float] = field(default_factory=list)
    edgeProb: List[float] = field(default_factory=list)
    snapshots: List[tuple] = field(default_factory=list)  # (t, WaveFunction)
    maxEdgeProb: float = 0.0  # over every step, recorded or not

    def __len__(self):
        return len(self.times)

    def record(self, time, hamiltonian, psi):
        normSquared = innerProduct(psi, psi).real
        self.times.append(time)
        self.norms.append(float(np.sqrt(normSquared)))
        self.region1Prob.append(regionProbability(psi, 1))
        self.region2Prob.append(regionProbability(psi, 2))
        self.energy.append(float(innerProduct(psi, applyHamiltonian(hamiltonian, psi)).real))
        self.edgeProb.append(edgeProbability(psi))

    def rows(self):
        return zip(self.times, self.norms, self.region1Prob, self.region2Prob, self.energy)


def gaussianPacket(layout, x0, p0, sigma, confineToRegion=False):
    """exp(-(x - x0)**2 / (4 sigma**2) + i p0 x), normalized. With
    `confineToRegion`, amplitudes outside the region of x0 are cut to zero
    before normalizing, so the result is an exact eigenstate of that
    region's projector.
    """
    grid = layout.grid
    if not sigma > 0:
        raise ValueError("sigma must be > 0")
    if not abs(x0) < grid.halfWidth:
        raise ValueError("packet center must lie inside (-L, L)")
    if sigma < 2 * grid.spacing:
        logging.warning("under-resolved packet: sigma=%s < 2h=%s", sigma, 2 * grid.spacing)
    x = layout.nodes
    values = np.exp(-(x - x0)**2 / (4 * sigma**2) + 1j * p0 * x)
    psi = WaveFunction.fromNodalValues(values, layout)
    if confineToRegion:
        if x0 == 0:
            raise ValueError("a packet centered at 0 has no region to be confined to")
        psi = projectRegion(psi, 1 if x0 < 0 else 2)
    return psi.normalized()


def regionProbability(psi, region):
    """||P_k psi||**2 / ||psi||**2"""
    total = innerProduct(psi, psi).real
    if total == 0:
        raise ValueError("region probability of the zero state is undefined")
    part = projectRegion(psi, region)
    return float(innerProduct(part, part).real / total)


def edgeProbability(psi):
    """Probability within 2h of the truncation walls at +/-L."""
    return _maskedProbability(psi.amplitudes, psi.layout.edgeMask())


def _maskedProbability(amplitudes, mask):
    density = np.abs(amplitudes)**2
    total = np.sum(density)
    if total == 0:
        return 0.0
    return float(np.sum(density[mask]) / total)


class CayleyPropagator:

    """psi+ = (I + i dt/2 H)^-1 (I - i dt/2 H) psi, one banded solve per
    block. The blocks of a confined operator never see each other's
    amplitudes.
    """

    def __init__(self, hamiltonian, dt):
        if not dt > 0:
            raise ValueError("dt must be > 0")
        self.hamiltonian = hamiltonian
        self.dt = dt
        self._bandedSystems = []
        for block, blockSlice in hamiltonian.blockSlices():
            banded = np.zeros((3, block.size), dtype=complex)
            banded[0, 1:] = 0.5j * dt * block.offdiag
            banded[1, :] = 1 + 0.5j * dt * block.diag
            banded[2, :-1] = 0.5j * dt * block.offdiag
            self._bandedSystems.append((block, blockSlice, banded))

    def step(self, psi):
        if psi.layout.size != self.hamiltonian.size:
            raise ValueError("dimension mismatch")
        amplitudes = np.asarray(psi.amplitudes, dtype=complex)
        result = np.empty_like(amplitudes)
        for block, blockSlice, banded in self._bandedSystems:
            blockAmplitudes = amplitudes[blockSlice]
            rhs = blockAmplitudes - 0.5j * self.dt * block.matvec(blockAmplitudes)
            try:
                result[blockSlice] = scipy.linalg.solve_banded((1, 1), banded, rhs)
            except np.linalg.LinAlgError as e:
                raise NumericalError(f"singular pivot in Cayley step: {e}")
        return psi.withAmplitudes(result)


def cayleyStep(hamiltonian, psi, dt):
    return CayleyPropagator(hamiltonian, dt).step(psi)


def evolve(hamiltonian, psi0, config):
    """Repeated Cayley steps, recording the observables every
    `config.recordEvery` steps (the initial state included).
    """
    propagator = CayleyPropagator(hamiltonian, config.dt)
    trajectory = Trajectory()
    psi = psi0.withAmplitudes(np.asarray(psi0.amplitudes, dtype=complex))
    edgeMask = psi.layout.edgeMask()
    trajectory.record(0.0, hamiltonian, psi)
    trajectory.maxEdgeProb = trajectory.edgeProb[0]
    if config.snapshotEvery:
        trajectory.snapshots.append((0.0, psi))
    for stepIndex in range(1, config.nSteps + 1):
        psi = propagator.step(psi)
        time = stepIndex * config.dt
        trajectory.maxEdgeProb = max(trajectory.maxEdgeProb, _maskedProbability(psi.amplitudes, edgeMask))
        if stepIndex % config.recordEvery == 0:
            trajectory.record(time, hamiltonian, psi)
        if config.snapshotEvery and stepIndex % config.snapshotEvery == 0:
            trajectory.snapshots.append((time, psi))
    if trajectory.maxEdgeProb > boundaryTouchThreshold:
        logging.warning("state touches the truncation walls: probability within 2h of "
                        "+/-L reached %.3g", trajectory.maxEdgeProb)
    return trajectory
