"""qconfine command line: run one recorded scenario.

    qconfine spectrum scenario.toml
    qconfine evolve scenario.toml --out-dir results
    qconfine verify-boundary-potential scenario.toml --seed 7
    qconfine sweep-lambda scenario.toml

Data (CSV or JSON) goes to stdout, or to a file under --out-dir.
Diagnostics go to stderr. Exit codes: 0 success, 2 config error,
3 numerical failure, 4 verification contract failure.
"""

import argparse
import asyncio
import contextlib
import csv
import json
import logging
import os
import sys
from .distribution.verification import VerificationSettings, runBoundaryPotentialSweep
from .errors import ConfigError
from .grid.hamiltonian import buildConfined, buildH0
from .grid.layout import GridLayout
from .misc.decorators import exitCodeOnError
from .scenario import Scenario
from .solve.dynamics import PropagatorConfig, evolve, gaussianPacket
from .solve.spectral import eigenConfined, residual
from .solve.sweep import sweepLambda


numberFormat = "%.17g"


def formatNumber(value):
    return numberFormat % value


@contextlib.contextmanager
def openOutput(outDir, fileName):
    if outDir is None:
        yield sys.stdout
    else:
        os.makedirs(outDir, exist_ok=True)
        with open(os.path.join(outDir, fileName), "w", encoding="utf-8", newline="") as f:
            yield f


def writeCSV(outDir, fileName, header, rows):
    with openOutput(outDir, fileName) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)


def loadScenario(path):
    try:
        return Scenario.fromPath(path)
    except OSError as e:
        raise ConfigError(f"can't read scenario file: {e}")


def runSpectrum(scenario, outDir=None):
    grid = scenario.makeGrid()
    potential = scenario.makePotential()
    hamiltonian = buildConfined(grid, potential, scenario.boundary.bcLeft, scenario.boundary.bcRight)
    decomposition = eigenConfined(hamiltonian, scenario.spectrum.count)
    rows = []
    for index, (value, state, region) in enumerate(decomposition):
        rows.append([index, region, formatNumber(value),
                     formatNumber(residual(hamiltonian, value, state))])
    writeCSV(outDir, "spectrum.csv", ["index", "region", "eigenvalue", "residual"], rows)


def runEvolve(scenario, outDir=None):
    settings = scenario.evolve
    grid = scenario.makeGrid()
    potential = scenario.makePotential()
    if settings.use_global:
        hamiltonian = buildH0(grid, potential)
        layout = GridLayout.forGlobal(grid)
    else:
        hamiltonian = buildConfined(grid, potential, scenario.boundary.bcLeft, scenario.boundary.bcRight)
        layout = hamiltonian.layout
    try:
        psi0 = gaussianPacket(layout, settings.x0, settings.p0, settings.sigma,
                              confineToRegion=settings.confine_to_region)
        config = PropagatorConfig.forGrid(grid, settings.n_steps, settings.record_every,
                                          dt=settings.dt, snapshotEvery=settings.snapshot_every)
    except ValueError as e:
        raise ConfigError(f"evolve: {e}")
    if config.snapshotEvery and outDir is None:
        logging.warning("snapshots are only written with --out-dir")
        config = PropagatorConfig(config.dt, config.nSteps, config.recordEvery)
    trajectory = evolve(hamiltonian, psi0, config)
    writeCSV(outDir, "evolve.csv", ["t", "norm", "prob_region1", "prob_region2", "energy"],
             ([formatNumber(value) for value in row] for row in trajectory.rows()))
    if trajectory.snapshots:
        writeCSV(outDir, "snapshots.csv", ["t", "x", "re", "im"],
                 ([formatNumber(t), formatNumber(x), formatNumber(value.real), formatNumber(value.imag)]
                  for t, psi in trajectory.snapshots
                  for x, value in zip(psi.layout.nodes, psi.nodalValues())))


def runVerifyBoundaryPotential(scenario, outDir=None, seed=None):
    block = scenario.verification
    localPotential = scenario.makeLocalPotential()
    try:
        settings = VerificationSettings(
            seed=block.seed if seed is None else seed,
            casesPerPair=block.cases_per_pair,
            lambdas=tuple(block.lambdas),
            degree=block.degree,
            flipLeftSign=block.flip_left_sign,
            testFunctionsPerCase=block.test_functions,
            potential=tuple(localPotential.coefficients()),
        )
    except ValueError as e:
        raise ConfigError(f"verification: {e}")
    report = runBoundaryPotentialSweep(settings)
    with openOutput(outDir, "verification.json") as f:
        f.write(json.dumps(report.asDict(), indent=2))
        f.write("\n")
    report.check()


def runSweepLambda(scenario, outDir=None):
    settings = scenario.sweep
    if not settings.ladder:
        raise ConfigError("sweep: the lambda ladder is empty")
    grid = scenario.makeGrid()
    potential = scenario.makePotential()
    rows = asyncio.run(sweepLambda(grid, potential, settings.boundaryParams,
                                   block=settings.block, count=settings.count))
    writeCSV(outDir, "sweep.csv", ["lambda", "eigen_index", "eigenvalue"],
             ([row.label, index, formatNumber(value)]
              for row in rows for index, value in enumerate(row.eigenvalues)))


commands = {
    "spectrum": runSpectrum,
    "evolve": runEvolve,
    "verify-boundary-potential": runVerifyBoundaryPotential,
    "sweep-lambda": runSweepLambda,
}


def makeParser():
    parser = argparse.ArgumentParser(
        prog="qconfine",
        description="Confinement of a 1D quantum particle by boundary conditions at x = 0.")
    parser.add_argument("command", choices=sorted(commands))
    parser.add_argument("config", help="scenario file (TOML)")
    parser.add_argument("--seed", type=int, default=None,
                        help="random seed, overrides [verification] seed")
    parser.add_argument("--out-dir", default=None,
                        help="write output files to this folder instead of stdout")
    return parser


def main(argv=None):
    args = makeParser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING, format="%(levelname)s: %(message)s")
    return runCommand(args.command, args.config, outDir=args.out_dir, seed=args.seed)


@exitCodeOnError
def runCommand(commandName, configPath, outDir=None, seed=None):
    scenario = loadScenario(configPath)
    command = commands[commandName]
    if command is runVerifyBoundaryPotential:
        command(scenario, outDir, seed=seed)
    else:
        command(scenario, outDir)


if __name__ == "__main__":
    sys.exit(main())
