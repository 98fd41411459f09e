import importlib
from ..errors import ConfigError


def getPotentialClass(kind: str):
    potentialSpec = potentialKinds.get(kind)
    if potentialSpec is None:
        raise ConfigError(f"unknown potential kind: {kind!r}")
    moduleName, className = potentialSpec.rsplit(".", 1)
    module = importlib.import_module(moduleName)
    return getattr(module, className)


def potentialFromDict(block: dict):
    """Build a potential from a config block: a `kind` tag plus the
    keyword parameters of that kind.
    """
    block = dict(block)
    kind = block.pop("kind", "zero")
    potentialClass = getPotentialClass(kind)
    try:
        return potentialClass(**block)
    except TypeError as e:
        raise ConfigError(f"bad parameters for potential kind {kind!r}: {e}")


potentialKinds = {
    "zero": "qconfine.potential.builtinPotentials.ZeroPotential",
    "harmonic": "qconfine.potential.builtinPotentials.HarmonicPotential",
    "square_well": "qconfine.potential.builtinPotentials.SquareWellPotential",
    "tabulated": "qconfine.potential.builtinPotentials.TabulatedPotential",
}

kindNames = sorted(potentialKinds)
