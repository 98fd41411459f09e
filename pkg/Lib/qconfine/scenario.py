from dataclasses import dataclass, field, fields
import re
import typing
from .distribution.polynomialState import LocalPotential
from .errors import ConfigError
from .grid.layout import Grid, parseBoundaryParam
from .potential import potentialFromDict

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib


class Scenario:

    """One recorded scenario: the grid, the potential, the boundary
    parameters and the settings of every command. Read from a TOML file
    with one table per block.
    """

    def __init__(self):
        self.grid = GridSettings()
        self.potential = PotentialSettings()
        self.boundary = BoundarySettings()
        self.spectrum = SpectrumSettings()
        self.evolve = EvolveSettings()
        self.sweep = SweepSettings()
        self.verification = VerificationBlock()

    @classmethod
    def fromTOML(cls, text):
        try:
            root = tomllib.loads(text)
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"TOML syntax error: {e}", _errorLine(e))
        return cls.fromDict(root, text)

    @classmethod
    def fromPath(cls, path):
        with open(path, encoding="utf-8") as f:
            text = f.read()
        return cls.fromTOML(text)

    @classmethod
    def fromDict(cls, root, text=None):
        """Unknown blocks and keys are errors. When the source `text` is
        given, errors report the line of the offending key.
        """
        self = cls()
        lines = text.splitlines() if text is not None else []
        for blockName, block in root.items():
            if blockName not in settingsBlocks:
                raise ConfigError(f"unknown block [{blockName}]", _headerLine(lines, blockName))
            if not isinstance(block, dict):
                raise ConfigError(f"{blockName} must be a table", _headerLine(lines, blockName))
            settingsClass = settingsBlocks[blockName]
            setattr(self, blockName, settingsClass.fromDict(block, lambda key: _keyLine(lines, blockName, key)))
        self._validate(lines)
        return self

    def _validate(self, lines):
        try:
            self.makeGrid()
        except ValueError as e:
            raise ConfigError(str(e), _headerLine(lines, "grid"))
        try:
            self.makePotential()
        except ConfigError as e:
            if e.lineNumber is None:
                e.lineNumber = _keyLine(lines, "potential", "kind")
            raise
        except ValueError as e:
            raise ConfigError(str(e), _headerLine(lines, "potential"))

    def makeGrid(self):
        return Grid(self.grid.half_width, self.grid.n_per_side)

    def makePotential(self):
        return potentialFromDict(self.potential.asPotentialDict())

    def makeLocalPotential(self):
        """The exact potential near 0 for the boundary potential check:
        [verification] potential when given, else the [potential] block,
        which must then be polynomial near 0.
        """
        if self.verification.potential is not None:
            return LocalPotential(list(self.verification.potential))
        potential = self.makePotential()
        if potential.localPolynomial() is None:
            raise ConfigError.forKey(
                "potential", f"{potential.kind} is not polynomial near 0; set [verification] potential")
        return LocalPotential.fromPotential(potential)

    def asDict(self):
        return {blockName: getattr(self, blockName).asDict() for blockName in settingsBlocks}


def _errorLine(error):
    lineNumber = getattr(error, "lineno", None)
    if lineNumber is not None:
        return lineNumber
    m = re.search(r"line (\d+)", str(error))
    return int(m.group(1)) if m else None


_headerPattern = re.compile(r"^\s*\[\s*([A-Za-z0-9_\-]+)\s*\]")


def _headerLine(lines, blockName):
    for lineNumber, line in enumerate(lines, 1):
        m = _headerPattern.match(line)
        if m is not None and m.group(1) == blockName:
            return lineNumber
    return None


def _keyLine(lines, blockName, key):
    currentBlock = None
    keyPattern = re.compile(r"^\s*[\"']?" + re.escape(key) + r"[\"']?\s*=")
    for lineNumber, line in enumerate(lines, 1):
        m = _headerPattern.match(line)
        if m is not None:
            currentBlock = m.group(1)
        elif currentBlock == blockName and keyPattern.match(line):
            return lineNumber
    return _headerLine(lines, blockName)


class _SettingsBlock:

    @classmethod
    def fromDict(cls, block, lineOf=lambda key: None):
        self = cls()
        known = {f.name: f for f in fields(cls)}
        for key, value in block.items():
            f = known.get(key)
            if f is None:
                raise ConfigError(f"unknown key {key!r}", lineOf(key))
            try:
                value = _coerce(value, f.type)
            except (TypeError, ValueError) as e:
                raise ConfigError(f"{key}: {e}", lineOf(key))
            setattr(self, key, value)
        try:
            self.validate()
        except ConfigError as e:
            if e.lineNumber is None and e.key is not None:
                e.lineNumber = lineOf(e.key)
            raise
        return self

    def validate(self):
        pass

    def asDict(self):
        return {f.name: getattr(self, f.name) for f in fields(self) if getattr(self, f.name) is not None}


def _coerce(value, expectedType):
    if expectedType is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise TypeError(f"expected a number, got {value!r}")
        return float(value)
    if expectedType is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"expected an integer, got {value!r}")
        return value
    if expectedType is bool:
        if not isinstance(value, bool):
            raise TypeError(f"expected true or false, got {value!r}")
        return value
    if expectedType is str:
        if not isinstance(value, str):
            raise TypeError(f"expected a string, got {value!r}")
        return value
    if expectedType == typing.Optional[float]:
        return None if value is None else _coerce(value, float)
    # lists and free-form values (boundary parameters, tables) are
    # checked by the block's validate()
    return value


@dataclass
class GridSettings(_SettingsBlock):
    half_width: float = 1.0
    n_per_side: int = 400


@dataclass
class PotentialSettings(_SettingsBlock):
    kind: str = "zero"
    quad_bound_k: float = 0.0
    growth_x0: typing.Optional[float] = None
    omega: typing.Optional[float] = None
    depth: typing.Optional[float] = None
    width: typing.Optional[float] = None
    nodes: list = None

    def asPotentialDict(self):
        return self.asDict()


@dataclass
class BoundarySettings(_SettingsBlock):
    lambda_left: typing.Any = "inf"
    lambda_right: typing.Any = "inf"

    def validate(self):
        for key in ("lambda_left", "lambda_right"):
            try:
                parseBoundaryParam(getattr(self, key))
            except ConfigError as e:
                raise ConfigError.forKey(key, e.message)

    @property
    def bcLeft(self):
        return parseBoundaryParam(self.lambda_left)

    @property
    def bcRight(self):
        return parseBoundaryParam(self.lambda_right)


@dataclass
class SpectrumSettings(_SettingsBlock):
    count: int = 5

    def validate(self):
        if self.count < 0:
            raise ConfigError.forKey("count", "must be >= 0")


@dataclass
class EvolveSettings(_SettingsBlock):
    x0: float = -0.5
    p0: float = 0.0
    sigma: float = 0.1
    dt: typing.Optional[float] = None
    n_steps: int = 1000
    record_every: int = 10
    confine_to_region: bool = True
    snapshot_every: int = 0
    # "global" is a keyword, so the field is set through the dict
    use_global: bool = False

    @classmethod
    def fromDict(cls, block, lineOf=lambda key: None):
        block = dict(block)
        if "use_global" in block:
            raise ConfigError("unknown key 'use_global'", lineOf("use_global"))
        if "global" in block:
            block["use_global"] = block.pop("global")
            wrappedLineOf = lambda key: lineOf("global" if key == "use_global" else key)  # noqa: E731
        else:
            wrappedLineOf = lineOf
        return super().fromDict(block, wrappedLineOf)

    def validate(self):
        if self.sigma <= 0:
            raise ConfigError.forKey("sigma", "must be > 0")
        if self.dt is not None and self.dt <= 0:
            raise ConfigError.forKey("dt", "must be > 0")
        if self.n_steps < 1:
            raise ConfigError.forKey("n_steps", "must be >= 1")
        if self.record_every < 1:
            raise ConfigError.forKey("record_every", "must be >= 1")
        if self.snapshot_every < 0:
            raise ConfigError.forKey("snapshot_every", "must be >= 0")

    def asDict(self):
        root = super().asDict()
        root["global"] = root.pop("use_global")
        return root


@dataclass
class SweepSettings(_SettingsBlock):
    ladder: list = field(default_factory=list)
    block: str = "right"
    count: int = 1

    def validate(self):
        if not isinstance(self.ladder, list):
            raise ConfigError.forKey("ladder", "must be an array")
        for value in self.ladder:
            try:
                parseBoundaryParam(value)
            except ConfigError as e:
                raise ConfigError.forKey("ladder", e.message)
        if self.block not in ("left", "right"):
            raise ConfigError.forKey("block", f"must be \"left\" or \"right\", got {self.block!r}")
        if self.count < 0:
            raise ConfigError.forKey("count", "must be >= 0")

    @property
    def boundaryParams(self):
        return [parseBoundaryParam(value) for value in self.ladder]


@dataclass
class VerificationBlock(_SettingsBlock):
    seed: int = 0
    cases_per_pair: int = 200
    lambdas: list = field(default_factory=lambda: [-5, -1, 0, 1, 5, "inf"])
    degree: int = 6
    flip_left_sign: bool = False
    test_functions: int = 20
    # coefficients, constant term first; None takes the [potential] block
    potential: list = None

    def validate(self):
        if self.cases_per_pair < 1:
            raise ConfigError.forKey("cases_per_pair", "must be >= 1")
        if self.degree < 1:
            raise ConfigError.forKey("degree", "must be >= 1")
        if self.test_functions < 0:
            raise ConfigError.forKey("test_functions", "must be >= 0")
        if not isinstance(self.lambdas, list) or not self.lambdas:
            raise ConfigError.forKey("lambdas", "must be a nonempty array")
        for value in self.lambdas:
            try:
                parseBoundaryParam(value)
            except ConfigError as e:
                raise ConfigError.forKey("lambdas", e.message)
        if self.potential is not None and (not isinstance(self.potential, list) or not all(
                isinstance(c, (int, float)) and not isinstance(c, bool) for c in self.potential)):
            raise ConfigError.forKey("potential", "must be an array of numbers, constant term first")


settingsBlocks = {
    "grid": GridSettings,
    "potential": PotentialSettings,
    "boundary": BoundarySettings,
    "spectrum": SpectrumSettings,
    "evolve": EvolveSettings,
    "sweep": SweepSettings,
    "verification": VerificationBlock,
}
