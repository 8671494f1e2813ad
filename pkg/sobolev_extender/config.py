# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

""" Set up Config file processing """
import configparser
import json
import os.path
from dataclasses import asdict, dataclass

from sobolev_extender.energy import EnergyParams
from sobolev_extender.errors import ConfigError, InvalidParameter
from sobolev_extender.log import LOGGER
from sobolev_extender.snowflake import ChoiceOracle, SnowflakeSpec
from sobolev_extender.verify import FAMILIES

COMMANDS = ("extend", "energy", "snowflake", "verify", "bound")
DOMAINS = ("triangle", "disk")
ORACLES = ("choice1", "choice2", "alternating", "random")

# Config file section -> {option: run setting}
SECTION_KEYS = {
    "run": {
        "command": "command",
        "depth": "depth",
        "seed": "seed",
        "out": "out",
        "domain": "domain",
    },
    "boundary": {"spec": "boundary"},
    "energy": {"p": "p", "beta": "beta", "constant": "constant"},
    "snowflake": {
        "p": "snowflake_p",
        "oracle": "oracle",
        "generation": "generation",
        "order": "order",
        "probability": "probability",
    },
    "verify": {
        "samples": "samples",
        "families": "families",
        "pairs": "pairs",
        "grid": "grid",
    },
}


class ExtenderConfig:
    """
    Config handler for sobolev-extender. INI files are read by configparser;
    JSON files hold one document whose object valued keys are the sections
    (plain top level keys belong to the run section).
    """

    def __init__(self, filename):
        self.config = configparser.ConfigParser()
        self.sections = {}
        self.configs = filename
        self.logger = LOGGER.getChild(self.__class__.__name__)
        if filename != "":
            if not os.path.exists(filename):
                raise ConfigError(f"Config file {filename} not found")
            if filename.lower().endswith(".json"):
                self.sections = self._read_json(filename)
            else:
                try:
                    self.configs = self.config.read(filename)
                except configparser.Error as error:
                    raise ConfigError(f"Config file {filename}: {error}") from error
                self.sections = {
                    name: self._config_section_map(name)
                    for name in self.config.sections()
                }
            LOGGER.debug(f"Config sections: {list(self.sections)}")

    def _read_json(self, filename):
        with open(filename) as config_file:
            try:
                document = json.load(config_file)
            except json.JSONDecodeError as error:
                raise ConfigError(f"Config file {filename}: {error}") from error
        if not isinstance(document, dict):
            raise ConfigError(f"Config file {filename} must hold a JSON object")
        sections = {"run": {}}
        for key, value in document.items():
            if key == "boundary":
                sections["boundary"] = {"spec": value}
            elif isinstance(value, dict) and key in SECTION_KEYS:
                sections.setdefault(key, {}).update(value)
            else:
                sections["run"][key] = value
        return sections

    def get_sections(self):
        return list(self.sections)

    def get_section(self, name):
        return dict(self.sections.get(name, {}))

    def _config_section_map(self, section):
        section_dict = {}
        options = self.config.options(section)
        for option in options:
            section_dict[option] = self.config.get(section, option)
        return section_dict

    def values(self):
        """Flat run settings from every known section."""
        flat = {}
        for section, options in self.sections.items():
            keys = SECTION_KEYS.get(section)
            if keys is None:
                LOGGER.warning(f"Ignoring unknown config section {section}")
                continue
            for option, value in options.items():
                if option not in keys:
                    LOGGER.warning(f"Ignoring unknown option {section}.{option}")
                    continue
                flat[keys[option]] = value
        return flat


def _convert(name, value, kind):
    try:
        return kind(value)
    except (TypeError, ValueError) as error:
        raise ConfigError(
            f"Setting {name}={value!r} is not a valid {kind.__name__}"
        ) from error


def _boundary(value):
    if isinstance(value, str):
        try:
            return json.loads(value)
        except json.JSONDecodeError as error:
            raise ConfigError(f"Boundary spec is not valid JSON: {error}") from error
    return value


def _families(value):
    if isinstance(value, str):
        value = [family.strip() for family in value.split(",") if family.strip()]
    return tuple(value)


@dataclass(frozen=True)
class RunConfig:
    command: str
    boundary: dict
    domain: str = "triangle"
    p: float = 1.0
    beta: float = 0.5
    constant: float = 1.0
    depth: int = 8
    seed: int = 0
    out: str = ""
    snowflake_p: float = 1 / 3
    oracle: str = "choice1"
    generation: int = 5
    order: str = "BCCB"
    probability: float = 0.5
    samples: int = 1000
    families: tuple = ("pwl", "cantor", "power")
    pairs: int = 1000
    grid: int = 32

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"Unknown command {self.command}")
        if self.domain not in DOMAINS:
            raise ConfigError(f"Unknown domain {self.domain}")
        if self.oracle not in ORACLES:
            raise ConfigError(f"Unknown choice oracle {self.oracle}")
        if self.depth < 0 or self.generation < 1:
            raise InvalidParameter("Depth must be non-negative and generation positive")
        if self.seed < 0 or self.seed >= 2**64:
            raise InvalidParameter(
                f"Seed {self.seed} is not an unsigned 64 bit integer"
            )
        if self.samples < 1 or self.pairs < 0 or self.grid < 1:
            raise InvalidParameter("Sample, pair and grid counts must be positive")
        if not 0.0 <= self.probability <= 1.0:
            raise InvalidParameter(f"Probability {self.probability} must lie in [0, 1]")
        if not self.families or any(f not in FAMILIES for f in self.families):
            raise ConfigError(f"Boundary map families {self.families} not all known")
        if not self.constant > 0:
            raise InvalidParameter(f"Profile constant {self.constant} must be positive")
        # Range checks of the constructions themselves
        self.energy_params
        self.snowflake_spec

    @property
    def energy_params(self):
        return EnergyParams(self.p, self.beta)

    @property
    def snowflake_spec(self):
        oracle = ChoiceOracle.from_name(self.oracle, self.seed, self.probability)
        return SnowflakeSpec(self.snowflake_p, oracle, self.order)

    @classmethod
    def from_mapping(cls, settings):
        converters = {
            "command": str,
            "domain": str,
            "p": float,
            "beta": float,
            "constant": float,
            "depth": int,
            "seed": int,
            "out": str,
            "snowflake_p": float,
            "oracle": str,
            "generation": int,
            "order": str,
            "probability": float,
            "samples": int,
            "pairs": int,
            "grid": int,
        }
        values = {}
        for name, kind in converters.items():
            if name in settings and settings[name] is not None:
                values[name] = _convert(name, settings[name], kind)
        if "command" not in values:
            raise ConfigError("No command given")
        values["boundary"] = _boundary(settings.get("boundary", {"type": "identity"}))
        if "families" in settings:
            values["families"] = _families(settings["families"])
        return cls(**values)

    def to_dict(self):
        data = asdict(self)
        data["families"] = list(self.families)
        return data
