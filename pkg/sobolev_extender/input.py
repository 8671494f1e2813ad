# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

""" Set up boundary map input processing """

import json
import os.path

from sobolev_extender.boundary import (
    CantorMap,
    CircleMap,
    CompositeMap,
    IdentityMap,
    PiecewiseLinearMap,
    PowerMap,
)
from sobolev_extender.errors import ConfigError
from sobolev_extender.log import LOGGER


class BoundaryInput:
    """
    Input manager for boundary maps. A boundary map is described by a spec
    document {"type": ..., "params": ...}, given inline or read from a file.
    """

    def __init__(self):
        self.map_process = {
            "identity": self.process_identity,
            "pwl": self.process_pwl,
            "cantor": self.process_cantor,
            "power": self.process_power,
            "compose": self.process_compose,
        }
        self.circle_process = {
            "rotation": self.process_rotation,
            "circle": self.process_circle,
            "arcs": self.process_arcs,
        }
        self.file_process = {
            ".json": self.process_json_file,
            ".csv": self.process_csv_file,
        }
        self.logger = LOGGER.getChild(self.__class__.__name__)

    def process_spec(self, spec):
        if isinstance(spec, str):
            spec = self._decode(spec)
        if not isinstance(spec, dict) or "type" not in spec:
            raise ConfigError(f"Boundary map spec {spec!r} has no type")
        map_type = spec["type"]
        if map_type not in self.map_process:
            raise ConfigError(f"Unknown boundary map type {map_type}")
        params = spec.get("params", {})
        # compose also takes a bare list of component specs
        if not isinstance(params, dict) and not (
            map_type == "compose" and isinstance(params, list)
        ):
            raise ConfigError(f"Parameters of {map_type} must be an object")
        LOGGER.debug(f"Processing boundary map of type {map_type}")
        return self.map_process[map_type](params)

    def process_circle_spec(self, spec):
        """Circle maps: rotation, circle (one monotone lift) or arcs (one per arc)."""
        if isinstance(spec, str):
            spec = self._decode(spec)
        if not isinstance(spec, dict) or "type" not in spec:
            raise ConfigError(f"Circle map spec {spec!r} has no type")
        if spec["type"] in self.circle_process:
            params = spec.get("params", {})
            if not isinstance(params, dict):
                raise ConfigError(f"Parameters of {spec['type']} must be an object")
            return self.circle_process[spec["type"]](params)
        # A bare monotone spec is used on every quarter arc
        return CircleMap.from_arcs([self.process_spec(spec)] * 4)

    def process_file(self, filename):
        if not os.path.exists(filename):
            raise ConfigError(f"Boundary map file {filename} not found")
        extension = os.path.splitext(filename)[1].lower()
        if extension not in self.file_process:
            raise ConfigError(f"Unsupported boundary map file {filename}")
        LOGGER.debug(f"Processing {filename}")
        return self.file_process[extension](filename)

    def process_json_file(self, filename):
        with open(filename) as spec_file:
            return self.process_spec(json.load(spec_file))

    def process_csv_file(self, filename):
        # Process knot,value table
        knots = []
        values = []
        with open(filename) as csv_file:
            lines = csv_file.readlines()
        for line in lines:
            # Ignore comment line indicated by #
            if line[0] != "#":
                line_elements = line.strip().rstrip("\n").split(",")
                # Ignore blank lines
                if len(line_elements) == 2:
                    knots.append(self._number(line_elements[0].strip()))
                    values.append(self._number(line_elements[1].strip()))
        return PiecewiseLinearMap(knots, values)

    def process_identity(self, params):
        return IdentityMap()

    def process_pwl(self, params):
        return PiecewiseLinearMap(
            [self._number(k) for k in self._require(params, "knots")],
            [self._number(v) for v in self._require(params, "values")],
        )

    def process_cantor(self, params):
        return CantorMap(self._number(self._require(params, "theta")))

    def process_power(self, params):
        return PowerMap(self._number(self._require(params, "gamma")))

    def process_compose(self, params):
        maps = params if isinstance(params, list) else self._require(params, "maps")
        return CompositeMap([self.process_spec(spec) for spec in maps])

    def process_rotation(self, params):
        return CircleMap.rotation(self._number(params.get("angle", 0.0)))

    def process_circle(self, params):
        return CircleMap.from_monotone(
            self.process_spec(self._require(params, "map")),
            offset=self._number(params.get("offset", 0.0)),
            orientation=int(params.get("orientation", 1)),
        )

    def process_arcs(self, params):
        maps = [self.process_spec(spec) for spec in self._require(params, "maps")]
        image_breaks = params.get("image_breaks")
        if image_breaks is not None:
            image_breaks = [self._number(b) for b in image_breaks]
        return CircleMap.from_arcs(
            maps, image_breaks, orientation=int(params.get("orientation", 1))
        )

    def _decode(self, text):
        try:
            return json.loads(text)
        except json.JSONDecodeError as error:
            raise ConfigError(
                f"Boundary map spec is not valid JSON: {error}"
            ) from error

    def _require(self, params, key):
        if not isinstance(params, dict) or key not in params:
            raise ConfigError(f"Boundary map parameter {key} missing")
        return params[key]

    def _number(self, value):
        # Decimal strings and JSON numbers are both accepted
        try:
            return float(value)
        except (TypeError, ValueError) as error:
            raise ConfigError(f"{value!r} is not a number") from error
