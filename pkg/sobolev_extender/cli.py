# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

"""
This tool builds the dyadic Sobolev extension of boundary homeomorphisms,
measures its weighted energy and explores snowflake curves with their
Holder parametrisation.
"""

import argparse
import json
import logging
import os.path
import sys
import textwrap
from collections import ChainMap

import numpy as np

from sobolev_extender.config import COMMANDS, ExtenderConfig, RunConfig
from sobolev_extender.disk import assemble_disk_extension
from sobolev_extender.energy import (
    composition_energy_bound,
    gradient_profile,
    mesh_energy,
    series_bound,
)
from sobolev_extender.errors import (
    ExtenderError,
    InjectivityCheckFailed,
    PropertySuiteFailed,
)
from sobolev_extender.extension import (
    build_extension,
    check_homeomorphism,
    mesh_to_dict,
)
from sobolev_extender.input import BoundaryInput
from sobolev_extender.log import LOGGER, use_json_logs
from sobolev_extender.output import ReportOutput, write_json
from sobolev_extender.snowflake import (
    SnowflakeState,
    build_snowflake,
    eta_identity_check,
    eval_g_many,
    holder_estimate,
    john_constant,
    quasisymmetry_probe,
    sample_triples,
    self_intersections,
    state_to_dict,
)
from sobolev_extender.store import DISK_LOCATION_DEFAULT, ArtifactStore
from sobolev_extender.svg import write_curve_svg, write_disk_svg, write_mesh_svg
from sobolev_extender.verify import run_suites
from sobolev_extender.version import VERSION

# Radii at which the admissible gradient profile is reported
PROFILE_RADII = (0.0, 0.5, 0.9, 0.99)
# Generations above which the snowflake state is not exported segment by segment
STATE_EXPORT_LIMIT = 6
# Deepest generation checked for self intersections
SWEEP_LIMIT = 6


def _boundary_map(config):
    boundary_input = BoundaryInput()
    if config.domain == "disk":
        return boundary_input.process_circle_spec(config.boundary)
    return boundary_input.process_spec(config.boundary)


def _resolve_boundary(value, domain):
    # A path to a boundary file is replaced by the spec it describes
    if isinstance(value, str) and os.path.exists(value):
        if domain == "disk" or value.lower().endswith(".json"):
            with open(value) as spec_file:
                return json.load(spec_file)
        return BoundaryInput().process_file(value).to_spec()
    return value


def run_extend(config, store):
    phi = _boundary_map(config)
    if config.domain == "disk":
        extension = assemble_disk_extension(
            phi, config.depth, grid=config.grid, pairs=config.pairs, seed=config.seed
        )
        write_json(
            {"boundary": phi.to_spec(), "depth": config.depth, **extension.diagnostics},
            store.path("disk.json"),
        )
        write_disk_svg(extension, store.path("source.svg"))
        write_disk_svg(extension, store.path("image.svg"), image=True)
        return 0
    mesh = build_extension(phi, config.depth)
    report = check_homeomorphism(mesh, pairs=config.pairs, seed=config.seed)
    document = {**mesh_to_dict(mesh), "report": report.to_dict()}
    write_json(document, store.path("mesh.json"))
    write_mesh_svg(mesh, store.path("source.svg"))
    write_mesh_svg(mesh, store.path("image.svg"), image=True)
    if not report.passed:
        raise InjectivityCheckFailed(
            "Extension failed the homeomorphism check", report.to_dict()
        )
    return 0


def run_energy(config, store):
    phi = _boundary_map(config)
    mesh = build_extension(phi, config.depth)
    report = mesh_energy(mesh, config.energy_params, seed=config.seed)
    write_json(
        {"boundary": phi.to_spec(), **report.to_dict()}, store.path("energy.json")
    )
    energy_output = ReportOutput(store.path("energy.csv"))
    energy_output.set_headings(["j", "cells", "exact_sum", "bound_term"])
    energy_output.generate_output(report.to_rows())
    return 0


def _generation_rows(state, rng, samples):
    triples = sample_triples(rng, samples)
    rows = []
    for number in range(1, state.generation + 1):
        subset = SnowflakeState(state.spec, state.levels[: number + 1])
        holder = holder_estimate(subset, rng=rng)
        qs = quasisymmetry_probe(subset, triples)
        rows.append(
            [
                number,
                subset.deepest.size,
                subset.perimeter(),
                holder.constant,
                holder.cover_constant,
                qs.max_ratio,
                qs.min_ratio,
            ]
        )
    return rows


def run_snowflake(config, store):
    spec = config.snowflake_spec
    state = build_snowflake(spec, config.generation)
    rng = np.random.default_rng(config.seed)
    rows = _generation_rows(state, rng, config.samples)
    eta = eta_identity_check(state)
    crossings = self_intersections(state, level=min(state.generation, SWEEP_LIMIT))
    john = john_constant(state, rng=rng)
    summary = {
        "p": spec.p,
        "alpha": spec.alpha,
        "x": spec.x,
        "eta": spec.eta,
        "oracle": spec.oracle.name,
        "generation": state.generation,
        "segments": state.deepest.size,
        "perimeter": state.perimeter(),
        "eta_max_residual": eta.max_residual,
        "eta_violations": eta.violations,
        "self_intersections": len(crossings),
        "john_constant": john.constant,
        "john_samples": john.samples,
        "john_failures": john.failures,
    }
    document = {"summary": summary}
    if state.generation <= STATE_EXPORT_LIMIT:
        document["state"] = state_to_dict(state)
    write_json(document, store.path("snowflake.json"))
    write_curve_svg(state.deepest.starts.tolist(), store.path("curve.svg"))

    holder_output = ReportOutput(store.path("holder_qs.csv"))
    holder_output.set_headings(
        [
            "generation",
            "segments",
            "perimeter",
            "holder_constant",
            "cover_constant",
            "qs_max",
            "qs_min",
        ]
    )
    holder_output.generate_output(rows)

    ts = np.linspace(0.0, 4.0, config.samples, endpoint=False)
    points = eval_g_many(state, ts)
    sample_output = ReportOutput(store.path("samples.csv"))
    sample_output.set_headings(["t", "x", "y"])
    sample_output.generate_output(
        [[float(t), float(x), float(y)] for t, (x, y) in zip(ts, points)]
    )
    if crossings:
        LOGGER.warning(f"Curve has {len(crossings)} self intersecting segment pairs")
    return 0


def run_verify(config, store):
    results = run_suites(config)
    passed = all(result["passed"] for result in results.values())
    write_json({"passed": passed, "suites": results}, store.path("verify.json"))
    if not passed:
        failed = sorted(
            name for name, result in results.items() if not result["passed"]
        )
        raise PropertySuiteFailed(
            f"Property suites failed: {', '.join(failed)}", results
        )
    return 0


def run_bound(config, store):
    phi = _boundary_map(config)
    params = config.energy_params
    bound = series_bound(phi, params, config.depth)
    series_output = ReportOutput(store.path("series.csv"))
    series_output.set_headings(["j", "term", "partial_sum", "majorant"])
    series_output.generate_output(bound.to_rows())
    document = {
        "boundary": phi.to_spec(),
        "p": params.p,
        "beta": params.beta,
        "regime": bound.regime,
        "partial_sums": bound.partial_sums,
        "tail": bound.tail,
        "violations": bound.violations,
    }
    alpha = 1.0 - params.beta
    if alpha > 0.5:
        mesh = build_extension(phi, config.depth)
        report = mesh_energy(mesh, params, seed=config.seed)
        document["composition"] = {
            "alpha": alpha,
            "constant": config.constant,
            "energy": report.total,
            "bound": composition_energy_bound(report, config.constant, alpha, params.p),
            "profile": [
                [r, gradient_profile(config.constant, alpha, r)] for r in PROFILE_RADII
            ],
        }
    else:
        LOGGER.info(f"No composition bound: Holder exponent {alpha} is at most 1/2")
    write_json(document, store.path("bound.json"))
    return 0


def main(argv=None):
    """Run one sobolev-extender command"""
    argv = argv or sys.argv

    # Reset logger level to info
    LOGGER.setLevel(logging.INFO)

    parser = argparse.ArgumentParser(
        prog="sobolev-extender",
        description=textwrap.dedent(
            """
            sobolev-extender extends boundary homeomorphisms to the triangle and
            the disk by a dyadic piecewise affine construction, measures weighted
            Sobolev energies and explores snowflake curves.
            """
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "command", nargs="?", choices=COMMANDS, help="Command to run"
    )

    input_group = parser.add_argument_group("Input")
    input_group.add_argument(
        "-b",
        "--boundary",
        action="store",
        help="Boundary map spec (JSON) or boundary map file (.json, .csv)",
    )
    input_group.add_argument(
        "--domain",
        action="store",
        choices=["triangle", "disk"],
        help="Domain of the extension (default: triangle)",
    )
    input_group.add_argument(
        "-d", "--depth", action="store", type=int, help="Mesh depth J (default: 8)"
    )
    input_group.add_argument(
        "--p",
        action="store",
        type=float,
        help="Sobolev exponent or snowflake parameter",
    )
    input_group.add_argument(
        "--beta", action="store", type=float, help="Weight exponent (default: 0.5)"
    )
    input_group.add_argument(
        "-g",
        "--generation",
        action="store",
        type=int,
        help="Snowflake generation (default: 5)",
    )
    input_group.add_argument(
        "--oracle",
        action="store",
        choices=["choice1", "choice2", "alternating", "random"],
        help="Snowflake choice oracle (default: choice1)",
    )
    input_group.add_argument(
        "-s", "--seed", action="store", type=int, help="Random seed (default: 0)"
    )
    input_group.add_argument(
        "--samples", action="store", type=int, help="Sample count (default: 1000)"
    )

    output_group = parser.add_argument_group("Output")
    output_group.add_argument(
        "-q", "--quiet", action="store_true", help="Suppress output"
    )
    output_group.add_argument(
        "-L",
        "--log",
        help="Log level (default: info)",
        dest="log_level",
        action="store",
        choices=["debug", "info", "warning", "error", "critical"],
    )
    output_group.add_argument(
        "--json-logs", action="store_true", help="Write log records as JSON"
    )
    output_group.add_argument(
        "-o",
        "--out",
        action="store",
        help=f"Output directory (default: {DISK_LOCATION_DEFAULT})",
    )

    parser.add_argument(
        "-C", "--config", action="store", default="", help="Name of config file"
    )
    parser.add_argument("-V", "--version", action="version", version=VERSION)

    defaults = {
        "config": "",
        "log_level": "info",
        "quiet": False,
        "json_logs": False,
        "out": "",
        "domain": "triangle",
    }

    raw_args = parser.parse_args(argv[1:])
    args = {
        key: value
        for key, value in vars(raw_args).items()
        if value is not None and value is not False
    }

    # Logging related settings
    if args.get("json_logs"):
        use_json_logs()
    if args.get("log_level"):
        LOGGER.setLevel(args["log_level"].upper())
    if args.get("quiet"):
        LOGGER.setLevel(logging.CRITICAL)

    status = 0
    store = None
    settings = ChainMap(args, {}, defaults)
    try:
        configs = ExtenderConfig(settings["config"]).values()
        settings = ChainMap(args, configs, defaults)
        if settings.get("command") == "snowflake" and "p" in args:
            args["snowflake_p"] = args.pop("p")
        if "boundary" in settings:
            args["boundary"] = _resolve_boundary(
                settings["boundary"], settings["domain"]
            )
        config = RunConfig.from_mapping(settings)
        store = ArtifactStore(config.out)
        commands = {
            "extend": run_extend,
            "energy": run_energy,
            "snowflake": run_snowflake,
            "verify": run_verify,
            "bound": run_bound,
        }
        LOGGER.info(f"Running {config.command}")
        status = commands[config.command](config, store)
        store.write_manifest(config.to_dict(), status)
    except ExtenderError as error:
        LOGGER.error(f"{error.code}: {error}")
        status = error.exit_status
        if store is None:
            store = ArtifactStore(settings.get("out", ""))
        details = {"error": error.code, "message": str(error)}
        if isinstance(error, InjectivityCheckFailed):
            details["diagnostics"] = error.diagnostics
        write_json(details, store.path("error.json"))
        store.write_manifest(dict(settings), status)
    return status


if __name__ == "__main__":
    sys.exit(main())
