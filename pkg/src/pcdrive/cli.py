"""Command-line front end: ``pcdrive analyze | sweep | search``.

Input files are JSON documents described by ``data/schema.json``. A bare file
name that does not exist on disk is looked up among the bundled examples, so
``pcdrive analyze --config table3.json`` works from any directory.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from .design_search import DesignQuery, enumerate_designs
from .efficiency import compound_efficiencies, self_lock_threshold
from .geometry import CompoundTrainGeometry, GeometryError, MeshEfficiencySet, MESH_FIELDS
from .kinematics import compound_ratio, khv_ratio, planetary_ratio, ratio_terms
from .quasistatic import solve_compound_forward
from .sweep import SweepSpec, default_ratio_grid, run_sweep

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_CONSTRAINT = 3
EXIT_EMPTY = 4

SIG_DIGITS = 9
UNITS = {"speed": "rad/s", "torque": "N*m", "power": "W"}


class ConfigError(Exception):
    pass


def fmt(x) -> str:
    """Locale-independent, 9 significant digits."""
    return format(float(x), f".{SIG_DIGITS}g")


def num(x) -> float:
    return float(fmt(x))


def fraction_str(n: int, d: int) -> str:
    return str(n) if d == 1 else f"{n}/{d}"


def ratio_entry(n: int, d: int) -> dict:
    value = Fraction(n, d)
    return {
        "exact": fraction_str(n, d),
        "reduced": str(value),
        "value": num(value),
        "label": f"{fraction_str(n, d)} (≈{float(value):.2f})",
    }


# -- input -------------------------------------------------------------------

def _schema() -> dict:
    return json.loads(resources.files("pcdrive").joinpath("data/schema.json").read_text())


def resolve_config_path(name: str) -> Path:
    path = Path(name)
    if path.exists():
        return path
    bundled = resources.files("pcdrive").joinpath("data", path.name)
    if path.parent == Path(".") and bundled.is_file():
        return Path(str(bundled))
    raise ConfigError(f"{name}: no such file")


def _locate(text: str, path) -> int:
    """Best-effort line number of the key addressed by ``path``."""
    pos = 0
    for part in path:
        if isinstance(part, str):
            found = text.find(f'"{part}"', pos)
            if found >= 0:
                pos = found
    return text.count("\n", 0, pos) + 1


def load_config(name: str, kind: str) -> dict:
    path = resolve_config_path(name)
    text = path.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from None
    schema = _schema()
    validator = jsonschema.Draft202012Validator({**schema, "$ref": f"#/$defs/{kind}"})
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        err = errors[0]
        field = ".".join(str(p) for p in err.absolute_path) or "<root>"
        line = _locate(text, list(err.absolute_path))
        raise ConfigError(f"{path}:{line}: field '{field}': {err.message}")
    return doc


def parse_eta(value):
    if isinstance(value, str):
        try:
            return Fraction(value.replace(" ", ""))
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"invalid mesh efficiency {value!r}") from None
    return value


def parse_mesh(value) -> MeshEfficiencySet:
    try:
        if isinstance(value, dict):
            return MeshEfficiencySet(**{k: parse_eta(value[k]) for k in MESH_FIELDS})
        return MeshEfficiencySet.uniform(parse_eta(value))
    except ValueError as exc:
        raise ConfigError(f"field 'mesh': {exc}") from None


def parse_ratios(value) -> np.ndarray:
    if isinstance(value, list):
        return np.asarray(value, dtype=float)
    if value.get("spacing", "linear") == "log":
        return np.logspace(np.log10(value["start"]), np.log10(value["stop"]), value["num"])
    return np.linspace(value["start"], value["stop"], value["num"])


# -- report builders -----------------------------------------------------------

def _eff_dict(report) -> dict:
    d = report.as_dict()
    return {k: (v if k == "self_locking" else num(v)) for k, v in d.items()}


def _flow_dict(rep) -> dict:
    return {
        "stage": rep.stage,
        "direction": rep.direction,
        "torques": {k: num(v) for k, v in rep.torques.items()},
        "forces": {k: num(v) for k, v in rep.forces.items()},
        "speeds": {
            "absolute": {k: num(v) for k, v in rep.speeds.absolute.items()},
            "carrier": {k: num(v) for k, v in rep.speeds.carrier.items()},
        },
        "carrier_powers": {k: num(v) for k, v in rep.carrier_powers.items()},
        "p_in": num(rep.p_in),
        "p_out": num(rep.p_out),
        "p_loss": num(rep.p_loss),
        "efficiency": num(rep.efficiency),
        "self_locking": rep.self_locking,
    }


def build_train(doc: dict) -> CompoundTrainGeometry:
    t = doc["train"]
    return CompoundTrainGeometry.from_counts(
        t["z_s"], t["z_p1"], t["z_r1"], t["z_p2"], t["z_r2"], t.get("n_planets", 3))


def analyze(doc: dict) -> dict:
    train = build_train(doc)
    mesh = parse_mesh(doc["mesh"])
    terms = ratio_terms(train)
    # validates the train; GeometryError surfaces before any output
    ratios = {
        "i_2kh": planetary_ratio(train.input_stage),
        "i_khv": khv_ratio(train.output_stage),
        "i_3khv": compound_ratio(train),
    }
    threshold = self_lock_threshold(train.output_stage)
    out = {
        "units": dict(UNITS),
        "train": dict(zip(("z_s", "z_p1", "z_r1", "z_p2", "z_r2"), train.counts),
                      n_planets=train.input_stage.n_planets),
        "ratios": {k: ratio_entry(*terms[k]) for k in ratios},
        "mesh": {k: num(v) for k, v in mesh.as_dict().items()},
        "efficiency": _eff_dict(compound_efficiencies(train, mesh)),
        "self_lock_threshold": {"exact": str(threshold), "value": num(threshold)},
    }
    op = doc.get("operating_point")
    if op:
        first, second, overall = solve_compound_forward(
            train, mesh, op["input_torque"], op["input_speed"])
        out["power_flow"] = {
            "input_torque": num(op["input_torque"]),
            "input_speed": num(op["input_speed"]),
            "stages": [_flow_dict(first), _flow_dict(second)],
            "efficiency": num(overall),
        }
    return out


def sweep_table(doc: dict) -> dict:
    try:
        spec = SweepSpec(
            stage=doc["stage"],
            direction=doc["direction"],
            ratio_grid=parse_ratios(doc["ratios"]) if "ratios" in doc else default_ratio_grid(),
            mesh_grid=[float(parse_eta(v)) for v in doc["mesh_values"]],
            split=doc.get("split", 0.5),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    values = run_sweep(spec)
    return {
        "stage": spec.stage,
        "direction": spec.direction,
        "split": num(spec.split),
        "mesh_values": [num(v) for v in spec.mesh_grid],
        "ratios": [num(v) for v in spec.ratio_grid],
        "efficiency": [[num(v) for v in row] for row in values],
    }


SEARCH_COLUMNS = (
    "z_s", "z_p1", "z_r1", "z_p2", "z_r2", "n_planets", "ratio", "ratio_value",
    "ratio_error", "i_2kh", "i_khv", "eta_sh", "eta_hs", "eta_hr2", "eta_r2h",
    "eta_sr2", "eta_r2s", "self_locking", "merit",
)


def search_table(doc: dict) -> dict:
    b = doc["bounds"]
    try:
        query = DesignQuery(
            target_ratio=doc["target_ratio"],
            z_s_bounds=tuple(b["z_s"]),
            z_p1_bounds=tuple(b["z_p1"]),
            z_p2_bounds=tuple(b["z_p2"]),
            mesh=parse_mesh(doc["mesh"]),
            ratio_tolerance=doc.get("ratio_tolerance", 0.01),
            n_planets=doc.get("n_planets", 3),
            merit=doc.get("merit", "forward"),
            forbid_self_locking=doc.get("forbid_self_locking", True),
            check_interference=doc.get("check_interference", False),
        )
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None
    rows = []
    for c in enumerate_designs(query):
        terms = ratio_terms(c.train)
        z_s, z_p1, z_r1, z_p2, z_r2 = c.train.counts
        row = {
            "z_s": z_s, "z_p1": z_p1, "z_r1": z_r1, "z_p2": z_p2, "z_r2": z_r2,
            "n_planets": c.train.input_stage.n_planets,
            "ratio": fraction_str(*terms["i_3khv"]),
            "ratio_value": num(c.achieved_ratio),
            "ratio_error": num(c.ratio_error),
            "i_2kh": fraction_str(*terms["i_2kh"]),
            "i_khv": fraction_str(*terms["i_khv"]),
        }
        row.update(_eff_dict(c.report))
        row["merit"] = num(c.merit)
        rows.append(row)
    return {
        "target_ratio": num(doc["target_ratio"]),
        "ratio_tolerance": num(query.ratio_tolerance),
        "merit": query.merit,
        "count": len(rows),
        "candidates": rows,
    }


# -- serialisation -------------------------------------------------------------

def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt(v)
    return str(v)


def flatten(doc, prefix="") -> dict:
    out = {}
    if isinstance(doc, dict):
        for k, v in doc.items():
            out.update(flatten(v, f"{prefix}{k}."))
    elif isinstance(doc, list):
        for k, v in enumerate(doc):
            out.update(flatten(v, f"{prefix}{k}."))
    else:
        out[prefix[:-1]] = doc
    return out


def _write_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([[_cell(v) for v in row] for row in rows])
    return buf.getvalue()


def to_csv(kind: str, doc: dict) -> str:
    if kind == "sweep":
        header = ["ratio"] + [f"eta={fmt(v)}" for v in doc["mesh_values"]]
        cols = np.asarray(doc["efficiency"]).T
        return _write_csv(header, [[r, *map(float, col)] for r, col in zip(doc["ratios"], cols)])
    if kind == "search":
        return _write_csv(SEARCH_COLUMNS, [[c[k] for k in SEARCH_COLUMNS] for c in doc["candidates"]])
    return _write_csv(["field", "value"], list(flatten(doc).items()))


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render(kind: str, doc: dict, fmt_name: str) -> str:
    return to_csv(kind, doc) if fmt_name == "csv" else to_json(doc)


def emit(text: str, out: str) -> None:
    if out in ("-", "stdout"):
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); not an error
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


BUILDERS = {"analyze": analyze, "sweep": sweep_table, "search": search_table}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcdrive",
        description="Ratio, efficiency and tooth-count design search for 3K-H-V drives.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "analyze": "ratios, efficiencies and power flow of one train",
        "sweep": "efficiency-versus-ratio curve table",
        "search": "exhaustive tooth-count search for a target ratio",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True, help="JSON input file")
        p.add_argument("--out", default="-", help="output path, or - for stdout")
        p.add_argument("--format", choices=("json", "csv"), default=None,
                       help="output format (default: the file's 'format' field, else json)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = load_config(args.config, args.command)
        result = BUILDERS[args.command](doc)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GeometryError as exc:
        print(f"constraint violation: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT

    fmt_name = args.format or doc.get("format", "json")
    try:
        emit(render(args.command, result, fmt_name), args.out)
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.command == "search" and result["count"] == 0:
        print("search: no candidate meets the query", file=sys.stderr)
        return EXIT_EMPTY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
