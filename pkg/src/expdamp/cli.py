"""Command-line surface: JSON scenario configs in, CSV/JSON results out.

One canonical config schema (full reference in the README):

    {
      "params":  {"m": 1.0, "c": 0.5, "k": 4.0, "mu": 2.0},
      "initial": {"x0": 1.0, "v0": 0.3},
      "history": {"type": "constant", "a": 1.0, "value": 1.0},
      "forcing": {"type": "none"},
      "grid":    {"t_end": 20.0, "dt": 0.001}
    }

Numbers are written with repr (shortest round-trip), CSV uses `.`
decimals, `,` separators, and LF line endings, so identical configs
produce byte-identical outputs.

Exit codes: 0 success; 2 config or usage error; 3 spectrum error
(degenerate, resonant kernel, or not oscillatory where required);
4 unwritable output; 5 integration step too large; 6 grid mismatch
between compared trajectories.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .bounds import verify_decay
from .eigen import solve_eigen
from .errors import (
    DegenerateSpectrum,
    NotOscillatory,
    ResonantKernel,
    StepTooLarge,
)
from .model import (
    Constant,
    HistoryProfile,
    InitialState,
    OscillatorParams,
    Polynomial,
    Samples,
    Sine,
)
from .oracle import integrate
from .response import forced_response, time_grid

__all__ = [
    "ConfigError",
    "ScenarioConfig",
    "ConstantForcing",
    "SineForcing",
    "SamplesForcing",
    "parse_config",
    "serialize_config",
    "load_config",
    "main",
]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SPECTRUM = 3
EXIT_WRITE = 4
EXIT_STEP = 5
EXIT_GRID = 6


class ConfigError(ValueError):
    """Malformed or invalid scenario config; message names the field."""


class _WriteError(Exception):
    pass


@dataclass(frozen=True)
class ConstantForcing:
    value: float


@dataclass(frozen=True)
class SineForcing:
    amplitude: float
    omega: float
    phase: float = 0.0


@dataclass(frozen=True)
class SamplesForcing:
    """Forcing read from a CSV file (`t,f` header, t matching the grid);
    relative paths resolve against the config file's directory."""

    path: str


ForcingSpec = ConstantForcing | SineForcing | SamplesForcing


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything a command needs: system, state, history, forcing, grid.

    t_end/dt are None when the config has no grid section; commands that
    integrate or sample require them (or the --t-end/--dt overrides).
    """

    params: OscillatorParams
    initial: InitialState
    history: HistoryProfile | None
    forcing: ForcingSpec | None
    t_end: float | None
    dt: float | None


# --------------------------------------------------------------------------
# Config parsing. Every failure names the offending field.

_MISSING = object()


def _section(doc: dict, key: str, required: bool = True) -> dict | None:
    value = doc.get(key)
    if value is None:
        if required:
            raise ConfigError(f"{key}: missing required section")
        return None
    if not isinstance(value, dict):
        raise ConfigError(f"{key}: expected a JSON object, got {value!r}")
    return value


def _number(sec: dict, key: str, path: str, default=_MISSING) -> float:
    if key not in sec or sec[key] is None:
        if default is not _MISSING:
            return default
        raise ConfigError(f"{path}.{key}: missing required field")
    value = sec[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}: expected a number, got {value!r}")
    return float(value)


def _number_list(sec: dict, key: str, path: str) -> list[float]:
    if key not in sec:
        raise ConfigError(f"{path}.{key}: missing required field")
    value = sec[key]
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{path}.{key}: expected a non-empty list of numbers")
    out = []
    for i, item in enumerate(value):
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ConfigError(f"{path}.{key}[{i}]: expected a number, got {item!r}")
        out.append(float(item))
    return out


def _reject_unknown(sec: dict, allowed: set[str], prefix: str):
    for key in sec:
        if key not in allowed:
            raise ConfigError(
                f"{prefix}{key}: unknown field (allowed: {', '.join(sorted(allowed))})"
            )


def _parse_history(sec: dict | None) -> HistoryProfile | None:
    if sec is None:
        return None
    kind = sec.get("type")
    if kind == "none":
        _reject_unknown(sec, {"type"}, "history.")
        return None
    if kind not in ("constant", "sine", "polynomial", "samples"):
        raise ConfigError(
            "history.type: expected one of none, constant, sine, polynomial, "
            f"samples; got {kind!r}"
        )
    a = _number(sec, "a", "history")
    try:
        if kind == "constant":
            _reject_unknown(sec, {"type", "a", "value"}, "history.")
            shape = Constant(_number(sec, "value", "history"))
        elif kind == "sine":
            _reject_unknown(sec, {"type", "a", "amplitude", "omega", "phase"}, "history.")
            shape = Sine(
                _number(sec, "amplitude", "history"),
                _number(sec, "omega", "history"),
                _number(sec, "phase", "history", default=0.0),
            )
        elif kind == "polynomial":
            _reject_unknown(sec, {"type", "a", "coeffs"}, "history.")
            shape = Polynomial(tuple(_number_list(sec, "coeffs", "history")))
        else:
            _reject_unknown(sec, {"type", "a", "values", "spacing"}, "history.")
            values = tuple(_number_list(sec, "values", "history"))
            spacing = None
            if sec.get("spacing") is not None:
                spacing = _number(sec, "spacing", "history")
            shape = Samples(values, spacing)
        return HistoryProfile(a, shape)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"history: {exc}") from exc


def _parse_forcing(sec: dict | None) -> ForcingSpec | None:
    if sec is None:
        return None
    kind = sec.get("type")
    if kind == "none":
        _reject_unknown(sec, {"type"}, "forcing.")
        return None
    if kind == "constant":
        _reject_unknown(sec, {"type", "value"}, "forcing.")
        return ConstantForcing(_number(sec, "value", "forcing"))
    if kind == "sine":
        _reject_unknown(sec, {"type", "amplitude", "omega", "phase"}, "forcing.")
        return SineForcing(
            _number(sec, "amplitude", "forcing"),
            _number(sec, "omega", "forcing"),
            _number(sec, "phase", "forcing", default=0.0),
        )
    if kind == "samples":
        _reject_unknown(sec, {"type", "path"}, "forcing.")
        path = sec.get("path")
        if not isinstance(path, str) or not path:
            raise ConfigError("forcing.path: expected a non-empty file path")
        return SamplesForcing(path)
    raise ConfigError(
        f"forcing.type: expected one of none, constant, sine, samples; got {kind!r}"
    )


def parse_config(doc) -> ScenarioConfig:
    """Validate a parsed JSON document into a ScenarioConfig."""
    if not isinstance(doc, dict):
        raise ConfigError("top-level config must be a JSON object")
    _reject_unknown(doc, {"params", "initial", "history", "forcing", "grid"}, "")

    psec = _section(doc, "params")
    _reject_unknown(psec, {"m", "c", "k", "mu"}, "params.")
    try:
        params = OscillatorParams(
            m=_number(psec, "m", "params"),
            c=_number(psec, "c", "params"),
            k=_number(psec, "k", "params"),
            mu=_number(psec, "mu", "params"),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"params: {exc}") from exc

    isec = _section(doc, "initial", required=False)
    if isec is None:
        initial = InitialState(0.0, 0.0)
    else:
        _reject_unknown(isec, {"x0", "v0"}, "initial.")
        try:
            initial = InitialState(
                _number(isec, "x0", "initial"), _number(isec, "v0", "initial")
            )
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"initial: {exc}") from exc

    history = _parse_history(_section(doc, "history", required=False))
    forcing = _parse_forcing(_section(doc, "forcing", required=False))

    gsec = _section(doc, "grid", required=False)
    t_end = dt = None
    if gsec is not None:
        _reject_unknown(gsec, {"t_end", "dt"}, "grid.")
        t_end = _number(gsec, "t_end", "grid")
        dt = _number(gsec, "dt", "grid")
        if not math.isfinite(t_end) or t_end <= 0:
            raise ConfigError(f"grid.t_end: must be a positive number, got {t_end}")
        if not math.isfinite(dt) or dt <= 0:
            raise ConfigError(f"grid.dt: must be a positive number, got {dt}")

    return ScenarioConfig(params, initial, history, forcing, t_end, dt)


def _serialize_history(history: HistoryProfile | None) -> dict:
    if history is None:
        return {"type": "none"}
    shape = history.shape
    if isinstance(shape, Constant):
        return {"type": "constant", "a": history.a, "value": shape.value}
    if isinstance(shape, Sine):
        return {
            "type": "sine", "a": history.a,
            "amplitude": shape.amplitude, "omega": shape.omega, "phase": shape.phase,
        }
    if isinstance(shape, Polynomial):
        return {"type": "polynomial", "a": history.a, "coeffs": list(shape.coeffs)}
    out = {"type": "samples", "a": history.a, "values": list(shape.values)}
    if shape.spacing is not None:
        out["spacing"] = shape.spacing
    return out


def _serialize_forcing(forcing: ForcingSpec | None) -> dict:
    if forcing is None:
        return {"type": "none"}
    if isinstance(forcing, ConstantForcing):
        return {"type": "constant", "value": forcing.value}
    if isinstance(forcing, SineForcing):
        return {
            "type": "sine", "amplitude": forcing.amplitude,
            "omega": forcing.omega, "phase": forcing.phase,
        }
    return {"type": "samples", "path": forcing.path}


def serialize_config(cfg: ScenarioConfig) -> dict:
    """Canonical JSON form; parse_config(serialize_config(cfg)) == cfg."""
    doc = {
        "params": {
            "m": cfg.params.m, "c": cfg.params.c,
            "k": cfg.params.k, "mu": cfg.params.mu,
        },
        "initial": {"x0": cfg.initial.x0, "v0": cfg.initial.v0},
        "history": _serialize_history(cfg.history),
        "forcing": _serialize_forcing(cfg.forcing),
    }
    if cfg.t_end is not None and cfg.dt is not None:
        doc["grid"] = {"t_end": cfg.t_end, "dt": cfg.dt}
    return doc


def load_config(path) -> ScenarioConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path} is not valid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})"
        ) from exc
    return parse_config(doc)


# --------------------------------------------------------------------------
# CSV and JSON emission. repr floats round-trip exactly.


def _fmt(value: float) -> str:
    return repr(float(value))


def _write_text(path, text: str):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise _WriteError(f"cannot write {path}: {exc}") from exc


def _trajectory_csv(traj) -> str:
    lines = ["t,x,xdot,psi"]
    t = traj.t
    for i in range(len(traj)):
        lines.append(
            f"{_fmt(t[i])},{_fmt(traj.x[i])},{_fmt(traj.xdot[i])},{_fmt(traj.psi[i])}"
        )
    return "\n".join(lines) + "\n"


def _bounds_csv(report) -> str:
    lines = ["t,I1_abs,B1,I2_abs,B2,ok1,ok2"]
    for i in range(len(report.t)):
        lines.append(
            f"{_fmt(report.t[i])},{_fmt(report.i1_abs[i])},{_fmt(report.b1[i])},"
            f"{_fmt(report.i2_abs[i])},{_fmt(report.b2[i])},"
            f"{int(report.ok1[i])},{int(report.ok2[i])}"
        )
    return "\n".join(lines) + "\n"


def _read_csv_columns(path, names: tuple[str, ...]) -> dict[str, np.ndarray]:
    try:
        fh = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[: len(names)]] != list(names):
            raise ConfigError(f"{path}: expected CSV header starting {','.join(names)}")
        cols: list[list[float]] = [[] for _ in names]
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) < len(names):
                raise ConfigError(f"{path} line {lineno}: expected {len(names)} columns")
            for i in range(len(names)):
                try:
                    cols[i].append(float(row[i]))
                except ValueError:
                    raise ConfigError(
                        f"{path} line {lineno}: {row[i]!r} is not a number"
                    ) from None
    if not cols[0]:
        raise ConfigError(f"{path}: no data rows")
    return {name: np.asarray(col, dtype=float) for name, col in zip(names, cols)}


def _json_num(value):
    return value if value is not None and math.isfinite(value) else None


def _emit_json(doc: dict, out_path) -> str:
    text = json.dumps(doc, indent=2, allow_nan=False) + "\n"
    sys.stdout.write(text)
    if out_path:
        _write_text(out_path, text)
    return text


# --------------------------------------------------------------------------
# Commands.


def _apply_overrides(cfg: ScenarioConfig, args) -> ScenarioConfig:
    t_end = getattr(args, "t_end", None)
    dt = getattr(args, "dt", None)
    if t_end is not None:
        if not math.isfinite(t_end) or t_end <= 0:
            raise ConfigError(f"--t-end must be a positive number, got {t_end}")
        cfg = replace(cfg, t_end=t_end)
    if dt is not None:
        if not math.isfinite(dt) or dt <= 0:
            raise ConfigError(f"--dt must be a positive number, got {dt}")
        cfg = replace(cfg, dt=dt)
    return cfg


def _require_grid(cfg: ScenarioConfig) -> tuple[float, float]:
    if cfg.t_end is None or cfg.dt is None:
        raise ConfigError(
            "grid: missing required section (set grid.t_end and grid.dt, "
            "or pass --t-end and --dt)"
        )
    return cfg.t_end, cfg.dt


def _realize_forcing(forcing: ForcingSpec | None, t: np.ndarray, config_dir: Path):
    if forcing is None:
        return None
    if isinstance(forcing, ConstantForcing):
        value = forcing.value
        return lambda ti: value
    if isinstance(forcing, SineForcing):
        amplitude, omega, phase = forcing.amplitude, forcing.omega, forcing.phase
        return lambda ti: amplitude * math.sin(omega * ti + phase)
    path = Path(forcing.path)
    if not path.is_absolute():
        path = config_dir / path
    cols = _read_csv_columns(path, ("t", "f"))
    ft = cols["t"]
    if len(ft) != len(t) or float(np.max(np.abs(ft - t))) > 1e-12:
        raise ConfigError(
            f"forcing file {path} has {len(ft)} rows and does not match "
            f"the {len(t)}-point scenario grid"
        )
    return cols["f"]


def _cmd_eigen(args) -> int:
    cfg = load_config(args.config)
    eig = solve_eigen(cfg.params)
    doc = {
        "roots": [{"re": s.real, "im": s.imag} for s in eig.roots],
        "residues": [{"re": r.real, "im": r.imag} for r in eig.residues],
        "alpha": eig.alpha if eig.oscillatory else None,
        "beta": eig.beta if eig.oscillatory else None,
        "gamma": eig.gamma,
        "oscillatory": eig.oscillatory,
    }
    _emit_json(doc, args.out)
    return EXIT_OK


def _cmd_respond(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    t_end, dt = _require_grid(cfg)
    t = time_grid(t_end, dt)
    forcing = _realize_forcing(cfg.forcing, t, Path(args.config).resolve().parent)
    traj = forced_response(cfg.params, cfg.initial, cfg.history, forcing, t_end, dt)
    _write_text(args.out, _trajectory_csv(traj))
    return EXIT_OK


def _cmd_oracle(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    t_end, dt = _require_grid(cfg)
    t = time_grid(t_end, dt)
    forcing = _realize_forcing(cfg.forcing, t, Path(args.config).resolve().parent)
    traj = integrate(cfg.params, cfg.initial, cfg.history, forcing, t_end, dt)
    _write_text(args.out, _trajectory_csv(traj))
    return EXIT_OK


def _cmd_compare(args) -> int:
    a = _read_csv_columns(args.path_a, ("t", "x", "xdot"))
    b = _read_csv_columns(args.path_b, ("t", "x", "xdot"))
    if len(a["t"]) != len(b["t"]):
        print(
            f"grid mismatch: {args.path_a} has {len(a['t'])} rows, "
            f"{args.path_b} has {len(b['t'])}",
            file=sys.stderr,
        )
        return EXIT_GRID
    if float(np.max(np.abs(a["t"] - b["t"]))) > 1e-12:
        print(
            f"grid mismatch: t columns of {args.path_a} and {args.path_b} "
            "differ by more than 1e-12",
            file=sys.stderr,
        )
        return EXIT_GRID
    doc = {
        "max_abs_diff_x": float(np.max(np.abs(a["x"] - b["x"]))),
        "max_abs_diff_xdot": float(np.max(np.abs(a["xdot"] - b["xdot"]))),
        "rows": int(len(a["t"])),
    }
    _emit_json(doc, args.out)
    return EXIT_OK


def _cmd_bounds(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    t_end, dt = _require_grid(cfg)
    report = verify_decay(cfg.params, cfg.initial, cfg.history, t_end, dt)
    _write_text(args.out, _bounds_csv(report))
    summary = {
        "rows": int(len(report.t)),
        "bounds_ok": report.bounds_ok,
        "undamped": report.undamped,
        "envelope_ok": report.envelope_ok,
        "tail_time": _json_num(report.tail_time),
        "tail_x": _json_num(report.tail_x),
        "tail_i1": _json_num(report.tail_i1),
        "tail_i2": _json_num(report.tail_i2),
        "tail_ok": report.tail_ok,
    }
    _emit_json(summary, None)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="osc",
        description="Oscillators with exponentially fading damping memory: "
        "eigenstructure, responses, decay bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_parser(name, help_text, out_required=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="JSON scenario config")
        p.add_argument(
            "--out",
            required=out_required,
            help="output file path" + ("" if out_required else " (optional)"),
        )
        return p

    p_eigen = scenario_parser(
        "eigen", "roots, residues, and decay rates as JSON", out_required=False
    )
    del p_eigen

    for name, help_text in (
        ("respond", "closed-form trajectory CSV (convolution path when forced)"),
        ("oracle", "RK4 reference trajectory CSV"),
        ("bounds", "history-term split, decay bounds CSV, and JSON summary"),
    ):
        p = scenario_parser(name, help_text)
        p.add_argument("--dt", type=float, help="override grid.dt")
        p.add_argument("--t-end", type=float, help="override grid.t_end")

    p_cmp = sub.add_parser("compare", help="column-wise max differences of two CSVs")
    p_cmp.add_argument("path_a")
    p_cmp.add_argument("path_b")
    p_cmp.add_argument("--out", help="also write the JSON report here")

    handlers = {
        "eigen": _cmd_eigen,
        "respond": _cmd_respond,
        "oracle": _cmd_oracle,
        "bounds": _cmd_bounds,
        "compare": _cmd_compare,
    }
    parser.set_defaults(handlers=handlers)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return EXIT_OK
        return code if isinstance(code, int) else EXIT_CONFIG
    try:
        return args.handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DegenerateSpectrum, ResonantKernel, NotOscillatory) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SPECTRUM
    except StepTooLarge as exc:
        print(f"StepTooLarge: {exc}", file=sys.stderr)
        return EXIT_STEP
    except _WriteError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_WRITE
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
