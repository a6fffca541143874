"""Command-line front end.

Exit status: 0 all checks pass, 1 a check failed, 2 bad config or input.
Every output starts with a metadata header (``#`` lines for CSV, a ``meta``
record for JSON) and contains no timestamps, so identical configs give
byte-identical files.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
import yaml

from . import __version__
from .bounds import bound_grid, f_alpha, g_c2, ontrn_offres_bound, reduced_system
from .diag import char_eigenvalues, diag_angles, factored_propagator, reduced_onres_hamiltonian
from .gates import (
    cnot_sequence_onres,
    exact_cnot_params,
    ontrn_defect_closed_form,
    predicted_phases_onres,
    verify_cnot,
)
from .hamiltonians import (
    RfPulse,
    SpinSystem,
    drop_offres_term,
    rotating_frame_hamiltonian,
)
from .observables import ExperimentPreset, format_float, simulate_series
from .operators import Tolerances, expm_hermitian, ga_norm

EXIT_OK, EXIT_CHECK_FAILED, EXIT_CONFIG = 0, 1, 2

VARIANT_ALIASES = {
    "full": "effective_full", "dropped": "effective_dropped", "transition": "transition",
    "effective_full": "effective_full", "effective_dropped": "effective_dropped",
}
SWEEP_AXES = ("c1", "c2", "omega1", "t")
SWEEP_COLUMNS = ("c1", "c2", "omega1_t", "defect", "lambda_plus", "lambda_minus",
                 "f1_onres", "g", "f1_ontrn", "ontrn_bound")
DEFAULT_BOUND_C2 = (5.0, 10.0, 50.0, 100.0, 500.0)
DEFAULT_FRACTIONS = (0.25, 0.5, 0.75, 1.0)


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class SweepSpec:
    axis: str = "c1"
    start: float = 0.5
    stop: float = 5.0
    num: int = 50
    c1: float = 1.0
    c2: float = 10.0
    omega1: float = 1.0
    omega1_t: float = math.pi / math.sqrt(2)
    workers: int = 1


@dataclass(frozen=True)
class BoundsSpec:
    c2: tuple[float, ...] = DEFAULT_BOUND_C2
    fractions: tuple[float, ...] = DEFAULT_FRACTIONS
    ontrn_c1: float = 0.5
    workers: int = 1


@dataclass(frozen=True)
class RunConfig:
    spin_system: SpinSystem = field(default_factory=SpinSystem.alanine)
    preset: str = "i"
    variant: str = "effective_full"
    out: str | None = None
    fmt: str = "csv"
    tolerances: Tolerances = Tolerances()
    seed: int = 0
    sweep: SweepSpec = SweepSpec()
    bounds: BoundsSpec = BoundsSpec()

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("out")
        return d


# ---------------------------------------------------------------- config

def _expect_mapping(obj, where: str) -> dict:
    if obj is None:
        return {}
    if not isinstance(obj, dict):
        raise ConfigError(f"{where} must be a mapping")
    return obj


def _build(cls, data: dict, where: str):
    known = set(cls.__dataclass_fields__)
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown keys in {where}: {sorted(unknown)}")
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _spin_system(data: dict) -> SpinSystem:
    data = dict(data)
    name = data.pop("name", None)
    if name is not None:
        if name != "alanine":
            raise ConfigError(f"unknown spin system {name!r}")
        if data.keys() - {"coupling_model"}:
            raise ConfigError("a named spin system only accepts coupling_model")
        return SpinSystem.alanine(data.get("coupling_model", "weak"))
    if not data:
        return SpinSystem.alanine()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return _build(SpinSystem, data, "spin_system")


def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed YAML: {exc}") from exc
    raw = _expect_mapping(raw, "config")
    allowed = {"spin_system", "preset", "variant", "output", "tolerances", "seed",
               "sweep", "bounds"}
    unknown = set(raw) - allowed
    if unknown:
        raise ConfigError(f"unknown top-level keys: {sorted(unknown)}")
    return raw


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge the YAML file with command-line flags (flags win)."""
    raw = load_config(args.config)
    output = _expect_mapping(raw.get("output"), "output")
    tol_data = dict(_expect_mapping(raw.get("tolerances"), "tolerances"))
    if args.tol is not None:
        tol_data["eq_tol"] = args.tol
        tol_data["phase_tol"] = args.tol
    sweep_data = dict(_expect_mapping(raw.get("sweep"), "sweep"))
    for key in SweepSpec.__dataclass_fields__:
        val = getattr(args, f"sweep_{key}", None)
        if val is not None:
            sweep_data[key] = val
    bounds_data = dict(_expect_mapping(raw.get("bounds"), "bounds"))
    for key in ("c2", "fractions"):
        if key in bounds_data:
            bounds_data[key] = tuple(float(x) for x in bounds_data[key])

    variant = args.variant or raw.get("variant", "full")
    if variant not in VARIANT_ALIASES:
        raise ConfigError(f"unknown variant {variant!r}")
    fmt = args.format or output.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"unsupported output format {fmt!r}")
    preset = str(args.preset or raw.get("preset", "i"))
    if preset not in ("i", "ii", "iii"):
        raise ConfigError(f"unknown preset {preset!r}")
    seed = args.seed if args.seed is not None else raw.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError("seed must be an integer")

    cfg = RunConfig(
        spin_system=_spin_system(_expect_mapping(raw.get("spin_system"), "spin_system")),
        preset=preset,
        variant=VARIANT_ALIASES[variant],
        out=args.out or output.get("path"),
        fmt=fmt,
        tolerances=_build(Tolerances, tol_data, "tolerances"),
        seed=seed,
        sweep=_build(SweepSpec, sweep_data, "sweep"),
        bounds=_build(BoundsSpec, bounds_data, "bounds"),
    )
    return cfg


# ---------------------------------------------------------------- output

def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def header_meta(command: str, cfg: RunConfig, extra: dict | None = None) -> dict:
    meta = {"artifact": "pocnot", "version": __version__, "command": command,
            "config": cfg.echo()}
    if extra:
        meta.update(extra)
    return _jsonable(meta)


def render_csv(meta: dict, columns, rows) -> str:
    buf = io.StringIO()
    for key in sorted(meta):
        buf.write(f"# {key}: {json.dumps(meta[key], sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([format_float(x) if isinstance(x, (float, np.floating)) else x
                    for x in row])
    return buf.getvalue()


def render_json(meta: dict, body: dict) -> str:
    return json.dumps(_jsonable({"meta": meta, **body}), sort_keys=True, indent=2) + "\n"


def emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands

def cmd_simulate(cfg: RunConfig, args) -> int:
    sysm = cfg.spin_system
    preset = ExperimentPreset.standard(cfg.preset, sysm, cfg.variant,
                                       n_points=args.points or 16)
    series = simulate_series(sysm, preset)
    meta = header_meta("simulate", cfg, {"series": series.meta})
    if cfg.fmt == "csv":
        cols = ("t_seconds", *series.components)
        text = render_csv(meta, cols, series.rows())
    else:
        text = render_json(meta, {"times": list(series.times),
                                  "components": {k: list(v) for k, v in
                                                 series.components.items()}})
    emit(cfg, text)
    return EXIT_OK


def _check(name: str, passed: bool, measured, threshold, **extra) -> dict:
    return {"name": name, "passed": bool(passed), "measured": measured,
            "threshold": threshold, **extra}


def gate_checks(cfg: RunConfig) -> list[dict]:
    tol = cfg.tolerances
    J = cfg.spin_system.J
    out = []
    for c2 in (3.0, 10.0, 100.0):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            sysm = SpinSystem(c2 * math.pi * abs(J), 0.0, J)
        verdict = verify_cnot(cnot_sequence_onres(sysm), tol)
        phase_err = math.inf
        if verdict.extracted_phases is not None:
            pred = predicted_phases_onres(c2)
            got = verdict.extracted_phases.aligned(pred)
            phase_err = float(np.max(np.abs(np.array(got.phases) - np.array(pred.phases))))
        out.append(_check(f"onres_cnot_c2={c2:g}",
                          verdict.is_cnot_up_to_phases and phase_err < tol.phase_tol,
                          {"residual": verdict.residual, "phase_error": phase_err},
                          {"eq_tol": tol.eq_tol, "phase_tol": tol.phase_tol}))
    for n in (1, 2, 3, 4):
        omega1, t = exact_cnot_params(n, J)
        pulse = RfPulse(omega1, t, "on_transition_A_minus")
        h0 = drop_offres_term(rotating_frame_hamiltonian(cfg.spin_system, pulse), pulse)
        verdict = verify_cnot(expm_hermitian(h0, t), tol)
        out.append(_check(f"exact_ontrn_cnot_n={n}", verdict.is_cnot_up_to_phases,
                          verdict.residual, tol.eq_tol))
    return out


def diag_checks(cfg: RunConfig) -> list[dict]:
    tol = cfg.tolerances
    rng = np.random.default_rng(cfg.seed)
    eig_err = prop_err = 0.0
    for _ in range(20):
        c1, c2, alpha = rng.uniform(0.1, 5), rng.uniform(0, 100), rng.choice([0.0, 0.5, 1.0])
        num = np.sort(np.linalg.eigvalsh(reduced_onres_hamiltonian(c1, c2, alpha)))
        lp, lm = char_eigenvalues(c1, c2, alpha)
        f = diag_angles(c1, c2, alpha)
        ana = np.sort([lp, -lp, lm, -lm])
        eig_err = max(eig_err, float(np.abs(num - ana).max()),
                      abs(f.lambda_plus - lp), abs(f.lambda_minus - lm))
        w1t = rng.uniform(0.1, 3)
        exact = expm_hermitian(reduced_onres_hamiltonian(c1, c2, alpha), w1t)
        prop_err = max(prop_err, ga_norm(factored_propagator(c1, c2, alpha, 1.0, w1t) - exact))
    try:
        diag_angles(0.0, 0.0)
        rejected = False
    except ValueError:
        rejected = True
    return [
        _check("eigenvalues_analytic_vs_numeric", eig_err < tol.eq_tol, eig_err, tol.eq_tol),
        _check("factored_propagator_vs_expm", prop_err < tol.eq_tol, prop_err, tol.eq_tol),
        _check("degenerate_input_rejected", rejected, "rejected" if rejected else "accepted",
               "rejected", expected_rejection=True),
    ]


def bound_checks(cfg: RunConfig) -> list[dict]:
    reports = bound_grid(cfg.bounds.c2, cfg.bounds.fractions, cfg.bounds.ontrn_c1,
                         workers=cfg.bounds.workers)
    return [_check(f"{r.case}_c1={r.c1:g}_c2={r.c2:g}_w1t={r.omega1_t:.6g}", r.satisfied,
                   r.f1, r.bound) for r in reports]


def series_checks(cfg: RunConfig) -> list[dict]:
    sysm = cfg.spin_system
    preset = ExperimentPreset.standard("i", sysm, "effective_dropped")
    s = simulate_series(sysm, preset, times=[1 / (math.sqrt(2) * abs(sysm.J))])
    val = abs(s.components["2IxIz"][0])
    return [_check("preset_i_antiphase", val >= 1 - 1e-9, val, 1 - 1e-9)]


SUITES = {"gates": gate_checks, "diag": diag_checks, "bounds": bound_checks,
          "series": series_checks}


def cmd_verify(cfg: RunConfig, args) -> int:
    selected = [s for s in SUITES if getattr(args, s)] or list(SUITES)
    checks = []
    for name in selected:
        for c in SUITES[name](cfg):
            checks.append({"suite": name, **c})
    failures = [{k: c[k] for k in ("suite", "name", "measured", "threshold")}
                for c in checks if not c["passed"]]
    body = {"suites": selected, "passed": not failures, "failures": failures,
            "checks": checks}
    meta = header_meta("verify", cfg)
    if cfg.fmt == "csv":
        rows = [(c["suite"], c["name"], c["passed"], json.dumps(_jsonable(c["measured"])),
                 json.dumps(_jsonable(c["threshold"]))) for c in checks]
        text = render_csv(meta, ("suite", "name", "passed", "measured", "threshold"), rows)
    else:
        text = render_json(meta, body)
    emit(cfg, text)
    return EXIT_OK if not failures else EXIT_CHECK_FAILED


def cmd_diag(cfg: RunConfig, args) -> int:
    c1 = args.c1 if args.c1 is not None else cfg.sweep.c1
    c2 = args.c2 if args.c2 is not None else cfg.sweep.c2
    f = diag_angles(c1, c2, args.alpha)
    lp, lm = char_eigenvalues(c1, c2, args.alpha)
    record = {"c1": c1, "c2": c2, "alpha": args.alpha, **f.to_json(),
              "lambda_plus_quadratic": lp, "lambda_minus_quadratic": lm}
    meta = header_meta("diag", cfg)
    if cfg.fmt == "csv":
        text = render_csv(meta, tuple(record), [tuple(float(v) for v in record.values())])
    else:
        text = render_json(meta, {"diag": record})
    emit(cfg, text)
    return EXIT_OK


def cmd_bounds(cfg: RunConfig, args) -> int:
    reports = bound_grid(cfg.bounds.c2, cfg.bounds.fractions, cfg.bounds.ontrn_c1,
                         workers=cfg.bounds.workers)
    meta = header_meta("bounds", cfg)
    if cfg.fmt == "csv":
        rows = [(r.case, r.c1, r.c2, r.omega1_t, r.f1, r.bound, r.satisfied) for r in reports]
        text = render_csv(meta, ("case", "c1", "c2", "omega1_t", "f1", "bound", "satisfied"),
                          rows)
    else:
        text = render_json(meta, {"reports": [r.to_json() for r in reports]})
    emit(cfg, text)
    return EXIT_OK if all(r.satisfied for r in reports) else EXIT_CHECK_FAILED


def _guarded(fn, *a) -> float:
    try:
        return float(fn(*a))
    except ValueError:
        return math.nan


def sweep_row(point: tuple[float, float, float]) -> tuple[float, ...]:
    c1, c2, w1t = point
    lp, lm = char_eigenvalues(c1, c2, 1.0)

    def f1(placement):
        sysm, pulse = reduced_system(c1, c2, placement)
        return f_alpha(sysm, pulse, w1t, 1.0)

    return (c1, c2, w1t, ontrn_defect_closed_form(c1), lp, lm, f1("on_resonance_A"),
            _guarded(g_c2, c2), f1("on_transition_A_minus"),
            _guarded(ontrn_offres_bound, c1, c2))


def sweep_points(cfg: RunConfig) -> tuple[np.ndarray, list[tuple[float, float, float]]]:
    sp = cfg.sweep
    if sp.axis not in SWEEP_AXES:
        raise ConfigError(f"unknown sweep axis {sp.axis!r}")
    if sp.num < 2 or not sp.stop > sp.start:
        raise ConfigError("sweep range must have stop > start and at least 2 points")
    axis = np.linspace(sp.start, sp.stop, sp.num)
    sysm = cfg.spin_system
    pts = []
    for v in axis:
        v = float(v)
        if sp.axis == "c1":
            pts.append((v, sp.c2, sp.omega1_t))
        elif sp.axis == "c2":
            pts.append((sp.c1, v, sp.omega1_t))
        elif sp.axis == "t":
            pts.append((sp.c1, sp.c2, sp.omega1 * v))
        else:
            if v <= 0:
                raise ConfigError("omega1 must be positive")
            pts.append((math.pi * sysm.J / v, sysm.delta / v, v * sp.omega1_t / sp.omega1))
    return axis, pts


def cmd_sweep(cfg: RunConfig, args) -> int:
    axis, pts = sweep_points(cfg)
    if cfg.sweep.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.sweep.workers) as pool:
            rows = list(pool.map(sweep_row, pts))
    else:
        rows = [sweep_row(p) for p in pts]
    meta = header_meta("sweep", cfg)
    cols = (f"sweep_{cfg.sweep.axis}", *SWEEP_COLUMNS)
    full = [(float(a), *r) for a, r in zip(axis, rows)]
    if cfg.fmt == "csv":
        text = render_csv(meta, cols, full)
    else:
        text = render_json(meta, {"columns": list(cols), "rows": [list(r) for r in full]})
    emit(cfg, text)
    return EXIT_OK


COMMANDS = {"simulate": cmd_simulate, "verify": cmd_verify, "diag": cmd_diag,
            "bounds": cmd_bounds, "sweep": cmd_sweep}


# ---------------------------------------------------------------- parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _error_record("usage", message)
        sys.exit(EXIT_CONFIG)


def _error_record(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="YAML run configuration")
    common.add_argument("--preset", help="experiment preset: i, ii or iii")
    common.add_argument("--variant", help="full, dropped or transition")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", help="csv or json")
    common.add_argument("--seed", type=int)
    common.add_argument("--tol", type=float, help="override equality and phase tolerances")

    parser = _Parser(prog="pocnot", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"pocnot {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", parents=[common], help="product-operator time series")
    p.add_argument("--points", type=int, help="number of time points (default 16)")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    for name in SUITES:
        p.add_argument(f"--{name}", action="store_true")

    p = sub.add_parser("diag", parents=[common], help="diagonalization angles")
    p.add_argument("--c1", type=float)
    p.add_argument("--c2", type=float)
    p.add_argument("--alpha", type=float, default=1.0)

    sub.add_parser("bounds", parents=[common], help="off-resonance bound table")

    p = sub.add_parser("sweep", parents=[common], help="metrics along one parameter axis")
    p.add_argument("--axis", dest="sweep_axis", choices=SWEEP_AXES)
    p.add_argument("--start", dest="sweep_start", type=float)
    p.add_argument("--stop", dest="sweep_stop", type=float)
    p.add_argument("--num", dest="sweep_num", type=int)
    p.add_argument("--c1", dest="sweep_c1", type=float)
    p.add_argument("--c2", dest="sweep_c2", type=float)
    p.add_argument("--omega1", dest="sweep_omega1", type=float)
    p.add_argument("--omega1-t", dest="sweep_omega1_t", type=float)
    p.add_argument("--workers", dest="sweep_workers", type=int)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        _error_record("config", str(exc))
        return EXIT_CONFIG
    except ValueError as exc:
        _error_record("input", str(exc))
        return EXIT_CONFIG
    except OSError as exc:
        _error_record("io", str(exc))
        return EXIT_CONFIG
