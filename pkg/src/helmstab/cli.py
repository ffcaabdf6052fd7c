"""Config-driven command line: solve, certify, sharpness, sweep, lift, oracle.

Problems are described by a single JSON document; solution samples go to CSV
(columns x,y,re,im) and certificate/sharpness/sweep results to JSON reports
with sorted keys.  Exit codes: 0 success, 2 failing certificate or sharpness
mismatch, 1 usage/config errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import eigenbasis
from .bounds import (
    SHARPNESS_IDS,
    TheoremId,
    certify,
    sharpness_case,
    sweep,
)
from .eigenbasis import BasisFamily, BoundaryOperator, Spectrum, project
from .modal1d import Side, choose_lifting_family, EigenvalueFamily
from .oracle import compare, fdm_energy, fdm_solve
from .solver import (
    BoundaryConfig,
    Provenance,
    SeriesSolution,
    energy_parseval,
    energy_quadrature,
    evaluate,
    lift_horizontal_data,
    residual_traces,
    solve_source,
    solve_vertical_data,
    superpose,
)


class ConfigError(ValueError):
    """Malformed run configuration; message carries the field path."""


_OPERATORS = {
    "dirichlet": BoundaryOperator.DIRICHLET,
    "neumann": BoundaryOperator.NEUMANN,
    "impedance": BoundaryOperator.IMPEDANCE,
}

_SIDES = {
    "bottom": Side.BOTTOM,
    "right": Side.RIGHT,
    "top": Side.TOP,
    "left": Side.LEFT,
}

_THEOREM_ALIASES = {
    "T1": TheoremId.T1_G4,
    "T2_IMP": TheoremId.T2_G2_IMP,
    "T2_NEU": TheoremId.T2_G2_NEU,
    "T2_DIR": TheoremId.T2_G2_DIR,
    "TF": TheoremId.TF_SOURCE,
    "T3_NEU": TheoremId.T3_LIFT_NEU,
    "T3_DIR": TheoremId.T3_LIFT_DIR,
}


def mode_cap() -> int:
    """Active mode cap; HELMHOLTZ_MAX_MODES may lower the built-in cap."""
    cap = eigenbasis.MAX_MODE
    env = os.environ.get("HELMHOLTZ_MAX_MODES")
    if env is not None:
        try:
            cap = min(cap, int(env))
        except ValueError as exc:
            raise ConfigError(f"HELMHOLTZ_MAX_MODES: not an integer ({env!r})") from exc
    return cap


@dataclass(frozen=True)
class RunConfig:
    """One solvable problem: operators, data, source, discretization knobs."""

    k: float
    config: BoundaryConfig
    data: dict
    source: Optional[list]
    truncation: Optional[int]
    grid: int
    seed: int
    outputs: dict


def parse_run_config(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config: expected a JSON object")
    try:
        k = float(doc["k"])
    except KeyError:
        raise ConfigError("config.k: missing") from None
    except (TypeError, ValueError):
        raise ConfigError(f"config.k: not a number ({doc.get('k')!r})") from None
    if not (k > 0 and math.isfinite(k)):
        raise ConfigError(f"config.k: must be a positive finite number, got {k}")

    bdoc = doc.get("boundary")
    if not isinstance(bdoc, dict):
        raise ConfigError("config.boundary: expected an object with the four sides")
    ops = {}
    for name in ("bottom", "right", "top", "left"):
        raw = bdoc.get(name, "impedance" if name == "left" else None)
        if raw is None:
            raise ConfigError(f"config.boundary.{name}: missing")
        try:
            ops[name] = _OPERATORS[str(raw).lower()]
        except KeyError:
            raise ConfigError(
                f"config.boundary.{name}: unknown operator {raw!r} "
                f"(expected one of {sorted(_OPERATORS)})"
            ) from None
    try:
        config = BoundaryConfig(ops["bottom"], ops["right"], ops["top"], ops["left"])
    except ValueError as exc:
        raise ConfigError(f"config.boundary: {exc}") from None

    cap = mode_cap()
    data = {}
    for name, raw in (doc.get("data") or {}).items():
        if name not in _SIDES:
            raise ConfigError(f"config.data.{name}: unknown side")
        data[_SIDES[name]] = _parse_datum(f"config.data.{name}", raw, cap)

    source = None
    if doc.get("source") is not None:
        source = _parse_source(f"config.source", doc["source"], cap)

    truncation = doc.get("truncation")
    if truncation is not None:
        truncation = int(truncation)
        if truncation < 0 or truncation > cap:
            raise ConfigError(f"config.truncation: must lie in [0, {cap}]")
    grid = int(doc.get("grid", 33))
    if grid < 2:
        raise ConfigError("config.grid: must be at least 2")
    seed = int(doc.get("seed", 0))
    outputs = doc.get("outputs") or {}
    if not isinstance(outputs, dict):
        raise ConfigError("config.outputs: expected an object")
    return RunConfig(k=k, config=config, data=data, source=source,
                     truncation=truncation, grid=grid, seed=seed, outputs=outputs)


def _parse_datum(path: str, raw, cap: int):
    """A datum is a [n, re, im] triple list or a named analytic form."""
    if isinstance(raw, str):
        if raw.startswith("mode:"):
            try:
                n = int(raw.split(":", 1)[1])
            except ValueError:
                raise ConfigError(f"{path}: bad mode index in {raw!r}") from None
            if n < 0 or n > cap:
                raise ConfigError(f"{path}: mode {n} outside [0, {cap}]")
            return ("mode", n)
        if raw.startswith("constant:"):
            parts = raw.split(":", 1)[1].split(",")
            try:
                re_part = float(parts[0])
                im_part = float(parts[1]) if len(parts) > 1 else 0.0
            except (ValueError, IndexError):
                raise ConfigError(f"{path}: bad constant datum {raw!r}") from None
            return ("constant", complex(re_part, im_part))
        raise ConfigError(f"{path}: unknown named datum {raw!r}")
    if isinstance(raw, list):
        triples = []
        for i, item in enumerate(raw):
            if not (isinstance(item, list) and len(item) == 3):
                raise ConfigError(f"{path}[{i}]: expected an [index, re, im] triple")
            n = int(item[0])
            if n < 0 or n > cap:
                raise ConfigError(f"{path}[{i}]: mode {n} outside [0, {cap}]")
            triples.append((n, complex(float(item[1]), float(item[2]))))
        return ("triples", triples)
    raise ConfigError(f"{path}: expected a triple list or a named datum string")


def _parse_source(path: str, raw, cap: int):
    if isinstance(raw, str):
        if raw.startswith("mode:"):
            try:
                n = int(raw.split(":", 1)[1])
            except ValueError:
                raise ConfigError(f"{path}: bad mode index in {raw!r}") from None
            if n > cap:
                raise ConfigError(f"{path}: mode {n} outside [0, {cap}]")
            return [(n, lambda x: np.ones_like(np.asarray(x, dtype=float)))]
        raise ConfigError(f"{path}: unknown named source {raw!r}")
    raise ConfigError(f"{path}: expected a named source string")


def _datum_spectrum(parsed, family: BasisFamily, depth: int) -> Spectrum:
    kind, payload = parsed
    if kind == "triples":
        return Spectrum.from_pairs(family, payload)
    if kind == "mode":
        return Spectrum.from_pairs(family, [(payload, 1.0)])
    return project(lambda t: payload, family, depth)


def _assemble(run: RunConfig) -> SeriesSolution:
    """Full pipeline: lift horizontal data, subtract traces, solve vertical."""
    cfg, k = run.config, run.k
    vfam = cfg.vertical_family()
    depth = run.truncation if run.truncation is not None else (
        2 * math.ceil(k / math.pi) + 32
    )
    g_right = _datum_spectrum(run.data[Side.RIGHT], vfam, depth) if Side.RIGHT in run.data \
        else Spectrum.zero(vfam)
    g_left = _datum_spectrum(run.data[Side.LEFT], vfam, depth) if Side.LEFT in run.data \
        else Spectrum.zero(vfam)

    parts: list[SeriesSolution] = []
    for side in (Side.BOTTOM, Side.TOP):
        if side not in run.data:
            continue
        choice = choose_lifting_family(k, cfg.bottom, cfg.top)
        hfam = (BasisFamily.COS_INT if choice.family is EigenvalueFamily.INTEGER
                else BasisFamily.COS_HALF)
        g = _datum_spectrum(run.data[side], hfam, depth)
        aux = lift_horizontal_data(g, side, cfg, k, run.truncation)
        g_right, g_left = residual_traces(aux, g_right, g_left)
        parts.append(aux)
    if len(g_right):
        parts.append(solve_vertical_data(cfg, Side.RIGHT, g_right, k, run.truncation))
    if len(g_left):
        parts.append(solve_vertical_data(cfg, Side.LEFT, g_left, k, run.truncation))
    if run.source is not None:
        parts.append(solve_source(run.source, cfg, k, run.truncation))
    if not parts:
        parts.append(
            SeriesSolution(cfg.bare(), k, 0, Provenance.VERTICAL_DATA, ())
        )
    return parts[0] if len(parts) == 1 else superpose(parts)


# --------------------------------------------------------------------------
# output helpers
# --------------------------------------------------------------------------


def _write_csv(path: str, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y", "re", "im"])
        writer.writerows(rows)


def _write_report(path: Optional[str], payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path:
        Path(path).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _sample_rows(u: SeriesSolution, grid: int):
    t = np.linspace(0.0, 1.0, grid)
    X, Y = np.meshgrid(t, t, indexing="ij")
    pts = np.column_stack([X.ravel(), Y.ravel()])
    out = evaluate(u, pts)
    return [
        [f"{p[0]:.17g}", f"{p[1]:.17g}", f"{v.real:.17g}", f"{v.imag:.17g}"]
        for p, (v, _) in zip(pts, out)
    ]


def _energy_payload(u: SeriesSolution, grid: int) -> dict:
    qr = energy_quadrature(u, max(17, grid))
    payload = {
        "quadrature": {"grad": qr.grad_norm, "l2": qr.l2_norm, "energy": qr.energy},
        "grid": max(17, grid),
    }
    if u.provenance is not Provenance.SUPERPOSITION:
        pr = energy_parseval(u)
        payload["parseval"] = {"grad": pr.grad_norm, "l2": pr.l2_norm, "energy": pr.energy}
    return payload


def _norms_payload(report) -> dict:
    def clean(v):
        return None if (isinstance(v, float) and math.isnan(v)) else v

    return {
        "l2": clean(report.l2),
        "fractional_half": clean(report.fractional_half),
        "fractional_three_half": clean(report.fractional_three_half),
    }


def _certificate_payload(cert) -> dict:
    return {
        "theorem": cert.theorem.value,
        "k": cert.k,
        "lhs": cert.lhs,
        "rhs": cert.rhs,
        "ratio": cert.ratio,
        "pass": cert.passed,
        "norms": _norms_payload(cert.datum_norms),
    }


def _load_config(path: str) -> RunConfig:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from None
    return parse_run_config(doc)


def _theorem(tag: str) -> TheoremId:
    norm = tag.strip().upper()
    if norm in _THEOREM_ALIASES:
        return _THEOREM_ALIASES[norm]
    try:
        return TheoremId(norm)
    except ValueError:
        raise ConfigError(
            f"unknown theorem {tag!r}; expected one of "
            f"{sorted(t.value for t in TheoremId)} or aliases {sorted(_THEOREM_ALIASES)}"
        ) from None


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def _cmd_solve(args) -> int:
    run = _load_config(args.config)
    u = _assemble(run)
    csv_path = args.csv or run.outputs.get("csv")
    if csv_path:
        _write_csv(csv_path, _sample_rows(u, run.grid))
    payload = {
        "command": "solve",
        "k": run.k,
        "truncation": u.truncation,
        "terms": len(u.terms),
        "grid": run.grid,
        "seed": run.seed,
        "energy": _energy_payload(u, run.grid),
        "csv": csv_path,
    }
    _write_report(args.report or run.outputs.get("report"), payload)
    return 0


def _cmd_certify(args) -> int:
    run = _load_config(args.config)
    theorem = _theorem(args.theorem)
    if theorem is TheoremId.TF_SOURCE:
        data = run.source or []
    else:
        side = {
            TheoremId.T1_G4: Side.LEFT,
            TheoremId.T2_G2_IMP: Side.RIGHT,
            TheoremId.T2_G2_NEU: Side.RIGHT,
            TheoremId.T2_G2_DIR: Side.RIGHT,
            TheoremId.T3_LIFT_NEU: Side.BOTTOM,
            TheoremId.T3_LIFT_DIR: Side.BOTTOM,
        }[theorem]
        if side in (Side.LEFT, Side.RIGHT):
            family = run.config.vertical_family()
        else:
            choice = choose_lifting_family(run.k, run.config.bottom, run.config.top)
            family = (BasisFamily.COS_INT if choice.family is EigenvalueFamily.INTEGER
                      else BasisFamily.COS_HALF)
        parsed = run.data.get(side)
        depth = run.truncation if run.truncation is not None else 64
        data = _datum_spectrum(parsed, family, depth) if parsed is not None \
            else Spectrum.zero(family)
    cert = certify(theorem, run.config, data, run.k, run.truncation)
    payload = _certificate_payload(cert)
    payload["seed"] = run.seed
    _write_report(args.report or run.outputs.get("report"), payload)
    return 0 if cert.passed else 2


def _cmd_sharpness(args) -> int:
    family = BasisFamily(args.family)
    case = sharpness_case(args.case, args.n, family)
    if case.data_side in (Side.LEFT, Side.RIGHT):
        sol = solve_vertical_data(case.config, case.data_side, case.datum, case.k)
    else:
        sol = lift_horizontal_data(case.datum, case.data_side, case.config, case.k)
    rep = energy_parseval(sol)
    if case.expected_energy is not None:
        expected = case.expected_energy
        computed = rep.energy
        rel = abs(computed - expected) / expected
        ok = rel <= 1e-8
        extra = {}
    else:
        expected = case.expected_energy_sq
        computed = rep.grad_norm**2 + case.k**2 * rep.l2_norm**2
        rel = abs(computed - expected) / expected
        ok = rel <= 1e-8 and rep.energy >= case.lower_bound
        extra = {"lower_bound": case.lower_bound, "energy": rep.energy}
    payload = {
        "command": "sharpness",
        "case": case.case_id,
        "n": case.n,
        "family": family.value,
        "k": case.k,
        "theorem": case.theorem.value,
        "expected": expected,
        "computed": computed,
        "relative_difference": rel,
        "pass": ok,
        **extra,
    }
    _write_report(args.report, payload)
    return 0 if ok else 2


def _cmd_sweep(args) -> int:
    theorem = _theorem(args.theorem)
    if theorem is TheoremId.TF_SOURCE:
        k_grid = [float(v) for v in (args.k_list.split(",") if args.k_list else
                                     ("0.5", "1", "5", "20"))]
    elif args.k_list:
        k_grid = [float(v) for v in args.k_list.split(",")]
    else:
        k_grid = list(np.geomspace(args.k_min, args.k_max, args.k_count))
    report = sweep(theorem, k_grid, modes=args.modes, trials=args.trials,
                   seed=args.seed, collect_failures=True)
    payload = {
        "command": "sweep",
        "theorem": theorem.value,
        "k_grid": list(report.k_grid),
        "modes": report.modes,
        "trials": report.trials,
        "seed": report.seed,
        "certificates": report.certificates,
        "all_pass": report.all_passed,
        "max_ratio": report.max_ratio,
        "argmax_k": report.argmax_k,
        "argmax_trial": report.argmax_trial,
        "failures": [_certificate_payload(c) for c in report.failures],
    }
    _write_report(args.report, payload)
    return 0 if report.all_passed else 2


def _cmd_lift(args) -> int:
    run = _load_config(args.config)
    sides = [s for s in (Side.BOTTOM, Side.TOP) if s in run.data]
    if not sides:
        raise ConfigError("config.data: lift needs a bottom or top datum")
    cfg, k = run.config, run.k
    choice = choose_lifting_family(k, cfg.bottom, cfg.top)
    hfam = (BasisFamily.COS_INT if choice.family is EigenvalueFamily.INTEGER
            else BasisFamily.COS_HALF)
    vfam = cfg.vertical_family()
    depth = run.truncation if run.truncation is not None else (
        2 * math.ceil(k / math.pi) + 32
    )
    g_right = _datum_spectrum(run.data[Side.RIGHT], vfam, depth) if Side.RIGHT in run.data \
        else Spectrum.zero(vfam)
    g_left = _datum_spectrum(run.data[Side.LEFT], vfam, depth) if Side.LEFT in run.data \
        else Spectrum.zero(vfam)
    auxes = []
    for side in sides:
        g = _datum_spectrum(run.data[side], hfam, depth)
        aux = lift_horizontal_data(g, side, cfg, k, run.truncation)
        g_right, g_left = residual_traces(aux, g_right, g_left)
        auxes.append(aux)
    u = auxes[0] if len(auxes) == 1 else superpose(auxes)
    csv_path = args.csv or run.outputs.get("csv")
    if csv_path:
        _write_csv(csv_path, _sample_rows(u, run.grid))
    payload = {
        "command": "lift",
        "k": k,
        "eigenvalue_family": choice.family.value,
        "case_index": choice.case_index,
        "d0": choice.d0,
        "d1": choice.d1,
        "residual_right": [[n, c.real, c.imag] for n, c in g_right],
        "residual_left": [[n, c.real, c.imag] for n, c in g_left],
        "energy": _energy_payload(u, run.grid),
        "csv": csv_path,
        "seed": run.seed,
    }
    _write_report(args.report or run.outputs.get("report"), payload)
    return 0


def _cmd_oracle(args) -> int:
    run = _load_config(args.config)
    u = _assemble(run)
    n = args.n or max(run.grid, 65)
    vfam = run.config.vertical_family()
    depth = run.truncation if run.truncation is not None else 64
    data = {}
    for side, parsed in run.data.items():
        if side in (Side.LEFT, Side.RIGHT):
            data[side] = _datum_spectrum(parsed, vfam, depth)
        else:
            choice = choose_lifting_family(run.k, run.config.bottom, run.config.top)
            hfam = (BasisFamily.COS_INT if choice.family is EigenvalueFamily.INTEGER
                    else BasisFamily.COS_HALF)
            data[side] = _datum_spectrum(parsed, hfam, depth)
    fsrc = None
    if run.source is not None:
        profiles = dict(run.source)
        family = run.config.vertical_family()

        def fsrc(x, y, profiles=profiles, family=family):
            return sum(
                complex(np.asarray(fx(x)).item()) * float(eigenbasis.basis_value(family, m, y))
                for m, fx in profiles.items()
            )

    gs = fdm_solve(run.config, data, fsrc, run.k, n)
    comparison = compare(u, gs)
    payload = {
        "command": "oracle",
        "k": run.k,
        "grid_n": n,
        "h": gs.h,
        "max_abs": comparison.max_abs,
        "rel_l2": comparison.rel_l2,
        "fdm_energy": fdm_energy(gs).energy,
        "seed": run.seed,
    }
    _write_report(args.report or run.outputs.get("report"), payload)
    return 0


_SELFTEST_CONFIG = {
    "k": 5.0,
    "boundary": {"bottom": "neumann", "right": "impedance",
                 "top": "neumann", "left": "impedance"},
    "data": {"left": [[0, 0.0, -10.0]]},
    "truncation": 24,
    "grid": 33,
    "seed": 0,
    "outputs": {},
}


def _cmd_selftest(args) -> int:
    if args.dump_config:
        Path(args.dump_config).write_text(
            json.dumps(_SELFTEST_CONFIG, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        print(f"wrote {args.dump_config}")
        return 0
    checks: list[tuple[str, bool]] = []
    # basis orthonormality spot check
    t, w = eigenbasis.quadrature_rule(16)
    z3 = eigenbasis.basis_value(BasisFamily.SIN_INT, 3, t)
    z5 = eigenbasis.basis_value(BasisFamily.SIN_INT, 5, t)
    checks.append(("orthonormality", abs(np.sum(w * z3 * z3) - 1) < 1e-12
                   and abs(np.sum(w * z3 * z5)) < 1e-12))
    # plane wave
    run = parse_run_config(_SELFTEST_CONFIG)
    u = _assemble(run)
    out = evaluate(u, [(0.5, 0.25)])[0][0]
    checks.append(("plane-wave value", abs(out - np.exp(1j * 5.0 * 0.5)) < 1e-10))
    rep = energy_parseval(u)
    checks.append(("plane-wave energy", abs(rep.energy - 10.0) < 1e-9))
    # one certificate and one sharpness case
    g = Spectrum.from_pairs(BasisFamily.COS_INT, [(0, -10j)])
    cert = certify(TheoremId.T1_G4, run.config, g, 5.0)
    checks.append(("certificate", cert.passed))
    case = sharpness_case("ex2.3-2", 2)
    sol = solve_vertical_data(case.config, case.data_side, case.datum, case.k)
    rel = abs(energy_parseval(sol).energy - case.expected_energy) / case.expected_energy
    checks.append(("sharpness", rel < 1e-9))
    for name, ok in checks:
        print(f"{name}: {'ok' if ok else 'FAIL'}")
    return 0 if all(ok for _, ok in checks) else 2


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """argparse that exits 1 (not 2) on usage errors; 2 means a failed check."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="helmstab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve the configured problem")
    p.add_argument("--config", required=True)
    p.add_argument("--csv")
    p.add_argument("--report")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("certify", help="check one stability bound")
    p.add_argument("--theorem", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--report")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("sharpness", help="reproduce one sharpness example")
    p.add_argument("--case", required=True, choices=SHARPNESS_IDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", default="sin-int",
                   choices=[f.value for f in BasisFamily])
    p.add_argument("--report")
    p.set_defaults(func=_cmd_sharpness)

    p = sub.add_parser("sweep", help="randomized certification sweep")
    p.add_argument("--theorem", required=True)
    p.add_argument("--k-min", type=float, default=0.05)
    p.add_argument("--k-max", type=float, default=200.0)
    p.add_argument("--k-count", type=int, default=64)
    p.add_argument("--k-list", help="comma-separated explicit k grid")
    p.add_argument("--modes", type=int, default=64)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("lift", help="lift horizontal data, report residual traces")
    p.add_argument("--config", required=True)
    p.add_argument("--csv")
    p.add_argument("--report")
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("oracle", help="finite-difference cross-validation")
    p.add_argument("--config", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--report")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("selftest", help="quick internal consistency battery")
    p.add_argument("--dump-config", help="write a canonical example config")
    p.set_defaults(func=_cmd_selftest)

    return parser


def run(argv) -> int:
    """Parse argv (without the program name) and execute one subcommand."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"helmstab: config error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"helmstab: error: {exc}", file=sys.stderr)
        return 1


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    raise SystemExit(main())
