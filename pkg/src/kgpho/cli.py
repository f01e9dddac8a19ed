"""Command-line front end: spectrum, wavefunction, verify and sweep commands.

All physical inputs are in natural units (energies in Mc^2, lengths in
Compton wavelengths, the field as the dimensionless cyclotron energy); see
the README for SI conversion formulas.  Output is deterministic: fixed
column order, shortest round-trip float formatting (17 significant digits
maximum), LF line endings, no timestamps.  NaN/Inf never appear in data
columns; failed rows carry a status code instead.

Exit codes: 0 success, 2 configuration error, 3 at least one requested
level has no root, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys as _sys

import numpy as np

from . import oracle, spectra, wavefun
from .model import (
    NEGATIVE,
    POSITIVE,
    DegenerateProblemError,
    PhysicalSystem,
    make_state,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NO_ROOT = 3
EXIT_VERIFY = 4

_BRANCH_FLAGS = {"positive": POSITIVE, "negative": NEGATIVE, "free": spectra.FREE_FIELD}
_LIMIT_FLAGS = ("none", "nonrel", "kg-pho", "kg-ho", "nonrel-ho")


class ConfigError(Exception):
    def __init__(self, flag, message):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


def _parse_range(text, flag):
    """Inclusive integer range 'lo..hi', or a single integer."""
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError:
        raise ConfigError(flag, f"expected INT or LO..HI, got {text!r}") from None
    if hi < lo:
        raise ConfigError(flag, f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _fmt(value):
    """Deterministic cell text: shortest round-trip decimals, empty for None."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            raise ValueError("non-finite value in output")
        return repr(value)
    return str(value)


def _json_safe(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            raise ValueError("non-finite value in output")
        return value
    return value


def _write_table(cfg, columns, rows, extra_comment=None):
    """Serialize rows (list of dicts) as CSV or JSON to cfg.out or stdout."""
    if cfg.format == "csv":
        buf = []
        out = _StringIOWriter(buf)
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row.get(c)) for c in columns])
        if extra_comment:
            buf.append(f"# {extra_comment}\n")
        text = "".join(buf)
    else:
        payload = {
            "config": cfg.echo,
            "levels": [{c: _json_safe(row.get(c)) for c in columns} for row in rows],
        }
        if extra_comment:
            payload["meta_comment"] = extra_comment
        text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    _emit(cfg.out, text)


class _StringIOWriter:
    def __init__(self, buf):
        self.buf = buf

    def write(self, s):
        self.buf.append(s)


def _emit(path, text):
    if path in (None, "-"):
        _sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _build_system(args):
    try:
        return PhysicalSystem(
            v0=args.v0, rho0=args.r0, b_field=args.b, flux_xi=args.xi
        )
    except ValueError as exc:
        flag = {"v0": "--v0", "rho0": "--r0", "b_field": "--b"}.get(
            str(exc).split()[0], "--v0/--r0/--b/--xi"
        )
        raise ConfigError(flag, str(exc)) from None


def _validate_limit(args):
    limit = None if args.limit == "none" else args.limit
    if limit in ("kg-pho",) and (args.b != 0.0 or args.xi != 0.0):
        raise ConfigError("--limit", "kg-pho requires --b 0 and --xi 0")
    if limit in ("kg-pho", "kg-ho", "nonrel-ho") and args.v0 <= 0.0:
        raise ConfigError("--v0", f"--limit {limit} requires v0 > 0")
    if limit == "nonrel" and args.v0 == 0.0 and args.b == 0.0:
        raise ConfigError("--limit", "nonrel requires v0 > 0 or b > 0")
    return limit


class _RunConfig(argparse.Namespace):
    """Parsed flags plus the deterministic config echo for JSON outputs."""

    @property
    def echo(self):
        keys = (
            "command", "v0", "r0", "b", "xi", "strict", "branch", "limit",
            "n", "m", "format", "verify", "tol", "grid_n", "r_max",
            "beta", "gamma", "samples", "vary", "start", "stop", "steps",
        )
        return {k: getattr(self, k) for k in keys if hasattr(self, k)}


def _level_row(state, level=None, status="ok", extra=None):
    row = {
        "branch": level.branch if level else None,
        "n": state.n,
        "m": state.m,
        "m_eff": float(state.m_eff),
        "energy": level.energy if level else None,
        "residual": level.residual if level else None,
        "principal": level.principal if level else None,
        "oracle_dev": level.oracle_dev if level else None,
        "status": status,
    }
    if extra:
        row.update(extra)
    return row


_SPECTRUM_COLUMNS = [
    "branch", "n", "m", "m_eff", "energy", "residual", "principal", "oracle_dev", "status",
]


def _solve_rows(cfg, system, states, branch, limit, with_oracle, need_ratio=False):
    rows = []
    missing = 0
    for state in states:
        try:
            level = spectra.compute_level(system, state, branch=branch, limit=limit)
        except (DegenerateProblemError, LookupError) as exc:
            status = "degenerate" if isinstance(exc, DegenerateProblemError) else "no_root"
            rows.append(_level_row(state, status=status,
                                   extra={"convergence_ratio": None} if need_ratio else None))
            missing += 1
            continue
        extra = None
        status = "ok"
        if with_oracle:
            try:
                check = oracle.oracle_check(
                    system, state, level, n_points=cfg.grid_n, r_max=cfg.r_max
                )
            except ValueError:
                status = "oracle_error"
                missing += 1
            else:
                level.oracle_dev = check.deviation
                if need_ratio:
                    ratio = check.convergence_ratio
                    extra = {"convergence_ratio": ratio if math.isfinite(ratio) else None}
        if extra is None and need_ratio:
            extra = {"convergence_ratio": None}
        rows.append(_level_row(state, level, status=status, extra=extra))
    return rows, missing


def run_spectrum(cfg):
    system = _build_system(cfg)
    limit = _validate_limit(cfg)
    branch = _BRANCH_FLAGS[cfg.branch]
    ns = _parse_range(cfg.n, "--n")
    ms = _parse_range(cfg.m, "--m")
    states = [make_state(n, m, cfg.xi, strict=cfg.strict) for n in ns for m in ms]
    if not states:
        raise ConfigError("--n/--m", "empty state set")
    rows, missing = _solve_rows(cfg, system, states, branch, limit, cfg.verify)
    _write_table(cfg, _SPECTRUM_COLUMNS, rows)
    return EXIT_NO_ROOT if missing else EXIT_OK


def run_verify(cfg):
    system = _build_system(cfg)
    limit = _validate_limit(cfg)
    branch = _BRANCH_FLAGS[cfg.branch]
    ns = _parse_range(cfg.n, "--n")
    ms = _parse_range(cfg.m, "--m")
    states = [make_state(n, m, cfg.xi, strict=cfg.strict) for n in ns for m in ms]
    if not states:
        raise ConfigError("--n/--m", "empty state set")
    rows, missing = _solve_rows(
        cfg, system, states, branch, limit, with_oracle=True, need_ratio=True
    )
    columns = _SPECTRUM_COLUMNS[:-1] + ["convergence_ratio", "status"]
    _write_table(cfg, columns, rows)
    failed = [r for r in rows if r["oracle_dev"] is not None and r["oracle_dev"] > cfg.tol]
    if failed:
        return EXIT_VERIFY
    return EXIT_NO_ROOT if missing else EXIT_OK


def _simpson(y, h):
    """Composite Simpson on a uniform grid (trapezoid for a trailing odd cell)."""
    n = len(y) - 1
    if n < 1:
        return 0.0
    total = 0.0
    last = n if n % 2 == 0 else n - 1
    if last >= 2:
        total += h / 3.0 * (
            y[0] + y[last] + 4.0 * sum(y[1:last:2]) + 2.0 * sum(y[2:last - 1:2])
        )
    if last != n:
        total += 0.5 * h * (y[-2] + y[-1])
    return total


def run_wavefunction(cfg):
    if cfg.samples < 2:
        raise ConfigError("--samples", f"need >= 2, got {cfg.samples}")
    if (cfg.beta is None) != (cfg.gamma is None):
        raise ConfigError("--beta/--gamma", "give both or neither")
    if cfg.beta is not None:
        if cfg.beta <= 0 or cfg.gamma <= 0:
            raise ConfigError("--beta/--gamma", "must be > 0")
        n = _parse_range(cfg.n, "--n")
        if len(n) != 1:
            raise ConfigError("--n", "wavefunction takes a single n")
        w = wavefun.radial_wavefunction(n[0], cfg.beta, cfg.gamma)
    else:
        system = _build_system(cfg)
        limit = _validate_limit(cfg)
        ns = _parse_range(cfg.n, "--n")
        ms = _parse_range(cfg.m, "--m")
        if len(ns) != 1 or len(ms) != 1:
            raise ConfigError("--n/--m", "wavefunction takes a single (n, m)")
        state = make_state(ns[0], ms[0], cfg.xi, strict=cfg.strict)
        try:
            level = spectra.compute_level(
                system, state, branch=_BRANCH_FLAGS[cfg.branch], limit=limit
            )
        except (DegenerateProblemError, LookupError) as exc:
            print(f"error: no solvable level: {exc}", file=_sys.stderr)
            return EXIT_NO_ROOT
        beta, gamma = wavefun.case_constants(system, state, level)
        w = wavefun.radial_wavefunction(state.n, beta, gamma)

    r_max = cfg.r_max if cfg.r_max is not None else wavefun.support_radius(w)
    if r_max <= 0:
        raise ConfigError("--r-max", "must be > 0")
    r = np.linspace(0.0, r_max, cfg.samples)
    g = wavefun.eval_radial(w, r)
    weight = g * g * r
    norm = _simpson(list(weight), r[1] - r[0]) if cfg.samples > 1 else 0.0

    meta = f"norm_constant={_fmt(w.norm)} integrated_norm={_fmt(float(norm))}"
    if cfg.format == "csv":
        rows = [
            {"r": float(ri), "g": float(gi), "psi2_2pi_r": float(wi)}
            for ri, gi, wi in zip(r, g, weight)
        ]
        _write_table(cfg, ["r", "g", "psi2_2pi_r"], rows, extra_comment=meta)
    else:
        payload = {
            "config": cfg.echo,
            "samples": [
                {"r": float(ri), "g": float(gi), "psi2_2pi_r": float(wi)}
                for ri, gi, wi in zip(r, g, weight)
            ],
            "meta": {"norm_constant": w.norm, "integrated_norm": float(norm)},
        }
        _emit(cfg.out, json.dumps(payload, indent=2, allow_nan=False) + "\n")
    return EXIT_OK


_SWEEP_COLUMNS = [
    "param", "value", "branch", "n", "m", "m_eff", "energy", "residual",
    "principal", "delta_e", "status",
]


def run_sweep(cfg):
    system = _build_system(cfg)
    limit = _validate_limit(cfg)
    branch = _BRANCH_FLAGS[cfg.branch]
    if cfg.steps < 2:
        raise ConfigError("--steps", f"need >= 2, got {cfg.steps}")
    if not (math.isfinite(cfg.start) and math.isfinite(cfg.stop)):
        raise ConfigError("--start/--stop", "must be finite")
    ns = _parse_range(cfg.n, "--n")
    ms = _parse_range(cfg.m, "--m")
    states = [make_state(n, m, cfg.xi, strict=cfg.strict) for n in ns for m in ms]
    vary = {"b": "b_field", "xi": "flux_xi", "v0": "v0"}[cfg.vary]
    try:
        sweep = spectra.sweep_levels(
            system, vary, (cfg.start, cfg.stop, cfg.steps), states,
            branch=branch, limit=limit,
        )
    except ValueError as exc:
        raise ConfigError("--vary", str(exc)) from None
    rows = []
    ok = 0
    for sr in sweep:
        row = _level_row(sr.state, sr.level, status=sr.status)
        del row["oracle_dev"]
        row["param"] = sr.param
        row["value"] = sr.value
        row["delta_e"] = sr.delta_e
        rows.append(row)
        if sr.status == "ok":
            ok += 1
    _write_table(cfg, _SWEEP_COLUMNS, rows)
    return EXIT_OK if ok else EXIT_NO_ROOT


def _add_system_flags(p):
    p.add_argument("--v0", type=float, default=1.0,
                   help="well depth V0 in Mc^2 units (default 1)")
    p.add_argument("--r0", type=float, default=1.0,
                   help="well radius r0 in Compton wavelengths (default 1)")
    p.add_argument("--b", type=float, default=0.0,
                   help="dimensionless cyclotron energy omega_c = eB/(Mc) (default 0)")
    p.add_argument("--xi", type=float, default=0.0,
                   help="solenoid flux in flux quanta (default 0)")
    p.add_argument("--strict", action="store_true",
                   help="warn when m' or xi leaves the integer m' >= 1 regime")


def _add_state_flags(p, n_default="0", m_default="1"):
    p.add_argument("--n", default=n_default, help="radial quantum number(s), INT or LO..HI")
    p.add_argument("--m", default=m_default, help="magnetic quantum number(s), INT or LO..HI")
    p.add_argument("--branch", choices=sorted(_BRANCH_FLAGS), default="positive")
    p.add_argument("--limit", choices=_LIMIT_FLAGS, default="none",
                   help="evaluate a limiting-case formula instead of the full solve")


def _add_output_flags(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")


def _add_oracle_flags(p):
    p.add_argument("--tol", type=float, default=1e-5,
                   help="oracle deviation tolerance (default 1e-5)")
    p.add_argument("--grid-n", dest="grid_n", type=int, default=None,
                   help="override the oracle grid size")
    p.add_argument("--r-max", dest="r_max", type=float, default=None,
                   help="override the oracle / sampling box radius")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="kgpho",
        description="Bound states of a planar relativistic particle in a "
                    "pseudoharmonic well under magnetic and flux fields. "
                    "All inputs in natural units (hbar = c = M = e = 1).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="solve energy levels")
    _add_system_flags(p)
    _add_state_flags(p)
    _add_output_flags(p)
    _add_oracle_flags(p)
    p.add_argument("--verify", action="store_true",
                   help="also fill the oracle deviation column")
    p.set_defaults(func=run_spectrum)

    p = sub.add_parser("wavefunction", help="sample a normalized radial profile")
    _add_system_flags(p)
    _add_state_flags(p)
    _add_output_flags(p)
    p.add_argument("--beta", type=float, default=None,
                   help="explicit radial exponent (with --gamma, skips solving)")
    p.add_argument("--gamma", type=float, default=None,
                   help="explicit gaussian width parameter")
    p.add_argument("--samples", type=int, default=2001)
    p.add_argument("--r-max", dest="r_max", type=float, default=None)
    p.set_defaults(func=run_wavefunction)

    p = sub.add_parser("verify", help="check levels against the finite-difference oracle")
    _add_system_flags(p)
    _add_state_flags(p)
    _add_output_flags(p)
    _add_oracle_flags(p)
    p.set_defaults(func=run_verify)

    p = sub.add_parser("sweep", help="solve levels across a parameter grid")
    _add_system_flags(p)
    _add_state_flags(p, m_default="0..1")
    _add_output_flags(p)
    p.add_argument("--vary", choices=("b", "xi", "v0"), required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--steps", type=int, default=5)
    p.set_defaults(func=run_sweep)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv, namespace=_RunConfig())
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error ({exc.flag}): {exc}", file=_sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    _sys.exit(main())
