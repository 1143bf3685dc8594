"""Command-line driver: configure a quench, run it, write CSV and event artifacts.

Single runs come from flags (optionally seeded by a JSON config file; flags
win).  `--sweep file.json` runs a list of such configurations, optionally in
parallel worker processes.  The environment variable GAUGEQUENCH_OUTDIR
redirects all relative output prefixes into that directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analysis import classify, find_dqpts, find_op_zeros, find_rr_minima, report_to_json
from .basis import enumerate_basis, vacuum_state
from .hamiltonian import build_hamiltonian
from .model import ModelSpec, SpinValue, halfint_str, parse_halfint
from .observables import QuenchSampler
from .propagator import PropagatorConfig, PropagatorError, evolve

OUTDIR_ENV = "GAUGEQUENCH_OUTDIR"

DEFAULTS = {
    "mass": 0.0,
    "kappa": 0.0,
    "model": "qlm",
    "tmax": 30.0,
    "dt": 0.01,
    "krylov_dim": 30,
    "tol": 1e-12,
    "window": 0.5,
    "out": "quench",
    "components": True,
}

# Desk-scale default chain lengths; sized so a run takes minutes at most.
DEFAULT_LENGTHS = {1: 20, 2: 14, 3: 12}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    model: ModelSpec
    propagator: PropagatorConfig
    t_max: float
    output_prefix: str
    emit_components: bool = True
    coincidence_window: float = 0.5


def validate(raw: dict) -> RunConfig:
    """Normalize a raw flag/file mapping into a RunConfig, or raise ConfigError."""
    cfg = {**DEFAULTS, **{k: v for k, v in raw.items() if v is not None}}

    if "spin" not in cfg:
        raise ConfigError("--spin is required (e.g. 1/2, 1, 3/2)")
    try:
        spin = SpinValue.parse(cfg["spin"])
    except ValueError as exc:
        raise ConfigError(f"--spin: {exc}") from exc

    length = cfg.get("length")
    if length is None:
        length = DEFAULT_LENGTHS.get(spin.twice_s, 10)
    try:
        length = int(length)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"--length: {cfg['length']!r} is not an integer") from exc
    if length < 2 or length % 2 != 0:
        raise ConfigError(f"--length: must be an even integer >= 2, got {length}")

    kind = str(cfg["model"]).lower()
    if kind not in ("qlm", "tsm"):
        raise ConfigError(f"--model: must be qlm or tsm, got {cfg['model']!r}")

    vac = cfg.get("initial_vacuum")
    if vac is None:
        twice_mz = spin.twice_s
    else:
        try:
            twice_mz = parse_halfint(vac, what="initial vacuum")
        except ValueError as exc:
            raise ConfigError(f"--initial-vacuum: {exc}") from exc
        if abs(twice_mz) > spin.twice_s:
            raise ConfigError(
                f"--initial-vacuum: |m_z| = {halfint_str(abs(twice_mz))} exceeds S = {spin}"
            )
        if (twice_mz - spin.twice_s) % 2 != 0:
            raise ConfigError(
                f"--initial-vacuum: m_z = {halfint_str(twice_mz)} has the wrong parity "
                f"for S = {spin} (must differ from S by an integer)"
            )

    t_max = float(cfg["tmax"])
    if t_max < 0:
        raise ConfigError(f"--tmax: must be >= 0, got {t_max}")
    window = float(cfg["window"])
    if window < 0:
        raise ConfigError(f"--window: must be >= 0, got {window}")

    try:
        prop = PropagatorConfig(
            dt=float(cfg["dt"]),
            krylov_dim=int(cfg["krylov_dim"]),
            tol=float(cfg["tol"]),
        )
    except ValueError as exc:
        raise ConfigError(f"--dt/--krylov-dim/--tol: {exc}") from exc

    model = ModelSpec(
        spin=spin,
        length=length,
        j=1.0,
        mu=float(cfg["mass"]),
        kappa=float(cfg["kappa"]),
        kind=kind,
        twice_initial_mz=twice_mz,
    )

    prefix = str(cfg["out"])
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir:
        prefix = os.path.join(outdir, prefix)

    return RunConfig(
        model=model,
        propagator=prop,
        t_max=t_max,
        output_prefix=prefix,
        emit_components=bool(cfg["components"]),
        coincidence_window=window,
    )


def simulate(config: RunConfig):
    """Run the full pipeline; returns (basis, series, events, report)."""
    basis = enumerate_basis(config.model)
    h = build_hamiltonian(basis)
    v0 = np.zeros(basis.dim, dtype=np.complex128)
    v0[vacuum_state(basis, config.model.initial_mz)] = 1.0

    sampler = QuenchSampler(basis, h)
    if config.t_max == 0.0:
        sampler(0.0, v0)
    else:
        evolve(h, v0, config.t_max, config.propagator, sampler)
    series = sampler.series()

    dqpts = find_dqpts(series)
    zeros = find_op_zeros(series)
    minima = find_rr_minima(series)
    report = classify(
        dqpts, zeros, config.model.spin, window=config.coincidence_window
    )
    events = sorted(dqpts + zeros + minima, key=lambda e: (e.time, e.kind))
    return basis, series, events, report


def _write_json_atomic(payload: dict, path: str) -> None:
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".json.part")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(config: RunConfig) -> int:
    """Execute one quench and write <prefix>_timeseries.csv and <prefix>_events.json."""
    started = time.perf_counter()
    directory = os.path.dirname(config.output_prefix)
    if directory:
        os.makedirs(directory, exist_ok=True)

    basis, series, events, report = simulate(config)

    csv_path = config.output_prefix + "_timeseries.csv"
    json_path = config.output_prefix + "_events.json"
    series.to_csv(csv_path, components=config.emit_components)
    payload = report_to_json(events, report)
    payload["meta"] = {
        "spin": str(config.model.spin),
        "length": config.model.length,
        "mass": config.model.mu,
        "kappa": config.model.kappa,
        "model": config.model.kind,
        "initial_vacuum": str(config.model.initial_mz),
        "dt": config.propagator.dt,
        "t_max": config.t_max,
        "window": config.coincidence_window,
    }
    _write_json_atomic(payload, json_path)

    elapsed = time.perf_counter() - started
    n_dqpt = sum(1 for e in events if e.kind == "dqpt_crossing")
    n_zero = sum(1 for e in events if e.kind == "op_zero")
    n_min = sum(1 for e in events if e.kind == "rr_local_min")
    print(
        f"dim={basis.dim} rows={len(series)} runtime={elapsed:.1f}s "
        f"dqpts={n_dqpt} op_zeros={n_zero} rr_minima={n_min} -> {csv_path}, {json_path}"
    )
    return 0


def _run_from_raw(raw: dict) -> int:
    return run(validate(raw))


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gaugequench",
        description="Quench a link-model vacuum and record return-rate, flux, "
        "and condensate dynamics plus detected events.",
    )
    p.add_argument("--spin", help="link spin S, e.g. 1/2, 1, 3/2")
    p.add_argument("--length", type=int, help="even number of sites (= links)")
    p.add_argument("--mass", type=float, help="matter mass mu (default 0)")
    p.add_argument("--kappa", type=float, help="gauge coupling kappa (default 0)")
    p.add_argument("--model", choices=["qlm", "tsm"], help="Hamiltonian kind")
    p.add_argument("--initial-vacuum", dest="initial_vacuum",
                   help="m_z of the starting vacuum (default +S)")
    p.add_argument("--tmax", type=float, help="evolution time in units 1/J")
    p.add_argument("--dt", type=float, help="sample/step interval (default 0.01)")
    p.add_argument("--krylov-dim", dest="krylov_dim", type=int,
                   help="max Lanczos vectors per step (default 30)")
    p.add_argument("--tol", type=float, help="per-step residual tolerance (default 1e-12)")
    p.add_argument("--window", type=float,
                   help="coincidence window for zero/crossing pairing (default 0.5)")
    p.add_argument("--out", help="output prefix for _timeseries.csv/_events.json")
    p.add_argument("--no-components", dest="components", action="store_false",
                   default=None, help="omit per-vacuum rate columns from the CSV")
    p.add_argument("--config", help="JSON file of defaults; explicit flags override")
    p.add_argument("--sweep", help="JSON list of run configs; implies batch mode")
    p.add_argument("--threads", type=int, default=1,
                   help="parallel workers for --sweep (single runs are sequential)")
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    flags = {
        k: v
        for k, v in vars(args).items()
        if k not in ("config", "sweep", "threads") and v is not None
    }
    try:
        if args.config:
            with open(args.config) as fh:
                base = json.load(fh)
            if not isinstance(base, dict):
                raise ConfigError("--config: file must contain a JSON object")
            flags = {**base, **flags}

        if args.sweep:
            with open(args.sweep) as fh:
                entries = json.load(fh)
            if not isinstance(entries, list):
                raise ConfigError("--sweep: file must contain a JSON list of configs")
            raws = [{**flags, **entry} for entry in entries]
            configs = [validate(r) for r in raws]
            prefixes = [c.output_prefix for c in configs]
            if len(set(prefixes)) != len(prefixes):
                raise ConfigError("--sweep: output prefixes must be distinct")
            if args.threads > 1:
                with ProcessPoolExecutor(max_workers=args.threads) as pool:
                    codes = list(pool.map(_run_from_raw, raws))
            else:
                codes = [run(c) for c in configs]
            return max(codes, default=0)

        return run(validate(flags))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PropagatorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
