"""Command-line front end emitting plot-ready tables and reports.

Subcommands:

  fringe    single-fringe probability over a phase scan
  fisher    Fisher-information profile with a deterministic peak report
  scaling   benchmark table (SNL, best NOON fringe, HB value) versus N
  simulate  seeded Monte Carlo counts from a JSON plan
  estimate  fit / direct-Fisher / maximum-likelihood reports from counts

Angles cross this boundary in degrees; the library core works in
radians. Numbers are written with 12 significant digits in both output
formats, so the CSV and JSON emissions of one run parse to identical
values. Exit status is 0 on success, 2 for usage problems, and 3 when a
physics constraint is violated (odd N for an HB state, outcome photon
totals that do not match N, and the like). The environment variable
FRINGELAB_THREADS caps how many worker threads phase scans may use;
output ordering never depends on it.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .detection import DetectorArrayConfig
from .estimation import (
    ExperimentPlan,
    direct_fisher_from_data,
    mle_phase,
    simulate_counts,
    snl_comparison,
)
from .fisher import (
    find_peak,
    full_fisher,
    model_fisher_sigma,
    noon_asymptotic,
    scaling_table,
    single_fringe_fisher,
    single_fringe_fisher_model,
)
from .fock import OutcomePattern, PhysicsError
from .fringes import (
    DEFAULT_FRINGE_PEAK,
    CountRecord,
    FringeModel,
    affine_from_visibility,
    apply_model,
    fit_fringe,
    ideal_model,
    noon_cosine_model,
)
from .states import build_state


class UsageError(Exception):
    """Bad flag combination or malformed input file (exit status 2)."""


# ---------------------------------------------------------------------------
# formatting and I/O helpers

def _fmt(value) -> str:
    """Render one table cell: floats at 12 significant digits."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _jsonable(value):
    """JSON twin of _fmt: floats rounded to the same 12 digits."""
    if isinstance(value, bool) or not isinstance(value, float):
        return value
    if not math.isfinite(value):
        return None
    return float(format(value, ".12g"))


def _write_text(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _emit_table(args, columns, rows, meta=None) -> None:
    if args.format == "csv":
        lines = [",".join(columns)]
        lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
        for key, value in (meta or {}).items():
            lines.append(f"# {key}={_fmt(value)}")
        text = "\n".join(lines) + "\n"
    else:
        payload: dict = {
            "columns": list(columns),
            "rows": [[_jsonable(cell) for cell in row] for row in rows],
        }
        if meta:
            payload["meta"] = {k: _jsonable(v) for k, v in meta.items()}
        text = json.dumps(payload, indent=2) + "\n"
    _write_text(args.out, text)


def thread_cap() -> int:
    """Worker-thread budget from FRINGELAB_THREADS (default 1)."""
    raw = os.environ.get("FRINGELAB_THREADS")
    if raw is None or raw.strip() == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(
            f"FRINGELAB_THREADS must be a positive integer, got {raw!r}"
        ) from None
    if value < 1:
        raise UsageError(
            f"FRINGELAB_THREADS must be a positive integer, got {raw!r}"
        )
    return value


def _scan(fun, xs: np.ndarray) -> np.ndarray:
    """Map a scalar function over a grid in deterministic grid order,
    chunked across at most thread_cap() workers."""
    threads = thread_cap()
    if threads == 1 or len(xs) < 2 * threads:
        return np.array([fun(x) for x in xs])
    chunks = np.array_split(np.arange(len(xs)), threads)
    out = np.empty(len(xs))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = pool.map(lambda idx: [fun(xs[i]) for i in idx], chunks)
        for idx, values in zip(chunks, results):
            out[idx] = values
    return out


# ---------------------------------------------------------------------------
# flag parsing helpers

def _parse_outcome(text: str) -> OutcomePattern:
    match = re.fullmatch(r"(\d+):(\d+)", text.strip())
    if match is None:
        raise UsageError(f"outcome must look like 3:3, got {text!r}")
    return OutcomePattern(int(match.group(1)), int(match.group(2)))


def _parse_range(text: str, flag: str) -> tuple[float, float]:
    match = re.fullmatch(r"\s*(-?[\d.]+)\s*:\s*(-?[\d.]+)\s*", text)
    if match is None:
        raise UsageError(f"{flag} must look like LO:HI in degrees, got {text!r}")
    lo, hi = float(match.group(1)), float(match.group(2))
    if hi <= lo:
        raise UsageError(f"{flag} needs LO < HI, got {text!r}")
    return lo, hi


def _phase_grid(start: float, end: float, step: float) -> np.ndarray:
    if step <= 0:
        raise UsageError(f"--phi-step must be positive, got {step}")
    if end < start:
        raise UsageError("--phi-end must not precede --phi-start")
    count = int(math.floor((end - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def _build_model(
    kind: str,
    state_kind: str,
    total_photons: int,
    outcome: OutcomePattern,
    visibility: float,
    peak: float,
    amplitude: float | None = None,
) -> FringeModel:
    if kind == "ideal":
        return ideal_model(state_kind, total_photons, outcome)
    if kind == "affine":
        return affine_from_visibility(
            state_kind, total_photons, outcome, visibility, peak
        )
    if kind == "noon-cosine":
        return noon_cosine_model(total_photons, outcome, visibility, amplitude)
    raise UsageError(f"unknown model kind {kind!r}")


def _visibility_cov(model: FringeModel, sigma_v: float) -> np.ndarray:
    """Parameter covariance induced by a visibility uncertainty alone.

    For the affine family the peak probability a+b is held fixed, so
    da/dV = -db/dV = 2(a+b)/(1+V)^2; for the noon-cosine family the
    visibility is itself the second parameter.
    """
    if model.kind == "affine":
        peak = model.amplitude + model.offset
        slope = 2.0 * peak / (1.0 + model.visibility) ** 2
        jac = np.array([slope, -slope])
    else:
        jac = np.array([0.0, 1.0])
    return sigma_v**2 * np.outer(jac, jac)


# ---------------------------------------------------------------------------
# CountRecord serialization

_COUNTS_HEADER = "phi_deg,shots,counts"


def records_to_csv(records: list[CountRecord], seed: int | None = None) -> str:
    """CountRecord rows as CSV, phases in degrees, counts packed as
    semicolon-joined n1:n2=count cells, seed in a trailing comment."""
    lines = [_COUNTS_HEADER]
    for record in records:
        cell = ";".join(
            f"{pattern}={_fmt(count)}"
            for pattern, count in sorted(record.outcome_counts.items())
        )
        lines.append(f"{_fmt(math.degrees(record.phi))},{record.shots},{cell}")
    if seed is not None:
        lines.append(f"# seed={seed}")
    return "\n".join(lines) + "\n"


def records_to_json(records: list[CountRecord], seed: int | None = None) -> str:
    payload = {
        "seed": seed,
        "records": [
            {
                "phi_deg": _jsonable(math.degrees(record.phi)),
                "shots": record.shots,
                "counts": {
                    str(pattern): _jsonable(count)
                    for pattern, count in sorted(record.outcome_counts.items())
                },
            }
            for record in records
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def _counts_value(raw: str):
    number = float(raw)
    return int(number) if number == int(number) else number


def records_from_csv(text: str) -> tuple[list[CountRecord], int | None]:
    seed = None
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = re.search(r"seed\s*=\s*(-?\d+)", line)
            if match:
                seed = int(match.group(1))
            continue
        rows.append(line)
    if not rows or rows[0] != _COUNTS_HEADER:
        raise UsageError(
            f"counts file must start with the header {_COUNTS_HEADER!r}"
        )
    records = []
    for line in rows[1:]:
        parts = line.split(",")
        if len(parts) != 3:
            raise UsageError(f"bad counts row {line!r}")
        counts = {}
        if parts[2]:
            for item in parts[2].split(";"):
                key, sep, value = item.partition("=")
                if not sep:
                    raise UsageError(f"bad counts entry {item!r}")
                counts[_parse_outcome(key)] = _counts_value(value)
        records.append(
            CountRecord(
                phi=math.radians(float(parts[0])),
                shots=int(parts[1]),
                outcome_counts=counts,
            )
        )
    return records, seed


def records_from_json(text: str) -> tuple[list[CountRecord], int | None]:
    try:
        data = json.loads(text)
        records = [
            CountRecord(
                phi=math.radians(float(item["phi_deg"])),
                shots=int(item["shots"]),
                outcome_counts={
                    _parse_outcome(key): value
                    for key, value in item["counts"].items()
                },
            )
            for item in data["records"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed counts JSON: {exc}") from exc
    return records, data.get("seed")


def read_counts(path: str) -> tuple[list[CountRecord], int | None]:
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        return records_from_json(text)
    return records_from_csv(text)


# ---------------------------------------------------------------------------
# config and plan files

_BLOCK_RE = re.compile(r"(\w+)\s*\{([^}]*)\}")


def parse_config_blocks(text: str) -> dict[str, dict[str, float]]:
    """Parse `name { key = value, ... }` blocks; '#' starts a comment."""
    clean = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    blocks: dict[str, dict[str, float]] = {}
    for match in _BLOCK_RE.finditer(clean):
        body: dict[str, float] = {}
        for part in re.split(r"[,\n]", match.group(2)):
            part = part.strip()
            if not part:
                continue
            key, sep, value = part.partition("=")
            if not sep:
                raise UsageError(f"bad config entry {part!r}")
            try:
                body[key.strip()] = float(value.strip())
            except ValueError:
                raise UsageError(f"bad config value in {part!r}") from None
        blocks[match.group(1)] = body
    return blocks


def _detectors_from_mapping(data: dict) -> DetectorArrayConfig:
    unknown = set(data) - {"k", "eta"}
    if unknown:
        raise UsageError(
            f"unknown detector settings {sorted(unknown)}; expected k, eta"
        )
    return DetectorArrayConfig(
        detectors_per_port=int(data.get("k", 5)),
        efficiency=float(data.get("eta", 1.0)),
    )


def _detectors_from_config(path: str) -> DetectorArrayConfig:
    blocks = parse_config_blocks(_read_text(path))
    if "detectors" not in blocks:
        raise UsageError(f"{path} has no detectors block")
    return _detectors_from_mapping(blocks["detectors"])


def _model_from_mapping(data: dict, state_kind: str, total_photons: int) -> FringeModel:
    kind = data.get("kind", "ideal")
    outcome_text = data.get("outcome", f"{total_photons // 2}:{total_photons // 2}")
    outcome = _parse_outcome(str(outcome_text))
    amplitude = data.get("amplitude")
    return _build_model(
        kind,
        str(data.get("state", state_kind)),
        int(data.get("n", total_photons)),
        outcome,
        float(data.get("visibility", 1.0)),
        float(data.get("peak", DEFAULT_FRINGE_PEAK)),
        None if amplitude is None else float(amplitude),
    )


def plan_from_dict(data: dict, detectors: DetectorArrayConfig | None = None) -> ExperimentPlan:
    """Build an ExperimentPlan from a decoded plan file; `detectors`
    (from --config) overrides the plan's own detector block."""
    if not isinstance(data, dict):
        raise UsageError("plan file must hold a JSON object")
    missing = [key for key in ("n", "shots", "seed") if key not in data]
    if missing:
        raise UsageError(f"plan is missing required keys {missing}")
    state_kind = str(data.get("state", "hb"))
    total_photons = int(data["n"])
    if "phases_deg" in data:
        phases = tuple(math.radians(float(x)) for x in data["phases_deg"])
    else:
        grid = _phase_grid(
            float(data.get("phi_start", 0.0)),
            float(data.get("phi_end", 30.0)),
            float(data.get("phi_step", 3.0)),
        )
        phases = tuple(math.radians(float(x)) for x in grid)
    if detectors is None and "detectors" in data:
        detectors = _detectors_from_mapping(data["detectors"])
    model = None
    if "model" in data:
        model = _model_from_mapping(data["model"], state_kind, total_photons)
    return ExperimentPlan(
        state_kind=state_kind,
        total_photons=total_photons,
        phases=phases,
        shots=int(data["shots"]),
        seed=int(data["seed"]),
        detectors=detectors,
        model=model,
    )


# ---------------------------------------------------------------------------
# subcommands

def cmd_fringe(args) -> int:
    outcome = _parse_outcome(args.outcome)
    grid_deg = _phase_grid(args.phi_start, args.phi_end, args.phi_step)
    model = _build_model(
        args.model, args.state, args.n, outcome,
        args.visibility, args.peak, args.amplitude,
    )
    probs = _scan(lambda deg: float(apply_model(model, math.radians(deg))), grid_deg)
    rows = [[float(deg), float(p)] for deg, p in zip(grid_deg, probs)]
    _emit_table(args, ["phi_deg", "probability"], rows)
    return 0


def cmd_fisher(args) -> int:
    grid_deg = _phase_grid(args.phi_start, args.phi_end, args.phi_step)
    band_fun = None
    if args.mode == "full":
        if args.band:
            raise UsageError("--band applies to single-fringe models only")
        state = build_state(args.state, args.n)

        def fun(rad: float) -> float:
            return full_fisher(state, rad)

    elif args.model == "ideal":
        if args.band:
            raise UsageError("--band needs --model affine or noon-cosine")
        if args.outcome is None:
            raise UsageError("--outcome is required for --mode single")
        outcome = _parse_outcome(args.outcome)
        state = build_state(args.state, args.n)

        def fun(rad: float) -> float:
            return single_fringe_fisher(state, outcome, rad)

    else:
        if args.outcome is None:
            raise UsageError("--outcome is required for --mode single")
        outcome = _parse_outcome(args.outcome)
        model = _build_model(
            args.model, args.state, args.n, outcome,
            args.visibility, args.peak, args.amplitude,
        )

        def fun(rad: float) -> float:
            return single_fringe_fisher_model(model, rad)

        if args.band:
            cov = _visibility_cov(model, args.visibility_sigma)

            def band_fun(rad: float) -> float:
                return model_fisher_sigma(model, cov, rad)

    values = _scan(fun, np.radians(grid_deg))
    lo_rad = math.radians(args.phi_start)
    hi_rad = math.radians(args.phi_end)
    peak_phi, peak_value = find_peak(fun, lo_rad, hi_rad)
    meta = {
        "peak_phi_deg": math.degrees(peak_phi),
        "peak_fisher": peak_value,
        "snl_ratio": snl_comparison(peak_value, args.n),
    }
    print(
        f"peak: phi_deg={_fmt(meta['peak_phi_deg'])} "
        f"fisher={_fmt(meta['peak_fisher'])} "
        f"snl_ratio={_fmt(meta['snl_ratio'])}",
        file=sys.stderr,
    )
    columns = ["phi_deg", "fisher"]
    rows = [[float(deg), float(f)] for deg, f in zip(grid_deg, values)]
    if band_fun is not None:
        sigmas = _scan(band_fun, np.radians(grid_deg))
        columns.append("sigma")
        for row, sigma in zip(rows, sigmas):
            row.append(float(sigma))
    _emit_table(args, columns, rows, meta)
    return 0


def cmd_scaling(args) -> int:
    table = scaling_table(args.n_max)
    columns = ["n", "snl", "noon_single", "hb_single"]
    rows = [
        [row.total_photons, row.snl, row.noon_single, row.hb_single]
        for row in table
    ]
    if args.asymptotic:
        columns.append("noon_asymptotic")
        for cells, row in zip(rows, table):
            cells.append(noon_asymptotic(row.total_photons))
    _emit_table(args, columns, rows)
    return 0


def cmd_simulate(args) -> int:
    try:
        plan_data = json.loads(_read_text(args.plan))
    except json.JSONDecodeError as exc:
        raise UsageError(f"plan file is not valid JSON: {exc}") from exc
    detectors = _detectors_from_config(args.config) if args.config else None
    plan = plan_from_dict(plan_data, detectors)
    records = simulate_counts(plan)
    if args.format == "csv":
        text = records_to_csv(records, seed=plan.seed)
    else:
        text = records_to_json(records, seed=plan.seed)
    _write_text(args.out, text)
    return 0


def cmd_estimate(args) -> int:
    records, seed = read_counts(args.counts)
    outcome = _parse_outcome(args.outcome)
    total_photons = args.n if args.n is not None else outcome.total
    total_shots = sum(record.shots for record in records)
    report: dict = {
        "method": args.method,
        "outcome": str(outcome),
        "records": len(records),
        "shots": total_shots,
        "seed": seed,
    }

    if args.method == "fit":
        kind = args.model or "affine"
        if kind not in ("affine", "noon-cosine"):
            raise UsageError("--method fit supports --model affine or noon-cosine")
        result = fit_fringe(records, outcome, kind, state_kind=args.state)
        report.update(
            {
                "model_kind": kind,
                "estimate": _jsonable(result.visibility),
                "stderr": _jsonable(result.visibility_sigma),
                "param_names": list(result.param_names),
                "params": [_jsonable(float(x)) for x in result.params],
                "cov": [
                    [_jsonable(float(x)) for x in row] for row in result.cov
                ],
                "model_params": {
                    "amplitude": _jsonable(result.model.amplitude),
                    "offset": _jsonable(result.model.offset),
                    "visibility": _jsonable(result.model.visibility),
                },
            }
        )
    elif args.method == "direct":
        lo, hi = _parse_range(args.window, "--window")
        result = direct_fisher_from_data(
            records, outcome, (math.radians(lo), math.radians(hi))
        )
        report.update(
            {
                "estimate": _jsonable(result.fisher),
                "stderr": _jsonable(result.sigma),
                "phi_mid_deg": _jsonable(math.degrees(result.phi_mid)),
                "window": [lo, hi],
                "points": result.points,
                "low_confidence": result.low_confidence,
                "snl_ratio": _jsonable(snl_comparison(result.fisher, total_photons)),
            }
        )
    else:
        lo, hi = _parse_range(args.interval, "--interval")
        kind = args.model or "ideal"
        if kind == "full":
            model = build_state(args.state, total_photons)
        else:
            model = _build_model(
                kind, args.state, total_photons, outcome,
                args.visibility, args.peak, args.amplitude,
            )
        result = mle_phase(records, model, (math.radians(lo), math.radians(hi)))
        report.update(
            {
                "model_kind": kind,
                "estimate": _jsonable(math.degrees(result.phi_hat)),
                "stderr": _jsonable(
                    math.degrees(result.stderr)
                    if math.isfinite(result.stderr)
                    else math.inf
                ),
                "window": [lo, hi],
                "at_boundary": result.at_boundary,
                "log_likelihood": _jsonable(result.log_likelihood),
            }
        )
    _write_text(args.out, json.dumps(report, indent=2) + "\n")
    return 0


# ---------------------------------------------------------------------------
# parser assembly

def _add_output_flags(parser, formats=("csv", "json")) -> None:
    parser.add_argument(
        "--format", choices=formats, default=formats[0],
        help=f"output format (default {formats[0]})",
    )
    parser.add_argument(
        "--out", default=None, metavar="FILE",
        help="write to FILE instead of stdout",
    )


def _add_state_flags(parser) -> None:
    parser.add_argument(
        "--state", choices=("hb", "noon", "snl"), default="hb",
        help="input state family (default hb)",
    )
    parser.add_argument(
        "--n", type=int, required=True, help="total photon number N"
    )


def _add_model_flags(parser) -> None:
    parser.add_argument(
        "--model", choices=("ideal", "affine", "noon-cosine"), default="ideal",
        help="fringe model family (default ideal)",
    )
    parser.add_argument(
        "--visibility", type=float, default=1.0,
        help="fringe contrast for affine / noon-cosine models (default 1)",
    )
    parser.add_argument(
        "--peak", type=float, default=DEFAULT_FRINGE_PEAK,
        help="peak probability a+b of the affine family "
        f"(default {DEFAULT_FRINGE_PEAK})",
    )
    parser.add_argument(
        "--amplitude", type=float, default=None,
        help="noon-cosine baseline q (default: symmetric binomial weight)",
    )


def _add_grid_flags(parser, start: float, end: float, step: float) -> None:
    parser.add_argument("--phi-start", type=float, default=start,
                        help=f"scan start in degrees (default {start})")
    parser.add_argument("--phi-end", type=float, default=end,
                        help=f"scan end in degrees (default {end})")
    parser.add_argument("--phi-step", type=float, default=step,
                        help=f"scan step in degrees (default {step})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fringelab",
        description="Exact two-mode photon-counting interferometry tables",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fringe = sub.add_parser(
        "fringe", help="single-fringe probability over a phase scan"
    )
    _add_state_flags(fringe)
    fringe.add_argument("--outcome", required=True, metavar="A:B",
                        help="detection pattern, e.g. 3:3")
    _add_grid_flags(fringe, 0.0, 360.0, 1.0)
    _add_model_flags(fringe)
    _add_output_flags(fringe)
    fringe.set_defaults(func=cmd_fringe)

    fisher = sub.add_parser(
        "fisher", help="Fisher-information profile and peak report"
    )
    fisher.add_argument("--mode", choices=("single", "full"), required=True,
                        help="one fringe or all N+1 outcomes")
    _add_state_flags(fisher)
    fisher.add_argument("--outcome", default=None, metavar="A:B",
                        help="detection pattern for --mode single")
    _add_grid_flags(fisher, 0.0, 30.0, 0.1)
    _add_model_flags(fisher)
    fisher.add_argument("--band", action="store_true",
                        help="add a 1-sigma column from --visibility-sigma")
    fisher.add_argument("--visibility-sigma", type=float, default=0.02,
                        help="visibility uncertainty for --band (default 0.02)")
    _add_output_flags(fisher)
    fisher.set_defaults(func=cmd_fisher)

    scaling = sub.add_parser(
        "scaling", help="Fisher benchmarks versus photon number"
    )
    scaling.add_argument("--n-max", type=int, required=True,
                         help="largest photon number to tabulate")
    scaling.add_argument("--asymptotic", action="store_true",
                         help="add the sqrt(8/pi) N^1.5 NOON asymptote column")
    _add_output_flags(scaling)
    scaling.set_defaults(func=cmd_scaling)

    simulate = sub.add_parser(
        "simulate", help="draw seeded Monte Carlo counts from a plan"
    )
    simulate.add_argument("--plan", required=True, metavar="FILE",
                          help="JSON plan with state, n, phases, shots, seed")
    simulate.add_argument("--config", default=None, metavar="FILE",
                          help="detector config file overriding the plan")
    _add_output_flags(simulate)
    simulate.set_defaults(func=cmd_simulate)

    estimate = sub.add_parser(
        "estimate", help="fit, direct-Fisher, or MLE report from counts"
    )
    estimate.add_argument("--counts", required=True, metavar="FILE",
                          help="CountRecord CSV or JSON file")
    estimate.add_argument("--outcome", required=True, metavar="A:B")
    estimate.add_argument("--method", choices=("fit", "direct", "mle"),
                          required=True)
    estimate.add_argument("--window", default="9:30", metavar="LO:HI",
                          help="degrees window for --method direct "
                          "(default 9:30)")
    estimate.add_argument("--interval", default="0:30", metavar="LO:HI",
                          help="degrees search interval for --method mle "
                          "(default 0:30)")
    estimate.add_argument("--state", choices=("hb", "noon", "snl"),
                          default="hb")
    estimate.add_argument("--n", type=int, default=None,
                          help="total photon number (default: outcome total)")
    estimate.add_argument(
        "--model",
        choices=("ideal", "affine", "noon-cosine", "full"),
        default=None,
        help="model for fit/mle (fit default affine, mle default ideal)",
    )
    estimate.add_argument("--visibility", type=float, default=1.0)
    estimate.add_argument("--peak", type=float, default=DEFAULT_FRINGE_PEAK)
    estimate.add_argument("--amplitude", type=float, default=None)
    estimate.add_argument("--out", default=None, metavar="FILE",
                          help="write the JSON report to FILE")
    estimate.set_defaults(func=cmd_estimate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return int(args.func(args))
    except UsageError as exc:
        print(f"fringelab: error: {exc}", file=sys.stderr)
        return 2
    except PhysicsError as exc:
        print(f"fringelab: physics error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
