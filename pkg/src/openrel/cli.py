"""Command-line front end.

Subcommands: ``figures``, ``check``, ``chsh``, ``simulate``. Global flags
``--config``, ``--seed``, ``--out`` and ``--format`` may appear before or
after the subcommand.

Exit status: 0 when the run confirms the expected claims, 1 when a claim
check fails, 2 for configuration, scenario-geometry or I/O errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import bell
from .checker import BRANCHES, build_classical_table, build_quantum_table, check_table
from .classical import (
    MeasurementRecord,
    kicked_energy,
    rest_energy,
    support_on_slice,
)
from .config import ScenarioConfig, load_config
from .quantum import OutcomeBranch, description_on_slice, measure_sigma_y, prepare_initial
from .spacetime import FourVector, is_before
from .svg import support_plot, worldline_diagram

log = logging.getLogger("openrel")

EXIT_OK = 0
EXIT_CLAIM_FAILED = 1
EXIT_CONFIG = 2

RESIDUAL_THRESHOLD = 0.5

FIGURE_CSV_HEADER = ["slice", "observer", "rapidity", "tau", "e1", "e2", "weight"]
CHECK_CSV_HEADER = ["table", "row", "branch_1", "branch_2", "row_error",
                    "function_exists", "best_linear_residual"]
CHSH_CSV_HEADER = ["model", "pair", "correlation", "S", "n_samples", "seed"]
SIMULATE_CSV_HEADER = ["observer", "rapidity", "tau", "kick_1_before", "kick_2_before",
                       "unmeasured_size", "measured_size", "state_re_im"]


@dataclass(frozen=True)
class FigureArtifact:
    kind: str  # worldline-diagram | support-dots | verdict-report
    path: Path
    format: str  # SVG | JSON | CSV


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _dump_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _write(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from None
    return path


def _slice_label(index: int, observer: str) -> str:
    return f"{index:02d}_{observer}"


def cmd_figures(config: ScenarioConfig, fmt: str = "json") -> list[FigureArtifact]:
    """Worldline diagram, one support dot plot per configured slice, and the numbers behind them."""
    out = Path(config.output_dir)
    params = config.classical.params()
    event_a, event_b = config.quantum.events()
    alice, bob = config.observer_slice("alice"), config.observer_slice("bob")

    events = {"A": event_a, "B": event_b}
    if params.kick_event_1 != event_a or params.kick_event_2 != event_b:
        events.update({"K1": params.kick_event_1, "K2": params.kick_event_2})
    through = {"alice": event_a, "bob": event_b}
    observers = [(o.name, o.rapidity, through.get(o.name) or _midpoint(event_a, event_b))
                 for o in config.observers]
    diagram_slices = [("t_A=0", alice.slice), ("t_B=0", bob.slice)]

    artifacts = [FigureArtifact(
        "worldline-diagram",
        _write(out / "worldlines.svg", worldline_diagram(events, observers, diagram_slices)),
        "SVG",
    )]

    energies = [rest_energy(params), kicked_energy(params, 1), kicked_energy(params, -1)]
    energy_range = (min(energies), max(energies))
    records = []
    for index, obs_slice in enumerate(config.observer_slices()):
        support = support_on_slice(params, obs_slice.slice)
        label = _slice_label(index, obs_slice.observer)
        title = f"{obs_slice.observer} tau={obs_slice.tau:.12g}"
        path = _write(out / f"support_{label}.svg", support_plot(support, energy_range, title))
        artifacts.append(FigureArtifact("support-dots", path, "SVG"))
        records.append({
            "slice": label,
            "observer": obs_slice.observer,
            "rapidity": obs_slice.chi,
            "tau": obs_slice.tau,
            "support": support.to_json(),
        })

    data = {
        "energies": {"E0": energies[0], "E_plus": energies[1], "E_minus": energies[2]},
        "events": {k: list(v.as_tuple()) for k, v in events.items()},
        "observers": [{"name": n, "rapidity": chi} for n, chi, _ in observers],
        "diagram_slices": [{"label": lbl, "rapidity": s.chi, "tau": s.tau}
                           for lbl, s in diagram_slices],
        "supports": records,
    }
    if fmt == "csv":
        rows = [[r["slice"], r["observer"], r["rapidity"], r["tau"], p["e1"], p["e2"], p["weight"]]
                for r in records for p in r["support"]]
        artifacts.append(FigureArtifact("support-dots",
                                        _write(out / "figures.csv", _dump_csv(FIGURE_CSV_HEADER, rows)),
                                        "CSV"))
    else:
        artifacts.append(FigureArtifact("support-dots", _write(out / "figures.json", _dump_json(data)),
                                        "JSON"))
    return artifacts


def _midpoint(e1: FourVector, e2: FourVector) -> FourVector:
    return FourVector((e1.t + e2.t) / 2, (e1.x + e2.x) / 2, (e1.y + e2.y) / 2, (e1.z + e2.z) / 2)


def run_check(config: ScenarioConfig) -> tuple[int, dict]:
    """Run both no-transformation checks; return (exit status, report)."""
    params = config.classical.params()
    alice, bob = config.observer_slice("alice"), config.observer_slice("bob")
    quantum = check_table(build_quantum_table(config.quantum.events(), alice, bob))
    classical = check_table(build_classical_table(params, alice, bob))
    degenerate = params.k * params.p == 0

    quantum_ok = (not quantum.function_exists) and quantum.best_linear_residual > RESIDUAL_THRESHOLD
    if degenerate:
        classical_ok = classical.function_exists
    else:
        classical_ok = ((not classical.function_exists)
                        and classical.best_linear_residual > RESIDUAL_THRESHOLD)
    warnings = []
    if degenerate:
        warnings.append("classical scenario is degenerate (k*p == 0): kicked energies coincide, "
                        "so the descriptions agree and a map exists")
    report = {
        "quantum": quantum.to_json(),
        "classical": dict(classical.to_json(), degenerate=degenerate),
        "residual_threshold": RESIDUAL_THRESHOLD,
        "claims_confirmed": quantum_ok and classical_ok,
        "warnings": warnings,
    }
    return (EXIT_OK if report["claims_confirmed"] else EXIT_CLAIM_FAILED), report


def cmd_check(config: ScenarioConfig, fmt: str = "json") -> int:
    status, report = run_check(config)
    out = Path(config.output_dir)
    if fmt == "csv":
        rows = []
        for table in ("quantum", "classical"):
            verdict = report[table]
            for i, (branch, err) in enumerate(zip(BRANCHES, verdict["per_row_errors"])):
                rows.append([table, i, branch[0], branch[1], err,
                             verdict["function_exists"], verdict["best_linear_residual"]])
        _write(out / "check.csv", _dump_csv(CHECK_CSV_HEADER, rows))
    else:
        _write(out / "check.json", _dump_json(report))
    for warning in report["warnings"]:
        log.warning(warning)
    sys.stdout.write(_dump_json(report))
    return status


def chsh_report(config: ScenarioConfig) -> dict:
    settings = config.bell.settings()
    n, seed = config.bell.n_samples, config.seed
    results = []
    for model in bell.MODELS:
        corr = bell.correlations(settings, model, n, seed)
        entry = {
            "model": model,
            "settings": settings.to_json(),
            "S": corr[0] + corr[1] + corr[2] - corr[3],
            "correlations": corr,
            "n_samples": n if model == "classical-mc" else None,
            "seed": seed if model == "classical-mc" else None,
        }
        results.append(entry)
    return {
        "results": results,
        "bound_scan": {
            "model": "classical-analytic",
            "n_quadruples": config.bell.scan_quadruples,
            "seed": seed,
            "max_abs_S": bell.classical_chsh_bound_scan(config.bell.scan_quadruples, seed),
        },
        "seed": seed,
        "n_samples": n,
    }


def cmd_chsh(config: ScenarioConfig, fmt: str = "json") -> dict:
    report = chsh_report(config)
    out = Path(config.output_dir)
    if fmt == "csv":
        rows = [[r["model"], i, c, r["S"], r["n_samples"] or "", r["seed"] if r["seed"] is not None else ""]
                for r in report["results"] for i, c in enumerate(r["correlations"])]
        scan = report["bound_scan"]
        rows.append(["bound-scan", "", "", scan["max_abs_S"], scan["n_quadruples"], scan["seed"]])
        _write(out / "chsh.csv", _dump_csv(CHSH_CSV_HEADER, rows))
    else:
        _write(out / "chsh.json", _dump_json(report))
    return report


def simulate_log(config: ScenarioConfig) -> dict:
    """One stochastic history, described slice by slice by every observer.

    Outcomes are drawn once, before any observer is visited, so they do
    not depend on the order of observers in the config.
    """
    rng = np.random.default_rng(config.seed)
    signs = [int(s) for s in rng.choice([1, -1], size=2)]
    state = prepare_initial()
    outcomes, probabilities = [], []
    for subsystem in (1, 2):
        outcome, state, prob = measure_sigma_y(state, subsystem, rng)
        outcomes.append(outcome)
        probabilities.append(prob)

    params = config.classical.params()
    events = config.quantum.events()
    observers = []
    for obs in config.observers:
        steps = []
        taus = sorted(s.tau for s in config.slices if s.observer == obs.name)
        for tau in taus:
            hyperplane = config.observer_slice(obs.name, tau).slice
            kicked = [is_before(hyperplane, params.kick_event(i)) for i in (1, 2)]
            measured = [is_before(hyperplane, e) for e in events]
            record = MeasurementRecord(*(s if k else None for s, k in zip(signs, kicked)))
            branch = OutcomeBranch(*(o if m else None for o, m in zip(outcomes, measured)))
            steps.append({
                "tau": tau,
                "kicks_before": kicked,
                "measurements_before": measured,
                "support_unmeasured": support_on_slice(params, hyperplane).to_json(),
                "support_measured": support_on_slice(params, hyperplane, record).to_json(),
                "state": description_on_slice(hyperplane, branch, events).to_json(),
            })
        observers.append({"name": obs.name, "rapidity": obs.rapidity, "slices": steps})
    return {
        "seed": config.seed,
        "classical_signs": signs,
        "quantum_outcomes": outcomes,
        "quantum_probabilities": probabilities,
        "observers": observers,
    }


def cmd_simulate(config: ScenarioConfig, fmt: str = "json") -> dict:
    record = simulate_log(config)
    out = Path(config.output_dir)
    if fmt == "csv":
        rows = []
        for obs in record["observers"]:
            for step in obs["slices"]:
                state = " ".join(f"{re:.12g}{im:+.12g}j" for re, im in step["state"])
                rows.append([obs["name"], obs["rapidity"], step["tau"], *step["kicks_before"],
                             len(step["support_unmeasured"]), len(step["support_measured"]), state])
        _write(out / "simulate.csv", _dump_csv(SIMULATE_CSV_HEADER, rows))
    else:
        _write(out / "simulate.json", _dump_json(record))
    return record


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    parser.add_argument("--config", default=default(None), help="scenario TOML file")
    parser.add_argument("--seed", type=int, default=default(None), help="override the config seed")
    parser.add_argument("--out", default=default(None), help="override the output directory")
    parser.add_argument("--format", choices=("json", "csv"), default=default("json"),
                        help="format of the data files (default json)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="openrel",
        description="Frame-dependent descriptions of open systems in special relativity.",
    )
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("figures", "emit the spacetime diagram and Liouville support dot plots"),
        ("check", "verify that no map relates the observers' descriptions"),
        ("chsh", "classical versus quantum CHSH values"),
        ("simulate", "sample one history and log each observer's descriptions"),
    ):
        _global_flags(sub.add_parser(name, help=text), suppress=True)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config).with_overrides(args.seed, args.out)
        if args.command == "figures":
            cmd_figures(config, args.format)
            return EXIT_OK
        if args.command == "check":
            return cmd_check(config, args.format)
        if args.command == "chsh":
            cmd_chsh(config, args.format)
            return EXIT_OK
        cmd_simulate(config, args.format)
        return EXIT_OK
    except OSError as exc:
        log.error("I/O error: %s", exc)
    except ValueError as exc:
        # ConfigError, ScenarioError and parameter validation all land here
        log.error("configuration error: %s", exc)
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
