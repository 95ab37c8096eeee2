"""Command-line front end.

Commands: simulate, classify, detect-period, reproduce, sweep.

Config files are JSON with exact "p/q" rational strings (never decimals):

    {
      "t": 2,
      "delays": [1, 2],                // optional; defaults to 1..t
      "coefficients": [
        {"delay": 1, "period": 1, "values": ["1/1"]},
        {"delay": 2, "period": 3, "values": ["3/1", "1/3", "1/1"]}
      ],
      "initial": ["1/1", "1/1"],
      "index_base": -1,                // optional
      "seed": 7                        // optional
    }

Tables are CSV; verdicts and reports are line-delimited JSON records with
sorted keys, so identical inputs and seeds give byte-identical output.
Exit codes: 0 success, 1 usage or parse error, 2 internal invariant
violation (including literature-case deviations under ``reproduce``).
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .classifier import Classification, Verdict, classify
from .empirical import persistence_report
from .harness import CaseReport, run_case, suite_cases
from .periodicity import CycleReport, NotFound, detect_cycle
from .rationals import format_rational, parse_rational, random_initial
from .recurrence import (CoefficientSchedule, ConfigError, EquationConfig,
                         Mode, simulate)

LOG10 = math.log(10)


class CliError(Exception):
    """Usage or parse problem; maps to exit code 1."""


def _fail(message: str) -> "CliError":
    return CliError(message)


@dataclass
class ConfigTemplate:
    """Parsed config document; ``initial`` may be absent for sweep templates
    that draw random initial conditions per grid point."""

    t: int
    delays: list[int]
    values_by_delay: dict[int, tuple[Fraction, ...]]
    initial: Optional[tuple[Fraction, ...]]
    index_base: Optional[int]
    seed: Optional[int]

    def build(self, where: str,
              initial: Optional[tuple[Fraction, ...]] = None,
              values_by_delay: Optional[dict] = None) -> EquationConfig:
        init = initial if initial is not None else self.initial
        if init is None:
            raise _fail(f"{where}: missing field 'initial'")
        values = dict(self.values_by_delay)
        if values_by_delay:
            values.update(values_by_delay)
        try:
            return EquationConfig(
                t=self.t,
                schedules=tuple(CoefficientSchedule(delay=d, values=values[d])
                                for d in sorted(self.delays)),
                initial=init,
                index_base=self.index_base)
        except ConfigError as exc:
            raise _fail(f"{where}: {exc}") from None


def parse_config_doc(doc: dict, where: str = "config") -> ConfigTemplate:
    """Parse a JSON config document with diagnostics that name the offending
    field or delay."""
    if not isinstance(doc, dict):
        raise _fail(f"{where}: top level must be an object")
    try:
        t = int(doc["t"])
    except KeyError:
        raise _fail(f"{where}: missing field 't'") from None
    except (TypeError, ValueError):
        raise _fail(f"{where}: field 't' must be an integer") from None
    delays = doc.get("delays")
    if delays is None:
        delays = list(range(1, t + 1))
    delays = [int(d) for d in delays]
    coeff_entries = doc.get("coefficients")
    if not isinstance(coeff_entries, list):
        raise _fail(f"{where}: missing or malformed 'coefficients' list")
    by_delay: dict[int, tuple[Fraction, ...]] = {}
    for entry in coeff_entries:
        try:
            delay = int(entry["delay"])
            values = tuple(parse_rational(v) for v in entry["values"])
        except (KeyError, TypeError, ValueError) as exc:
            raise _fail(f"{where}: bad coefficient entry {entry!r}: {exc}") from None
        declared = entry.get("period")
        if declared is not None and int(declared) != len(values):
            raise _fail(f"{where}: coefficient for delay {delay} declares period "
                        f"{declared} but lists {len(values)} values")
        by_delay[delay] = values
    missing = [d for d in delays if d not in by_delay]
    if missing:
        raise _fail(f"{where}: missing coefficient schedule for delay "
                    f"{', '.join(str(d) for d in missing)}")
    extra = [d for d in by_delay if d not in delays]
    if extra:
        raise _fail(f"{where}: coefficient schedule for unlisted delay "
                    f"{', '.join(str(d) for d in extra)}")
    initial: Optional[tuple[Fraction, ...]] = None
    if "initial" in doc:
        try:
            initial = tuple(parse_rational(v) for v in doc["initial"])
        except (TypeError, ValueError) as exc:
            raise _fail(f"{where}: bad initial condition: {exc}") from None
    index_base = doc.get("index_base")
    seed = doc.get("seed")
    return ConfigTemplate(
        t=t, delays=delays, values_by_delay=by_delay, initial=initial,
        index_base=None if index_base is None else int(index_base),
        seed=None if seed is None else int(seed))


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise _fail(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise _fail(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def load_config(path: str) -> tuple[EquationConfig, Optional[int]]:
    """Parse a config file; returns the config and its optional seed."""
    template = parse_config_doc(_read_json(path), where=path)
    return template.build(where=path), template.seed


def dump_config(config: EquationConfig, seed: Optional[int] = None) -> dict:
    doc = {
        "t": config.t,
        "delays": list(config.delays),
        "coefficients": [
            {"delay": s.delay, "period": s.period,
             "values": [format_rational(v) for v in s.values]}
            for s in config.schedules],
        "initial": [format_rational(v) for v in config.initial],
        "index_base": config.index_base,
    }
    if seed is not None:
        doc["seed"] = seed
    return doc


def _record(out, payload: dict) -> None:
    out.write(json.dumps(payload, sort_keys=True) + "\n")


def _open_out(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _criterion_text(result: Classification, t: int) -> str:
    if result.verdict is Verdict.BOUNDED:
        i = result.gcd_witness
        return (f"gcd({t + 1}, p_{i} * p_{t + 1 - i}) = 1: every positive "
                "solution is bounded and persists")
    if result.verdict is Verdict.UNBOUNDED and result.separation is not None:
        return ("coefficient separation holds for some shift: one residue class "
                f"mod {t + 1} contracts geometrically, so every positive "
                "solution is unbounded")
    if result.verdict is Verdict.UNBOUNDED:
        return ("block-aligned straddle of partner schedule ranges: every "
                "positive solution is unbounded")
    if result.verdict is Verdict.NOT_APPLICABLE:
        return f"tests require the full delay set 1..{t}"
    return "no sufficient condition applies; boundedness undecided"


def classification_record(result: Classification, t: int) -> dict:
    record = {"verdict": result.verdict.value,
              "criterion": _criterion_text(result, t)}
    if result.gcd_witness is not None:
        record["gcd_witness"] = result.gcd_witness
        record["gcd_product"] = result.gcd_product
    if result.separation is not None:
        sep = result.separation
        record["separation"] = {
            "shift": sep.shift,
            "sup_by_delay": {str(i): format_rational(v)
                             for i, v in sep.sup_by_delay.items()},
            "inf_by_delay": {str(i): format_rational(v)
                             for i, v in sep.inf_by_delay.items()},
            "decay_factor": format_rational(sep.decay_factor),
        }
    if result.straddle is not None:
        record["straddle"] = {
            "case": result.straddle.case,
            "shift": result.straddle.shift,
            "block_counts": {str(d): k
                             for d, k in sorted(result.straddle.block_counts.items())},
        }
    if result.notes:
        record["notes"] = list(result.notes)
    return record


def cmd_simulate(args) -> int:
    config, _seed = load_config(args.config)
    mode = Mode.EXACT if args.mode == "exact" else Mode.LOG
    traj = simulate(config, args.steps, mode)
    out, close = _open_out(args.out)
    try:
        writer = csv.writer(out)
        writer.writerow(["n", "value", "log10_value", "argmax_delay"])
        for n in traj.computed_indices():
            if mode is Mode.EXACT:
                value = traj.value(n)
                writer.writerow([n, format_rational(value),
                                 repr(traj.log_value(n) / LOG10),
                                 traj.argmax_delay(n)])
            else:
                writer.writerow([n, "", repr(traj.value(n) / LOG10),
                                 traj.argmax_delay(n)])
    finally:
        if close:
            out.close()
    if traj.truncation is not None:
        note = traj.truncation
        print(f"warning: bit-size cap {note.cap} exceeded at n={note.index} "
              f"({note.bits} bits); table truncated", file=sys.stderr)
    return 0


def cmd_classify(args) -> int:
    config, _seed = load_config(args.config)
    result = classify(config)
    _record(sys.stdout, classification_record(result, config.t))
    return 0


def cmd_detect_period(args) -> int:
    config, _seed = load_config(args.config)
    result = detect_cycle(config, max_steps=args.max_steps)
    if isinstance(result, CycleReport):
        _record(sys.stdout, {
            "found": True,
            "preperiod": result.preperiod,
            "period": result.period,
            "state_period": result.state_period,
            "verified_horizon": result.verified_horizon,
            "min_value": format_rational(result.min_value),
            "max_value": format_rational(result.max_value),
        })
    else:
        _record(sys.stdout, {
            "found": False,
            "steps": result.steps,
            "min_value": format_rational(result.min_value),
            "max_value": format_rational(result.max_value),
            "truncated": result.truncated,
        })
    return 0


def _case_record(report: CaseReport) -> dict:
    return {
        "case": report.case_id,
        "trials": report.trials,
        "passed": report.passed,
        "ok": report.ok,
        "periods_seen": sorted(report.periods_seen),
        "failures": [{"trial": f.trial, "initial": list(f.initial),
                      "reason": f.reason} for f in report.failures],
    }


def cmd_reproduce(args) -> int:
    try:
        cases = suite_cases(args.suite)
    except KeyError as exc:
        raise _fail(str(exc)) from None
    out, close = _open_out(args.out)
    all_ok = True
    try:
        for case in cases:
            report = run_case(case, args.trials)
            all_ok = all_ok and report.ok
            _record(out, _case_record(report))
        _record(out, {"suite": args.suite, "cases": len(cases), "ok": all_ok})
    finally:
        if close:
            out.close()
    return 0 if all_ok else 2


def _load_grid(path: str) -> list[tuple[int, list[tuple[Fraction, ...]]]]:
    doc = _read_json(path)
    axes = doc.get("axes")
    if not isinstance(axes, list):
        raise _fail(f"{path}: grid spec needs an 'axes' list")
    parsed = []
    for axis in axes:
        try:
            delay = int(axis["delay"])
            schedules = [tuple(parse_rational(v) for v in entry["values"])
                         for entry in axis["schedules"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise _fail(f"{path}: bad axis entry {axis!r}: {exc}") from None
        parsed.append((delay, schedules))
    return parsed


def cmd_sweep(args) -> int:
    template = parse_config_doc(_read_json(args.template), where=args.template)
    seed = args.seed if args.seed is not None else (template.seed or 0)
    axes = _load_grid(args.grid)
    n_points = math.prod(len(schedules) for _, schedules in axes) if axes else 0
    if n_points > args.max_points:
        raise _fail(f"grid has {n_points} points, above the cap of "
                    f"{args.max_points}; raise --max-points to proceed")
    out, close = _open_out(args.out)
    try:
        for index, combo in enumerate(itertools.product(
                *(schedules for _, schedules in axes))):
            subs = {delay: values for (delay, _), values in zip(axes, combo)}
            initial = template.initial
            if initial is None:
                rng = random.Random(f"sweep:{seed}:{index}")
                initial = random_initial(rng, template.t)
            config = template.build(where=args.template, initial=initial,
                                    values_by_delay=subs)
            result = classify(config)
            cycle = detect_cycle(config, max_steps=args.max_steps)
            flags = persistence_report(
                simulate(config, args.empirical_steps, Mode.LOG))
            record = {
                "point": index,
                "substitutions": {str(d): [format_rational(v) for v in vals]
                                  for d, vals in sorted(subs.items())},
                "verdict": result.verdict.value,
                "period": cycle.period if isinstance(cycle, CycleReport) else None,
                "preperiod": cycle.preperiod if isinstance(cycle, CycleReport) else None,
                "divergence_flag": flags.divergence_flag,
                "vanishing_flag": flags.vanishing_flag,
            }
            _record(out, record)
    finally:
        if close:
            out.close()
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems must exit 1, not argparse's 2
        raise CliError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="recipmax",
                     description="Reciprocal max-type recurrence toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="iterate the recurrence, emit a CSV table")
    p.add_argument("config")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--mode", choices=("exact", "log"), default="exact")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("classify", help="apply the boundedness tests")
    p.add_argument("config")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("detect-period", help="find the eventual period exactly")
    p.add_argument("config")
    p.add_argument("--max-steps", type=int, default=10**5)
    p.set_defaults(func=cmd_detect_period)

    p = sub.add_parser("reproduce", help="run the literature case suite")
    p.add_argument("--suite", default="all")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("sweep", help="evaluate a grid of schedule substitutions")
    p.add_argument("template", help="base config file")
    p.add_argument("--grid", required=True, help="grid spec file")
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-points", type=int, default=10_000)
    p.add_argument("--max-steps", type=int, default=2 * 10**4)
    p.add_argument("--empirical-steps", type=int, default=2000)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # invariant violations surface as exit 2
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
