"""Command-line driver for batch and scripted use.

Subcommands: fit-prior, evaluate, sweep, validate, serve. Exit codes
are script-friendly: 0 success, 1 usage or I/O error, 2 model-level
failure (fit failure, validation below target). JSON output from
`evaluate --json` is byte-identical to the HTTP service's response for
the same inputs; both sides share the engine and the encoder.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import engine
from .cohort import read_cohort_csv
from .decision import DecisionPolicy, posterior_surface
from .errors import FitFailedError, QuarantineModelError
from .prior import PriorSpec, bundled_scenario, fit_prior, load_scenario
from .sensitivity import default_curve, load_curve
from .serialize import encode_json, format_number
from .simulate import oracle_agreement, random_instances

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MODEL = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; 2 is reserved for model failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load_scenario_arg(value: str) -> dict:
    path = Path(value)
    if path.suffix == ".json" or path.exists():
        return load_scenario(path.read_text("utf-8"))
    return bundled_scenario(value)


def _load_curve_arg(value: str | None):
    if value is None:
        return default_curve()
    path = Path(value)
    return load_curve(path.read_text("utf-8"), name=path.stem)


def _cmd_fit_prior(args) -> int:
    try:
        fitted = fit_prior(
            PriorSpec(
                group_size=args.group_size,
                p_any_transmission=args.p_any,
                mean_given_transmission=args.mean_given_k,
            )
        )
        status = "ok"
    except FitFailedError as err:
        if err.best is None:
            print(f"fit failed: {err}", file=sys.stderr)
            return EXIT_MODEL
        fitted, status = err.best, "fit_failed"
    doc = {
        "group_size": fitted.group_size,
        "alpha": fitted.alpha,
        "beta": fitted.beta,
        "fit_residual": fitted.fit_residual,
        "fit_status": status,
        "p_no_transmission": fitted.p_no_transmission,
    }
    if args.json:
        print(encode_json(doc))
    else:
        print(f"alpha:         {format_number(fitted.alpha)}")
        print(f"beta:          {format_number(fitted.beta)}")
        print(f"fit_residual:  {format_number(fitted.fit_residual)}")
        print(f"P(K=0):        {format_number(fitted.p_no_transmission)}")
        if status != "ok":
            print("fit FAILED: targets not reproducible for this group size "
                  "(best-effort parameters shown)")
    return EXIT_OK if status == "ok" else EXIT_MODEL


def _cmd_evaluate(args) -> int:
    scenario = _load_scenario_arg(args.scenario)
    curve = _load_curve_arg(args.curve)
    policy = DecisionPolicy(args.threshold)
    records = read_cohort_csv(Path(args.cohort).read_text("utf-8"))
    evaluation = engine.evaluate_records(
        records,
        scenario["p_any_transmission"],
        scenario["mean_given_transmission"],
        curve,
        policy=policy,
        allow_fit_failure=args.allow_fit_failure,
    )
    if args.json:
        print(encode_json(evaluation.payload()))
        return EXIT_OK
    report = evaluation.report
    sched = evaluation.result.schedule_echo
    print(f"event date:  {report.event_date.isoformat()}")
    print(
        f"group size:  {sched.group_size} "
        f"({sched.tested_total} tested negative, {report.untested_count} untested)"
    )
    if sched.groups:
        days = ", ".join(f"day {d}: {c}" for d, c in sched.groups)
        print(f"schedule:    {days}")
    else:
        print("schedule:    no usable tests")
    for case_id, reason in report.excluded:
        print(f"excluded:    case {case_id} ({reason})")
    if evaluation.fit_status != "ok":
        print(f"prior:       fit FAILED (residual {format_number(evaluation.prior.fit_residual)}), "
              "using best-effort parameters")
    print(f"p0:          {format_number(evaluation.result.p0)}")
    print(f"prior P(K=0): {format_number(evaluation.result.prior_p0)}")
    print(f"decision:    {evaluation.recommendation.action.value} "
          f"(threshold {format_number(policy.threshold)})")
    return EXIT_OK


def _parse_range(text: str) -> range:
    lo, _, hi = text.partition(":")
    return range(int(lo), int(hi) + 1)


def _cmd_sweep(args) -> int:
    scenario = _load_scenario_arg(args.scenario)
    curve = _load_curve_arg(args.curve)
    policy = DecisionPolicy(args.threshold)
    specs = [
        PriorSpec(
            group_size=m,
            p_any_transmission=scenario["p_any_transmission"],
            mean_given_transmission=scenario["mean_given_transmission"],
        )
        for m in _parse_range(args.m_range)
    ]
    rows = posterior_surface(specs, args.day, curve, policy, include_failed=args.include_failed)
    lines = ["group_size,tested,p0,release,status"]
    for row in rows:
        p0 = format_number(row.p0) if row.p0 is not None else ""
        release = "" if row.release is None else str(row.release).lower()
        lines.append(f"{row.group_size},{row.tested},{p0},{release},{row.status}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_validate(args) -> int:
    curve = _load_curve_arg(args.curve)
    instances = random_instances(args.instances, curve, instance_seed=args.instance_seed)
    summary = oracle_agreement(
        instances, curve, seeds=list(range(args.seeds)), replicates=args.replicates
    )
    doc = {
        "evaluations": summary.evaluations,
        "within_three_se": summary.within_three_se,
        "pass_fraction": summary.pass_fraction,
        "worst_sigma": summary.worst_sigma,
    }
    if args.json:
        print(encode_json(doc))
    else:
        print(f"evaluations:     {summary.evaluations}")
        print(f"within 3 SE:     {summary.within_three_se}")
        print(f"pass fraction:   {summary.pass_fraction:.4f}")
        print(f"worst deviation: {summary.worst_sigma:.2f} sigma")
    return EXIT_OK if summary.pass_fraction >= 0.99 else EXIT_MODEL


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    host, _, port = args.listen.partition(":")
    app = create_app(args.store_dir, default_threshold=args.threshold)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quarantine-release")
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit-prior", parents=[], help="fit Beta-binomial prior parameters")
    p_fit.add_argument("--group-size", type=int, required=True)
    p_fit.add_argument("--p-any", type=float, required=True, help="target P(K>0)")
    p_fit.add_argument("--mean-given-k", type=float, required=True, help="target E(K|K>0)")
    p_fit.add_argument("--json", action="store_true")
    p_fit.set_defaults(func=_cmd_fit_prior)

    p_eval = sub.add_parser("evaluate", help="evaluate a cohort line list")
    p_eval.add_argument("--cohort", required=True, help="cohort CSV path")
    p_eval.add_argument("--scenario", required=True, help="bundled scenario name or preset JSON path")
    p_eval.add_argument("--threshold", type=float, default=engine.DEFAULT_THRESHOLD)
    p_eval.add_argument("--curve", help="sensitivity curve CSV path (default: packaged PCR curve)")
    p_eval.add_argument("--allow-fit-failure", action="store_true")
    p_eval.add_argument("--json", action="store_true")
    p_eval.set_defaults(func=_cmd_evaluate)

    p_sweep = sub.add_parser("sweep", help="p0 over an (M, N) grid for one test day")
    p_sweep.add_argument("--m-range", required=True, help="inclusive group-size range, e.g. 13:35")
    p_sweep.add_argument("--day", type=int, required=True)
    p_sweep.add_argument("--scenario", required=True)
    p_sweep.add_argument("--threshold", type=float, default=engine.DEFAULT_THRESHOLD)
    p_sweep.add_argument("--curve")
    p_sweep.add_argument("--include-failed", action="store_true",
                         help="compute failed-fit rows with best-effort parameters")
    p_sweep.add_argument("--out", help="output CSV path (default: stdout)")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_val = sub.add_parser("validate", help="Monte Carlo cross-check of the analytic likelihood")
    p_val.add_argument("--instances", type=int, default=50)
    p_val.add_argument("--replicates", type=int, default=100_000)
    p_val.add_argument("--seeds", type=int, default=20)
    p_val.add_argument("--instance-seed", type=int, default=20210405)
    p_val.add_argument("--curve")
    p_val.add_argument("--json", action="store_true")
    p_val.set_defaults(func=_cmd_validate)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument(
        "--listen",
        default=os.environ.get("QUARANTINE_RELEASE_LISTEN", "127.0.0.1:8000"),
    )
    p_serve.add_argument(
        "--store-dir",
        default=os.environ.get("QUARANTINE_RELEASE_STORE", "./preset-store"),
    )
    p_serve.add_argument(
        "--threshold",
        type=float,
        default=float(os.environ.get("QUARANTINE_RELEASE_THRESHOLD", engine.DEFAULT_THRESHOLD)),
    )
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except FitFailedError as err:
        print(f"fit failed: {err}", file=sys.stderr)
        return EXIT_MODEL
    except QuarantineModelError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_MODEL


if __name__ == "__main__":
    sys.exit(main())
