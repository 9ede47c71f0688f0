"""Command-line front end: enumeration, tracing, exhaustive verification.

Exit codes are a stable contract: 0 success, 1 verification failure,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import config as configs
from . import engine, gather2, range1, render

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

DEFAULT_OUT_DIR = "trigather-out"


def _all_stay(view: engine.View) -> engine.Move:
    return None


# algorithm id -> (decision function, visibility range)
ALGORITHMS: dict[str, tuple[engine.DecisionFunction, int]] = {
    gather2.ALGORITHM_ID: (gather2.decide_move, 2),
    gather2.ALGORITHM_ID_VERBATIM: (gather2.decide_verbatim, 2),
    "all-stay": (_all_stay, 2),
}


@dataclass(frozen=True)
class ConfigResult:
    config_id: int
    robots: tuple
    outcome: engine.Outcome
    steps: int
    min_connected: bool

    @property
    def gathered(self) -> bool:
        return self.outcome.kind == engine.OutcomeKind.GATHERED


@dataclass(frozen=True)
class VerificationSummary:
    algorithm: str
    n: int
    total: int
    gathered: int
    failures: tuple[ConfigResult, ...]
    max_steps_observed: int
    wall_time: float
    results: tuple[ConfigResult, ...]

    @property
    def outcome_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for r in self.results:
            counts[r.outcome.token()] = counts.get(r.outcome.token(), 0) + 1
        return counts


def _verify_chunk(args: tuple) -> tuple[list, list]:
    """Worker: run one chunk of configurations, return records and failure traces."""
    algorithm, indexed, max_steps = args
    decide, visibility = ALGORITHMS[algorithm]
    records = []
    failure_traces = []
    for idx, robots in indexed:
        trace = engine.run(frozenset(robots), decide, visibility, max_steps)
        records.append(
            (idx, robots, trace.outcome, len(trace.steps), trace.min_connected)
        )
        if trace.outcome.kind != engine.OutcomeKind.GATHERED:
            failure_traces.append((idx, engine.trace_to_lines(trace, algorithm)))
    return records, failure_traces


def verify_sweep(
    n: int,
    algorithm: str,
    max_steps: int = engine.DEFAULT_MAX_STEPS,
    jobs: int | None = None,
) -> tuple[VerificationSummary, list[tuple[int, list[str]]]]:
    """Run an algorithm over every enumerated configuration of size n.

    Results are merged in canonical enumeration order regardless of the
    number of worker processes, so output is independent of scheduling.
    """
    if algorithm not in ALGORITHMS:
        raise KeyError(f"unknown algorithm {algorithm!r}")
    jobs = jobs or os.cpu_count() or 1
    started = time.perf_counter()
    indexed = [
        (idx, tuple(sorted(cfg)))
        for idx, cfg in enumerate(configs.enumerate_connected(n))
    ]
    if jobs <= 1 or len(indexed) < 64:
        chunk_outputs = [_verify_chunk((algorithm, indexed, max_steps))]
    else:
        size = (len(indexed) + jobs - 1) // jobs
        chunks = [
            (algorithm, indexed[i : i + size], max_steps)
            for i in range(0, len(indexed), size)
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunk_outputs = list(pool.map(_verify_chunk, chunks))

    results = []
    failure_traces = []
    for records, failures in chunk_outputs:
        results.extend(
            ConfigResult(idx, robots, outcome, steps, ok)
            for idx, robots, outcome, steps, ok in records
        )
        failure_traces.extend(failures)
    results.sort(key=lambda r: r.config_id)
    failure_traces.sort(key=lambda f: f[0])
    summary = VerificationSummary(
        algorithm=algorithm,
        n=n,
        total=len(results),
        gathered=sum(1 for r in results if r.gathered),
        failures=tuple(r for r in results if not r.gathered),
        max_steps_observed=max((r.steps for r in results), default=0),
        wall_time=time.perf_counter() - started,
        results=tuple(results),
    )
    return summary, failure_traces


def summary_csv_rows(summary: VerificationSummary) -> list[str]:
    rows = ["config_id,outcome,steps,min_connected"]
    for r in summary.results:
        rows.append(
            f"{r.config_id},{r.outcome.token()},{r.steps},{str(r.min_connected).lower()}"
        )
    return rows


def _summary_json(summary: VerificationSummary) -> dict:
    return {
        "algorithm": summary.algorithm,
        "n": summary.n,
        "total": summary.total,
        "gathered": summary.gathered,
        "failures": [r.config_id for r in summary.failures],
        "max_steps_observed": summary.max_steps_observed,
        "outcomes": summary.outcome_counts,
        "wall_time_seconds": round(summary.wall_time, 3),
    }


def _print_summary(summary: VerificationSummary, fmt: str) -> None:
    import json as _json

    if fmt == "csv":
        print("\n".join(summary_csv_rows(summary)))
        return
    if fmt == "json":
        print(_json.dumps(_summary_json(summary), sort_keys=True))
        return
    if summary.n != 7:
        print("informational: gathering is defined for 7 robots;"
              " outcomes reported without assertion")
    print(
        f"algorithm={summary.algorithm} n={summary.n} total={summary.total}"
        f" gathered={summary.gathered} failures={len(summary.failures)}"
        f" max-steps-observed={summary.max_steps_observed}"
        f" wall-time={summary.wall_time:.1f}s"
    )
    counts = summary.outcome_counts
    print("outcomes: " + " ".join(f"{k}={counts[k]}" for k in sorted(counts)))
    for r in summary.failures:
        print(f"failure: config-{r.config_id} outcome={r.outcome.token()} steps={r.steps}")


def _write_verify_artifacts(
    out_dir: Path, summary: VerificationSummary, failure_traces: list[tuple[int, list[str]]]
) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "summary.csv").write_text("\n".join(summary_csv_rows(summary)) + "\n")
    if failure_traces:
        fail_dir = out_dir / "failures"
        fail_dir.mkdir(exist_ok=True)
        for idx, lines in failure_traces:
            (fail_dir / f"config-{idx}.trace").write_text("\n".join(lines) + "\n")


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _cmd_enumerate(ns: argparse.Namespace) -> int:
    if not 1 <= ns.n <= configs.MAX_ENUMERATION_SIZE:
        return _usage_error(f"--n must be between 1 and {configs.MAX_ENUMERATION_SIZE}")
    shapes = configs.enumerate_connected(ns.n)
    print(f"n={ns.n} count={len(shapes)}")
    if ns.out:
        Path(ns.out).write_text(
            "".join(configs.config_to_json(c) + "\n" for c in shapes)
        )
    return EXIT_OK


def _cmd_verify(ns: argparse.Namespace) -> int:
    if not 1 <= ns.n <= configs.MAX_ENUMERATION_SIZE:
        return _usage_error(f"--n must be between 1 and {configs.MAX_ENUMERATION_SIZE}")
    if ns.algorithm not in ALGORITHMS:
        return _usage_error(
            f"unknown algorithm {ns.algorithm!r}; known: {', '.join(sorted(ALGORITHMS))}"
        )
    summary, failure_traces = verify_sweep(ns.n, ns.algorithm, ns.max_steps, ns.jobs)
    _write_verify_artifacts(Path(ns.out_dir), summary, failure_traces)
    _print_summary(summary, ns.format)
    if ns.n == 7 and summary.failures:
        return EXIT_FAILURE
    return EXIT_OK


def _load_config_file(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    return configs.config_from_json(text)


def _cmd_run(ns: argparse.Namespace) -> int:
    if ns.algorithm not in ALGORITHMS:
        return _usage_error(
            f"unknown algorithm {ns.algorithm!r}; known: {', '.join(sorted(ALGORITHMS))}"
        )
    try:
        cfg = _load_config_file(ns.config)
    except ValueError as exc:
        return _usage_error(f"{ns.config}: {exc}")
    if not configs.is_connected(cfg):
        return _usage_error(f"{ns.config}: configuration is not connected")
    decide, visibility = ALGORITHMS[ns.algorithm]
    trace = engine.run(cfg, decide, visibility, ns.max_steps)

    out_dir = Path(ns.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(ns.config).stem or "run"
    trace_path = out_dir / f"{stem}.trace"
    trace_path.write_text("\n".join(engine.trace_to_lines(trace, ns.algorithm)) + "\n")

    if ns.render == "ascii":
        print(render.ascii_trace(trace), end="")
    elif ns.render == "svg":
        for i, doc in enumerate(render.svg_trace(trace)):
            (out_dir / f"{stem}-step{i:03d}.svg").write_text(doc)
    print(f"outcome={trace.outcome.token()} steps={len(trace.steps)} trace={trace_path}")
    return EXIT_OK


def _cmd_range1(ns: argparse.Namespace) -> int:
    try:
        table = range1.table_from_text(Path(ns.table).read_text())
    except OSError as exc:
        return _usage_error(f"cannot read {ns.table}: {exc}")
    except ValueError as exc:
        return _usage_error(f"{ns.table}: {exc}")
    if ns.config in range1.BUILTIN_CONFIGS:
        cfg = range1.BUILTIN_CONFIGS[ns.config].robots
    else:
        try:
            cfg = _load_config_file(ns.config)
        except ValueError as exc:
            return _usage_error(
                f"{ns.config!r} is neither a built-in configuration"
                f" ({', '.join(sorted(range1.BUILTIN_CONFIGS))}) nor a readable file: {exc}"
            )
    if not configs.is_connected(cfg):
        return _usage_error(f"{ns.config}: configuration is not connected")
    verdict = range1.check_table(table, cfg, ns.max_steps)
    out_dir = Path(ns.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    trace_path = out_dir / "range1.trace"
    trace_path.write_text(
        "\n".join(engine.trace_to_lines(verdict.trace, f"range1:{Path(ns.table).name}")) + "\n"
    )
    print(f"outcome={verdict.outcome.token()} steps={len(verdict.trace.steps)}")
    return EXIT_OK


def _cmd_dump_guards(ns: argparse.Namespace) -> int:
    print(gather2.dump_guards(), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trigather",
        description="Gathering of oblivious robots on the triangular grid:"
        " simulate, render, and exhaustively verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="count/emit connected configurations up to translation")
    p.add_argument("--n", type=int, required=True, help="number of robots (1..8)")
    p.add_argument("--out", help="write all canonical configurations, one JSON object per line")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify", help="run an algorithm over every connected configuration")
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--algorithm", default=gather2.ALGORITHM_ID)
    p.add_argument("--max-steps", type=int, default=engine.DEFAULT_MAX_STEPS)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    p.add_argument("--out-dir", default=DEFAULT_OUT_DIR)
    p.add_argument("--format", choices=("human", "csv", "json"), default="human")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("run", help="trace one configuration file")
    p.add_argument("--config", required=True, help="configuration JSON file")
    p.add_argument("--algorithm", default=gather2.ALGORITHM_ID)
    p.add_argument("--max-steps", type=int, default=engine.DEFAULT_MAX_STEPS)
    p.add_argument("--render", choices=("none", "ascii", "svg"), default="none")
    p.add_argument("--out-dir", default=DEFAULT_OUT_DIR)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("range1", help="check a visibility-range-1 rule table on a configuration")
    p.add_argument("--table", required=True, help="rule-table text file")
    p.add_argument("--config", required=True, help="built-in configuration name or JSON file")
    p.add_argument("--max-steps", type=int, default=engine.DEFAULT_MAX_STEPS)
    p.add_argument("--out-dir", default=DEFAULT_OUT_DIR)
    p.set_defaults(func=_cmd_range1)

    p = sub.add_parser("dump-guards", help="print the compiled guard table for auditing")
    p.set_defaults(func=_cmd_dump_guards)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    return ns.func(ns)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
