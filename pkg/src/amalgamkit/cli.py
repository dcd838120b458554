"""Command line entry point.

Exit codes: 0 all checks pass, 1 some check failed, 2 usage error,
3 resource limit hit (partial report still written).
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable

from . import __version__
from .report import Suite, render
from .todd_coxeter import DEFAULT_MAX_COSETS, STRATEGIES, EnumerationExhausted

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit with 2, as argparse does, but keep it explicit
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="report path (default: stdout); figures go next to it")
    common.add_argument("--cache", type=Path, default=Path(".cache"),
                        help="coset-table cache directory (AMALGAM_CACHE overrides)")
    common.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    common.add_argument("--strategy", choices=STRATEGIES + ("both",), default="hlt")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--deep", action="store_true", help="include the He runs")
    common.add_argument("--no-timing", action="store_true", help="zero the elapsed fields")

    p = _Parser(prog="amalgamkit", description="Verification suites for the rank-3 amalgams")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("structure", parents=[common], help="G1, G2 and B structure")
    sub.add_parser("amalgams", parents=[common], help="presentations, twists, faithfulness")
    sub.add_parser("modules", parents=[common], help="invariant subspaces and complements")
    c = sub.add_parser("complete", parents=[common], help="coset enumeration of a target")
    c.add_argument("--target", required=True, choices=("g1", "g2", "b", "m24", "he", "a16"))
    g = sub.add_parser("graph", parents=[common], help="coset graph checks")
    g.add_argument("--completion", required=True, choices=("m24", "he"))
    g.add_argument("--edges", type=Path, help="write the Delta edge list here")
    sub.add_parser("all", parents=[common], help="everything (He only with --deep)")
    return p


# ---------------------------------------------------------------------------
# jobs: module-level so they can run in worker processes


def _job_structure(name: str) -> Suite:
    from . import amalgamlab as L

    return {"g1": L.structure_suite_g1, "g2": L.structure_suite_g2, "b": L.structure_suite_b}[name]()


def _job_amalgams(name: str) -> Suite:
    from . import amalgamlab as L
    from .completion import presentations_suite

    if name == "presentations":
        return presentations_suite()
    if name == "twists":
        return L.build_twists()[1]
    return {"distinct": L.distinct_coset_check, "faithfulness": L.faithfulness_suite}[name]()


def _job_modules(name: str) -> Suite:
    from . import amalgamlab as L

    return {"invariants": L.modules_suite, "complements": L.complements_suite}[name]()


def _job_complete(target: str, cache, max_cosets: int, strategy: str) -> Suite:
    from .completion import completion_suite

    strategies = STRATEGIES if strategy == "both" else (strategy,)
    return completion_suite(target, cache, max_cosets, strategies)


def _job_graph(target: str, cache, max_cosets: int, strategy: str, edges) -> Suite:
    from .cosetgraph import build_graph, check_axioms

    strat = "hlt" if strategy == "both" else strategy
    d = build_graph(target, cache, max_cosets, strat)
    r = check_axioms(d, name=f"graph.{target}")
    if edges is not None:
        d.write_edge_list(edges)
    return r


def _skipped(name: str, check: str, note: str) -> Suite:
    s = Suite(name)
    s.skip(check, None, note)
    return s


def plan(args) -> list[tuple[Callable, tuple]]:
    cache = os.environ.get("AMALGAM_CACHE") or args.cache
    tc = (cache, args.max_cosets, args.strategy)
    cmd = args.command
    jobs: list[tuple[Callable, tuple]] = []
    if cmd in ("structure", "all"):
        jobs += [(_job_structure, (n,)) for n in ("g1", "g2", "b")]
    if cmd in ("amalgams", "all"):
        jobs += [(_job_amalgams, (n,)) for n in ("presentations", "twists", "distinct", "faithfulness")]
    if cmd in ("modules", "all"):
        jobs += [(_job_modules, (n,)) for n in ("invariants", "complements")]
    if cmd == "complete":
        jobs.append((_job_complete, (args.target,) + tc))
    if cmd == "all":
        for t in ("g1", "g2", "b", "a16", "m24") + (("he",) if args.deep else ()):
            jobs.append((_job_complete, (t,) + tc))
    if cmd == "graph":
        if args.completion == "he" and not args.deep:
            jobs.append((_skipped, ("graph.he", "all", "He graph needs --deep")))
        else:
            jobs.append((_job_graph, (args.completion,) + tc + (args.edges,)))
    if cmd == "all":
        for t in ("m24",) + (("he",) if args.deep else ()):
            jobs.append((_job_graph, (t,) + tc + (None,)))
    return jobs


def run_jobs(jobs, n: int) -> tuple[list[Suite], BaseException | None]:
    """Run jobs in order; stop at the first resource error and return what finished."""
    done: list[Suite] = []
    if n <= 1:
        for fn, a in jobs:
            try:
                done.append(fn(*a))
            except (EnumerationExhausted, MemoryError) as exc:
                return done, exc
        return done, None
    with ProcessPoolExecutor(max_workers=n) as ex:
        futs = [ex.submit(fn, *a) for fn, a in jobs]
        err = None
        for f in futs:
            try:
                done.append(f.result())
            except (EnumerationExhausted, MemoryError) as exc:
                err = err or exc
        return done, err


def input_hashes() -> dict[str, str]:
    from .completion import target_presentation

    out = {}
    for t in ("g1", "g2", "b", "m24", "he", "a16"):
        p, sub = target_presentation(t)
        h = hashlib.sha256(p.to_text_plain().encode())
        for w in sub:
            h.update(b"|" + ",".join(map(str, w.letters)).encode())
        out[t] = h.hexdigest()[:16]
    return out


def write_figures(suites: list[Suite], out: Path) -> list[Path]:
    from .plotting import figure_path, plot_towers, plot_traces

    written = []
    traces = {}
    for s in suites:
        for k, v in s.artifacts.items():
            if k.startswith("table.") and not getattr(v, "from_cache", True):
                traces[f"{s.name} {k[6:]}"] = v.trace
        if "delta_tower" in s.artifacts and s.artifacts["delta_tower"] is not None:
            written.append(plot_towers(s.artifacts["delta_tower"], s.artifacts["gamma_tower"],
                                       figure_path(out, f"{s.name}.towers"), s.name))
    if traces:
        p = plot_traces(traces, figure_path(out, "trace"))
        if p:
            written.append(p)
    return written


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1 or args.max_cosets < 1:
        print("amalgamkit: error: --jobs and --max-cosets must be positive", file=sys.stderr)
        return EXIT_USAGE
    suites, err = run_jobs(plan(args), args.jobs)
    if args.no_timing:
        for s in suites:
            for c in s.checks:
                c.elapsed = 0.0
    if err is not None:
        code = EXIT_RESOURCE
    else:
        code = EXIT_OK if all(s.ok for s in suites) else EXIT_FAIL
    text = render(suites, input_hashes(), code, None if err is None else f"{type(err).__name__}: {err}")
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text)
        for p in write_figures(suites, args.out):
            print(f"wrote {p}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
