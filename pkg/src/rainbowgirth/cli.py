"""``rainbow-girth`` command line.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 infeasible
experiment (no sampling parameters, or no successful sample).
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from contextlib import contextmanager

from . import constructions as cons
from .experiments import (
    ExperimentConfig,
    LowerBoundRecord,
    TrialRecord,
    fit_log_constant,
    lower_bound_experiment,
    records_to_csv,
    records_to_json,
    run_trials,
)
from .graph_core import ECGParseError, Kind, census, parse, reduce_graph, serialize
from .probability import (
    DEFAULT_EPS_GRID,
    DEFAULT_P_GRID,
    MM_CASE1,
    MM_CASE2,
    TT_SHARED_VERTEX,
    SamplingParameters,
    bs_bound,
    derivative_condition,
    disjoint,
    enumerate_survival,
    find_sampling_parameters,
    inequality_margin,
    joint_survival_probability,
    survival_probability,
)
from .rainbow_search import brute_force_rainbow_girth, default_max_len, rainbow_girth_exact
from .sampler import find_short_rainbow_cycle, split_seed

DEFAULT_SEED = 20240601

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_INFEASIBLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x]


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _read_graph(path: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse(text)


# --- subcommands -------------------------------------------------------------------

def cmd_gen(a) -> int:
    fam = a.family
    if fam in ("random-mixed", "lower-bound") and a.n is None:
        raise UsageError(f"gen {fam} needs --n")
    if fam == "star-extremal":
        g = cons.star_extremal(a.k, a.r)
    elif fam == "half-barrier":
        g = cons.half_barrier(a.m)
        _report_half_barrier(g, a.m)
    elif fam == "random-mixed":
        if a.alpha is not None:
            counts = cons.mixed_counts(a.n, a.alpha, a.matching_share)
        else:
            counts = {Kind.SINGLE: a.single, Kind.MATCHING2: a.matching2, Kind.TRIANGLE: a.triangle, Kind.STAR: a.star}
        g = cons.random_mixed(a.n, counts, a.seed)
    elif fam == "digraph":
        text = sys.stdin.read() if a.arcs == "-" else open(a.arcs, encoding="utf-8").read()
        arcs = [tuple(int(x) for x in ln.split()) for ln in text.splitlines() if ln.strip()]
        n = a.n if a.n is not None else 1 + max(max(arc) for arc in arcs)
        g = cons.digraph_to_edge_colored(cons.Digraph(n, tuple(arcs)))
    elif fam == "lower-bound":
        max_len = math.floor(a.c * math.log2(a.n))
        fam_ = cons.prune_short_rainbow_cycles(cons.prune_overlaps(cons.lower_bound_family(a.n, a.seed)), max_len)
        print(f"# lower-bound family: {len(fam_)} tuples, no rainbow cycle of length <= {max_len}", file=sys.stderr)
        g = cons.realize_tuples(fam_)
    else:  # argparse restricts choices
        raise UsageError(fam)
    with _output(a.out) as fh:
        fh.write(serialize(g))
    return EXIT_OK


def _report_half_barrier(g, m: int) -> None:
    claimed = cons.half_barrier_claimed_girth(m)
    if g.n <= 14:
        res, how = brute_force_rainbow_girth(g), "brute force"
    else:
        res, how = rainbow_girth_exact(g, claimed), f"exact search up to {claimed}"
    found = res.length
    msg = f"# half-barrier m={m}: rainbow girth {found if found else f'> {claimed}'} ({how}); claimed 2n/3 = {claimed}"
    if found is not None and found != claimed:
        msg += f"; DISCREPANCY, witness cycle {' '.join(map(str, res.witness.vertices))}"
    print(msg, file=sys.stderr)


def cmd_rgirth(a) -> int:
    g = _read_graph(a.input)
    if a.oracle:
        res = brute_force_rainbow_girth(g)
    else:
        max_len = a.max_len if a.max_len is not None else default_max_len(g.n)
        res = rainbow_girth_exact(g, max_len)
    with _output(a.out) as fh:
        if res.length is None:
            fh.write(f"rgirth none (no rainbow cycle of length <= {res.exhausted_bound})\n")
        else:
            fh.write(f"rgirth {res.length}\n")
            if a.witness:
                fh.write("cycle " + " ".join(map(str, res.witness.vertices)) + "\n")
                fh.write("colors " + " ".join(map(str, res.witness.colors)) + "\n")
    return EXIT_OK


def cmd_sample(a) -> int:
    g = _read_graph(a.input)
    params = None
    if not a.auto_params and (a.p is not None or a.eps is not None):
        if a.p is None or a.eps is None:
            raise UsageError("--p and --eps must be given together")
        gamma = inequality_margin(census(reduce_graph(g)), a.p, a.eps)
        if gamma <= 0:
            print(f"(p={a.p}, eps={a.eps}) violates the sampling inequality (margin {gamma:.6g})", file=sys.stderr)
            return EXIT_INFEASIBLE
        params = SamplingParameters(a.p, a.eps, gamma)
    res = find_short_rainbow_cycle(g, params, a.tries, a.seed)
    with _output(a.out) as fh:
        rep = res.report
        if rep is not None:
            pr = rep.params
            fh.write(f"params p={pr.p:.6g} eps={pr.epsilon:.6g} beta={pr.beta:.6g} gamma={pr.gamma:.6g}\n")
            fh.write(
                f"trial {rep.trial_index} |H|={rep.h_size} survivors M={rep.survivors[0]} "
                f"T={rep.survivors[1]} S={rep.survivors[2]} rainbow_edges={rep.rainbow_edge_count}\n"
            )
        if not res.success:
            fh.write(f"failure: {res.reason}\n")
            if rep is not None:
                fh.write(f"closest miss: size slack {rep.size_slack:.6g}, edge slack {rep.edge_slack:.6g}\n")
            return EXIT_INFEASIBLE
        bound = f"{res.girth_bound:.6g}" if res.girth_bound is not None else "n/a"
        fh.write(f"success after {res.tries} tries: rainbow cycle of length {res.length} (girth bound {bound})\n")
        if a.emit_witness:
            fh.write("cycle " + " ".join(map(str, res.cycle.vertices)) + "\n")
            fh.write("colors " + " ".join(map(str, res.cycle.colors)) + "\n")
    return EXIT_OK


def cmd_bound(a) -> int:
    try:
        value = bs_bound(a.n, a.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    with _output(a.out) as fh:
        fh.write(f"{value:.6g}\n")
    return EXIT_OK


def cmd_params(a) -> int:
    g = _read_graph(a.input)
    cen = census(reduce_graph(g))
    with _output(a.out) as fh:
        fh.write(
            f"census n={cen.n} matching2={cen.n_matching2} triangle={cen.n_triangle} single={cen.n_single} "
            f"alpha={cen.alpha_effective:.6g}\n"
        )
        fh.write(f"f'(1) = {derivative_condition(cen):.6g}\n")
        pr = find_sampling_parameters(cen, DEFAULT_P_GRID, DEFAULT_EPS_GRID)
        if pr is None:
            fh.write("no (p, eps) on the default grid satisfies the sampling inequality\n")
            return EXIT_INFEASIBLE
        fh.write(f"p={pr.p:.6g} eps={pr.epsilon:.6g} beta={pr.beta:.6g} gamma={pr.gamma:.6g}\n")
    return EXIT_OK


def verification_rows(tol: float = 1e-12, points: int = 101):
    """(name, max abs error, ok) for every closed form against enumeration."""
    grid = [i / (points - 1) for i in range(points)]
    checks = [(k.value, (lambda p, k=k: survival_probability(k, p)), k) for k in (Kind.SINGLE, Kind.MATCHING2, Kind.TRIANGLE)]
    for cfg in (MM_CASE1, MM_CASE2, TT_SHARED_VERTEX, disjoint(Kind.MATCHING2, Kind.TRIANGLE), disjoint(Kind.SINGLE, Kind.TRIANGLE)):
        name = cfg.tag if cfg.tag != "disjoint" else f"disjoint[{cfg.kinds[0].value},{cfg.kinds[1].value}]"
        checks.append((name, (lambda p, c=cfg: joint_survival_probability(c, p)), cfg))
    rows = []
    for name, closed, target in checks:
        err = max(abs(closed(p) - enumerate_survival(target, p)) for p in grid)
        rows.append((name, err, err <= tol))
    return rows


def cmd_verify(a) -> int:
    rows = verification_rows()
    with _output(a.out) as fh:
        for name, err, ok in rows:
            fh.write(f"{'PASS' if ok else 'FAIL'} {name:<32} max|closed - enumerated| = {err:.3e}\n")
    return EXIT_OK if all(ok for *_, ok in rows) else EXIT_INVALID


def cmd_exp(a) -> int:
    cfg = ExperimentConfig(
        construction=a.construction,
        n_values=_ints(a.n),
        alphas=_floats(a.alpha),
        trials=a.trials,
        master_seed=a.seed,
        max_tries=a.max_tries,
        timing=a.timing,
    )
    records = run_trials(cfg, jobs=a.jobs)
    fit = None
    try:
        fit = fit_log_constant(records)
        print(f"# fit: C_hat={fit.c_hat:.6g} intercept={fit.intercept:.6g} rms={fit.residual:.6g} ({fit.samples} trials)", file=sys.stderr)
    except ValueError as exc:
        print(f"# fit skipped: {exc}", file=sys.stderr)
    ok = sum(r.outcome == "success" for r in records)
    print(f"# {ok}/{len(records)} trials found a certified rainbow cycle", file=sys.stderr)
    with _output(a.out) as fh:
        fh.write(records_to_json(records, cfg, fit) if a.format == "json" else records_to_csv(records, TrialRecord))
    return EXIT_OK


def cmd_lower_bound(a) -> int:
    seeds = [split_seed(a.seed, i) for i in range(a.seeds)]
    records = lower_bound_experiment(_ints(a.n), a.c, seeds)
    for n in sorted({r.n for r in records}):
        rs = [r for r in records if r.n == n]
        big = sum(r.final_size >= n for r in rs)
        print(
            f"# n={n} L={rs[0].max_len}: final size >= n in {big}/{len(rs)} seeds, "
            f"certified {sum(r.certified for r in rs)}/{len(rs)}",
            file=sys.stderr,
        )
    with _output(a.out) as fh:
        cfg = {"n_values": _ints(a.n), "c": a.c, "seeds": a.seeds, "master_seed": a.seed}
        if a.format == "json":
            fh.write(records_to_json(records, cfg))
        else:
            fh.write(records_to_csv(records, LowerBoundRecord))
    return EXIT_OK if all(r.certified for r in records) else EXIT_INVALID


# --- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=f"master seed (default {DEFAULT_SEED})")
    common.add_argument("--out", default=argparse.SUPPRESS, help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = _Parser(prog="rainbow-girth", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="generate a graph in ECG format")
    g.add_argument("family", choices=("star-extremal", "half-barrier", "random-mixed", "digraph", "lower-bound"))
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--r", type=int, default=3)
    g.add_argument("--m", type=int, default=1)
    g.add_argument("--n", type=int)
    g.add_argument("--alpha", type=float)
    g.add_argument("--matching-share", type=float, default=0.5)
    for kind in ("single", "matching2", "triangle", "star"):
        g.add_argument(f"--{kind}", type=int, default=0)
    g.add_argument("--arcs", default="-", help="file of 'a b' arc lines (digraph family)")
    g.add_argument("--c", type=float, default=0.25)
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("rgirth", parents=[common], help="shortest rainbow cycle of an ECG graph")
    r.add_argument("input", nargs="?", default="-")
    r.add_argument("--max-len", type=int)
    r.add_argument("--oracle", action="store_true", help="exhaustive cycle enumeration (n <= 14)")
    r.add_argument("--witness", action="store_true")
    r.set_defaults(func=cmd_rgirth)

    s = sub.add_parser("sample", parents=[common], help="random-subset search for a short rainbow cycle")
    s.add_argument("input", nargs="?", default="-")
    s.add_argument("--p", type=float)
    s.add_argument("--eps", type=float)
    s.add_argument("--auto-params", action="store_true")
    s.add_argument("--tries", type=int, default=100)
    s.add_argument("--emit-witness", action="store_true")
    s.set_defaults(func=cmd_sample)

    b = sub.add_parser("bound", parents=[common], help="Bollobas-Szemeredi girth bound")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.set_defaults(func=cmd_bound)

    pa = sub.add_parser("params", parents=[common], help="fit (p, eps) for a graph's class census")
    pa.add_argument("input", nargs="?", default="-")
    pa.set_defaults(func=cmd_params)

    v = sub.add_parser("verify", parents=[common], help="closed forms vs exhaustive enumeration")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("exp", parents=[common], help="batch sampling trials")
    e.add_argument("--construction", choices=("random_mixed", "half_barrier"), default="random_mixed")
    e.add_argument("--n", default="500,1000,2000", help="comma-separated vertex counts")
    e.add_argument("--alpha", default="0.75", help="comma-separated alpha values")
    e.add_argument("--trials", type=int, default=10)
    e.add_argument("--max-tries", type=int, default=100)
    e.add_argument("--timing", action="store_true", help="record elapsed_ms (breaks byte-stable output)")
    e.set_defaults(func=cmd_exp)

    lb = sub.add_parser("lower-bound", parents=[common], help="random tuple construction without short rainbow cycles")
    lb.add_argument("--n", default="200,500,1000")
    lb.add_argument("--c", type=float, default=0.25)
    lb.add_argument("--seeds", type=int, default=10)
    lb.set_defaults(func=cmd_lower_bound)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    for name, default in (("seed", DEFAULT_SEED), ("out", None), ("format", "csv"), ("jobs", 1), ("verbose", False)):
        if not hasattr(a, name):
            setattr(a, name, default)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return a.func(a)
    except UsageError as exc:
        print(f"rainbow-girth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ECGParseError as exc:
        print(f"rainbow-girth: invalid graph: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, cons.PlacementError) as exc:
        print(f"rainbow-girth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"rainbow-girth: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
