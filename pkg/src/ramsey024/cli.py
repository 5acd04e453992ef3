"""Command-line front end.

Subcommands: construct, verify, alpha, search, prob-bound, motzkin,
cert-verify, merge-reports.  Every randomized command takes an explicit
--seed and every run is deterministic given its flags: reruns produce
byte-identical stdout and files.

Exit codes:
  0  pass / success
  1  usage, IO, or malformed input
  2  claim failure (a sweep check refuted, with witness)
  3  internal inconsistency (inputs contradict their own definitions)
  4  certificate hash mismatch (coloring or sweep)
  5  certificate alpha mismatch
  6  certificate alpha not below target n
  7  node budget exceeded
"""

from __future__ import annotations

import argparse
import os
import sys
from itertools import combinations

from . import construction as con
from . import geometry as geo
from . import hypergraph as hg
from . import independence as ind
from . import verifier as ver
from .rng import derive_seed

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CLAIM_FAILURE = 2
EXIT_INCONSISTENT = 3
EXIT_HASH_MISMATCH = 4
EXIT_ALPHA_MISMATCH = 5
EXIT_TARGET_MISSED = 6
EXIT_BUDGET = 7

_CERT_CODE_EXITS = {
    "pass": EXIT_OK,
    "malformed": EXIT_USAGE,
    "sweep-failed": EXIT_CLAIM_FAILURE,
    "coloring-hash-mismatch": EXIT_HASH_MISMATCH,
    "sweep-hash-mismatch": EXIT_HASH_MISMATCH,
    "alpha-mismatch": EXIT_ALPHA_MISMATCH,
    "alpha-not-below-n": EXIT_TARGET_MISSED,
}


def _parse_shard(text: str) -> tuple[int, int]:
    try:
        i, w = text.split("/")
        shard = (int(i), int(w))
    except ValueError:
        raise ValueError(f"shard must look like i/w, got {text!r}") from None
    if not (shard[1] >= 1 and 0 <= shard[0] < shard[1]):
        raise ValueError(f"shard index out of range: {text!r}")
    return shard


def _require_k5(k: int, allow_k4: bool) -> None:
    if k < 5 and not allow_k4:
        raise ValueError(
            f"k={k} is a degenerate case; pass --allow-k4 to run anyway"
        )


def cmd_construct(args: argparse.Namespace) -> int:
    _require_k5(args.k, args.allow_k4)
    params = con.Params(args.k, args.N, args.seed)
    coloring = con.sample_coloring(params)
    link = con.build_link_hypergraph(coloring)
    parity = con.build_parity_hypergraph(link)
    os.makedirs(args.out, exist_ok=True)
    cpath = os.path.join(args.out, "coloring.txt")
    lpath = os.path.join(args.out, "link.edges")
    ppath = os.path.join(args.out, "parity.edges")
    con.save_coloring(coloring, cpath)
    hg.save_edge_set(link.edge_set, lpath)
    hg.save_edge_set(parity.edge_set, ppath)
    print(f"wrote {cpath} ({len(coloring.table)} entries)")
    print(f"wrote {lpath} ({len(link.edge_set)} edges)")
    print(f"wrote {ppath} ({len(parity.edge_set)} edges)")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    coloring = con.load_coloring(args.coloring) if args.coloring else None
    if args.link:
        link = hg.load_edge_set(args.link)
    elif coloring is not None:
        link = con.build_link_hypergraph(coloring).edge_set
    else:
        raise ValueError("need --coloring or --link")
    if args.parity:
        parity = hg.load_edge_set(args.parity)
    else:
        parity = con.build_parity_hypergraph(link).edge_set
    _require_k5(parity.uniformity, args.allow_k4)
    shard = _parse_shard(args.shard) if args.shard else None
    seed = coloring.seed if coloring is not None else None
    report = ver.full_sweep(link, parity, seed=seed, shard=shard)
    text = ver.format_report(report)
    sys.stdout.write(text)
    if args.report:
        with open(args.report, "w", newline="\n") as fh:
            fh.write(text)
    if args.figures:
        from . import figures

        os.makedirs(args.figures, exist_ok=True)
        figures.save_hcount_figure(report, os.path.join(args.figures, "sweep_hcounts.png"))
        figures.save_structure_figure(
            report, os.path.join(args.figures, "sweep_structures.png")
        )
    if not report.verdict:
        if args.report and coloring is not None:
            repro = args.report + ".repro"
            with open(repro, "w", newline="\n") as fh:
                fh.write(con.format_coloring(coloring))
                for f in report.failures:
                    fh.write(f.line + "\n")
        return EXIT_CLAIM_FAILURE
    return EXIT_OK


def cmd_alpha(args: argparse.Namespace) -> int:
    es = hg.load_edge_set(args.input)
    try:
        result = ind.alpha_exact(es, node_budget=args.budget)
    except ind.NodeBudgetExceeded as exc:
        print(f"budget exceeded after {exc.nodes} nodes (best {exc.best_size})")
        return EXIT_BUDGET
    print(f"alpha {result.alpha}")
    print("witness " + " ".join(str(v) for v in result.witness.members))
    print(f"nodes {result.nodes}")
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    _require_k5(args.k, args.allow_k4)
    params = con.Params(args.k, args.N, args.seed)
    result = ind.search_colorings(params, args.trials, args.n)
    ind.save_certificate(result.best, args.out)
    print(f"trials {args.trials}")
    print(f"best-seed {result.best.seed}")
    print(f"best-alpha {result.best.alpha}")
    print(f"alpha-range {min(result.alphas)} {max(result.alphas)}")
    print(f"cert {args.out}")
    if args.figures:
        from . import figures

        os.makedirs(args.figures, exist_ok=True)
        figures.save_alpha_figure(
            result.alphas, os.path.join(args.figures, "search_alpha.png")
        )
    return EXIT_OK


def cmd_prob_bound(args: argparse.Namespace) -> int:
    try:
        prob = ind.edge_probability_exact(args.k)
    except ValueError:
        if args.seed is None:
            raise ValueError(
                f"k={args.k} needs monte-carlo estimation; pass an explicit --seed"
            ) from None
        prob = ind.edge_probability_monte_carlo(args.k, args.mc_samples, args.seed)
    packing = ind.greedy_steiner_packing(args.n, args.k)
    m = len(packing.blocks)
    n_eval = args.N if args.N is not None else args.n
    if prob.method == "exhaustive":
        print(f"p exact {prob.p} = {float(prob.p):.6e}")
    else:
        print(
            f"p monte-carlo {prob.p} = {float(prob.p):.6e} (samples {prob.samples})"
        )
    if not 0 < prob.p < 1:
        raise ValueError(
            f"estimated p = {prob.p} leaves the bound undefined; "
            "increase --mc-samples"
        )
    bound = ind.union_bound(args.k, args.n, n_eval, prob.p, m)
    print(f"m {m}")
    print(
        f"bound N={n_eval} log2 {bound.log2_value:.6e} "
        f"{'feasible' if bound.feasible else 'infeasible'}"
    )
    if bound.max_feasible_N is None:
        print("max-feasible-N above 2^4096 (cap)")
    else:
        print(
            f"max-feasible-N {bound.max_feasible_N} "
            f"log2 {bound.max_feasible_log2_N:.6f}"
        )
    if args.figures:
        from . import figures

        os.makedirs(args.figures, exist_ok=True)
        figures.save_bound_figure(
            args.k, args.n, prob.p, m, os.path.join(args.figures, "union_bound.png")
        )
    return EXIT_OK


def cmd_motzkin(args: argparse.Namespace) -> int:
    if args.points < args.d + 3:
        raise ValueError(f"need at least d+3 = {args.d + 3} points")
    counts: dict[int, int] = {}
    good = 0
    total = 0
    rejections = 0
    for t in range(args.trials):
        config, rej = geo.sample_configuration(
            args.d, args.points, derive_seed(args.seed, t), args.coord_range
        )
        rejections += rej
        for labels in combinations(range(1, args.points + 1), args.d + 3):
            count, ok = geo.motzkin_count(config, labels)
            counts[count] = counts.get(count, 0) + 1
            total += 1
            good += ok
    print(f"{good}/{total} in {{0,2,4}}")
    print("counts " + " ".join(f"{v}:{counts[v]}" for v in sorted(counts)))
    print(f"rejections {rejections}")
    if args.figures:
        from . import figures

        os.makedirs(args.figures, exist_ok=True)
        figures.save_motzkin_figure(
            counts, args.d, os.path.join(args.figures, "motzkin_counts.png")
        )
    return EXIT_OK if good == total else EXIT_CLAIM_FAILURE


def cmd_cert_verify(args: argparse.Namespace) -> int:
    try:
        cert = ind.load_certificate(args.cert)
    except ind.MalformedCertificateError as exc:
        print(f"cert-verify malformed ({exc})")
        return EXIT_USAGE
    coloring = con.load_coloring(args.coloring) if args.coloring else None
    verdict = ind.verify_certificate(cert, coloring)
    print(f"cert-verify {verdict.code} ({verdict.detail})")
    return _CERT_CODE_EXITS[verdict.code]


def cmd_merge_reports(args: argparse.Namespace) -> int:
    reports = []
    for path in args.inputs:
        with open(path, "r") as fh:
            reports.append(ver.parse_report(fh.read()))
    merged = ver.merge_reports(reports)
    text = ver.format_report(merged)
    with open(args.out, "w", newline="\n") as fh:
        fh.write(text)
    print(f"merged {len(reports)} reports -> {args.out}")
    return EXIT_OK if merged.verdict else EXIT_CLAIM_FAILURE


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; keep 2 reserved for claim failures."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ramsey024",
        description="pair-coloring hypergraphs, 0/2/4 sweeps, independence "
        "certificates, convex position",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="sample a coloring and dump the systems")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--allow-k4", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="sweep every check over an instance")
    p.add_argument("--coloring", help="coloring file (rebuilds both systems)")
    p.add_argument("--link", help="edge-list file overriding the link system")
    p.add_argument("--parity", help="edge-list file overriding the parity system")
    p.add_argument("--shard", help="i/w slice of both subset streams")
    p.add_argument("--report", help="also write the report here")
    p.add_argument("--figures", help="directory for PNG charts")
    p.add_argument("--allow-k4", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("alpha", help="exact independence number of an edge list")
    p.add_argument("--input", required=True)
    p.add_argument("--budget", type=int, default=None, help="node budget")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("search", help="minimum-alpha instance over derived seeds")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--seed", type=int, required=True, help="master seed")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="target independence bound")
    p.add_argument("--out", required=True, help="certificate file")
    p.add_argument("--figures", help="directory for PNG charts")
    p.add_argument("--allow-k4", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("prob-bound", help="edge probability and first-moment bound")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, default=None, help="evaluate the bound here")
    p.add_argument("--mc-samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=None, help="for monte-carlo fallback")
    p.add_argument("--figures", help="directory for PNG charts")
    p.set_defaults(func=cmd_prob_bound)

    p = sub.add_parser("motzkin", help="0/2/4 verdicts over random point sets")
    p.add_argument("--d", type=int, required=True, choices=(2, 3))
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--coord-range", type=int, default=10**4)
    p.add_argument("--figures", help="directory for PNG charts")
    p.set_defaults(func=cmd_motzkin)

    p = sub.add_parser("cert-verify", help="recheck a lower-bound certificate")
    p.add_argument("--cert", required=True)
    p.add_argument("--coloring", help="external coloring if not embedded")
    p.set_defaults(func=cmd_cert_verify)

    p = sub.add_parser("merge-reports", help="combine shard sweep reports")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_merge_reports)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ver.InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ind.SweepFailureError as exc:
        print(f"sweep failure: {exc}", file=sys.stderr)
        return EXIT_CLAIM_FAILURE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
