"""Command-line harness.

Exit codes: 0 success, 1 property violation / counterexample found,
2 usage error.  A ``--config file`` of key=value lines supplies defaults
that explicit flags override.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import adversary, cycles, directions, experiments, shortcuts
from .bigraph import (
    RandomModel,
    complete_bipartite,
    from_bbg,
    mix_seed,
    sample_random,
    to_bbg,
)
from .cycles import CycleCertificate, standard_hamilton


def _read_graph(path: str):
    return from_bbg(Path(path).read_text())


def _read_hamilton(path: str) -> CycleCertificate:
    text = Path(path).read_text().strip()
    parts = text.split()
    if len(parts) < 3 or parts[0] != "cycle":
        raise ValueError(f"{path}: expected 'cycle <t> v0 v1 ...'")
    t = int(parts[1])
    vs = tuple(int(x) for x in parts[2:])
    if len(vs) != t:
        raise ValueError(f"{path}: declared length {t} but {len(vs)} vertices")
    return CycleCertificate(vs)


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_graph_arg(args) -> "tuple":
    """Resolve the graph from --in, or sample/complete from --n/--p/--seed."""
    if getattr(args, "infile", None):
        return _read_graph(args.infile)
    if args.n is None:
        raise ValueError("either --in or --n is required")
    if getattr(args, "p", None) is None:
        return complete_bipartite(args.n)
    p = experiments.parse_p_expression(str(args.p), args.n)
    return sample_random(RandomModel(args.n, p, args.seed))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bipan",
        description="Bipartite bipancyclicity toolkit: generators, cycle "
        "spectrum certification, combinatorial lemma checkers, and "
        "Monte Carlo resilience experiments.",
    )
    parser.add_argument("--config", help="key=value file of flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="sample G(n,n,p) to bbg format")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--p", required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("-o", "--out")

    p_thin = sub.add_parser("thin", help="randomly delete non-Hamilton edges")
    p_thin.add_argument("--in", dest="infile", required=True)
    p_thin.add_argument("--target", type=int, required=True)
    p_thin.add_argument("--seed", type=int, default=0)
    p_thin.add_argument("--hamilton", help="certificate file; default 0..2n-1")
    p_thin.add_argument("-o", "--out")

    p_spec = sub.add_parser("spectrum", help="even-cycle spectrum of a graph")
    p_spec.add_argument("--in", dest="infile", required=True)
    p_spec.add_argument("--mode", choices=["exhaustive", "certificate"])
    p_spec.add_argument("--hamilton", help="certificate file; default 0..2n-1")
    p_spec.add_argument("--budget", type=int, default=cycles.DEFAULT_DFS_BUDGET)
    p_spec.add_argument("-o", "--out")
    p_spec.add_argument("--figures", help="render the spectrum strip to this PNG")

    p_t1 = sub.add_parser("theorem1", help="exhaustive dense-subgraph verification")
    p_t1.add_argument("--n", type=int, required=True)

    p_rs = sub.add_parser("resilience-sweep", help="Monte Carlo bipancyclicity sweep")
    p_rs.add_argument("--n", type=int, required=True)
    p_rs.add_argument("--p", required=True)
    p_rs.add_argument("--eps", type=float, default=0.2)
    p_rs.add_argument("--trials", type=int, default=20)
    p_rs.add_argument("--seed", type=int, default=0)
    p_rs.add_argument("--budget", type=int, default=cycles.DEFAULT_DFS_BUDGET)
    p_rs.add_argument("-o", "--out")
    p_rs.add_argument("--figures", help="render a sweep summary to this PNG")

    p_sc = sub.add_parser("shortcut-census", help="shortcut counts vs. the n^4 bound")
    p_sc.add_argument("--in", dest="infile")
    p_sc.add_argument("--n", type=int)
    p_sc.add_argument("--p")
    p_sc.add_argument("--seed", type=int, default=0)
    p_sc.add_argument("--eps-prime", type=float, required=True)
    p_sc.add_argument("-o", "--out")

    p_hp = sub.add_parser("hypergraph-probe", help="size/density/moment probes")
    p_hp.add_argument("--n", type=int, required=True)
    p_hp.add_argument("--l", type=int, required=True)
    p_hp.add_argument(
        "--probe", choices=["size", "density", "moment"], default="size"
    )
    p_hp.add_argument("--eps", type=float, default=0.3)
    p_hp.add_argument("--i", dest="moment_i", type=int, default=1)
    p_hp.add_argument("--q", type=float, default=0.5)
    p_hp.add_argument("--trials", type=int, default=100)
    p_hp.add_argument("--seed", type=int, default=0)
    p_hp.add_argument("-o", "--out")

    p_da = sub.add_parser("direction-audit", help="window-density goodness audit")
    p_da.add_argument("--n", type=int, required=True)
    p_da.add_argument("--p", required=True)
    p_da.add_argument("--beta", type=float, required=True)
    p_da.add_argument("--eps-prime", type=float, required=True)
    p_da.add_argument("--l", type=int)
    p_da.add_argument("--seed", type=int, default=0)
    p_da.add_argument("--trials", type=int, default=1)
    p_da.add_argument("-o", "--out")
    p_da.add_argument("--json", dest="json_out")
    p_da.add_argument("--figures")

    p_l5 = sub.add_parser("lemma5-check", help="close-crossing interval checker")
    p_l5.add_argument("--n", type=int, required=True)
    p_l5.add_argument("--beta", type=float, required=True)
    p_l5.add_argument("--l", type=int, required=True)
    p_l5.add_argument("-o", "--out")

    p_ti = sub.add_parser("tightness", help="adversarial deletion demos")
    p_ti.add_argument("--mode", choices=["c4-breaker", "fan"], required=True)
    p_ti.add_argument("--n", type=int, required=True)
    p_ti.add_argument("--p", required=True)
    p_ti.add_argument("--seed", type=int, default=0)
    p_ti.add_argument("--trials", type=int, default=1)
    p_ti.add_argument("-o", "--out-prefix")
    p_ti.add_argument("--figures")

    p_cc = sub.add_parser("chernoff-check", help="empirical binomial tail check")
    p_cc.add_argument("--binom-n", type=int, default=10_000)
    p_cc.add_argument("--binom-p", type=float, default=0.1)
    p_cc.add_argument("--eps", type=float, action="append", required=True)
    p_cc.add_argument("--samples", type=int, default=100_000)
    p_cc.add_argument("--seed", type=int, default=0)
    p_cc.add_argument("-o", "--out")
    p_cc.add_argument("--figures")

    return parser


def _inject_config(argv: list[str]) -> list[str]:
    """Expand ``--config file`` into leading flags that explicit flags override."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    path = argv[i + 1]
    rest = argv[:i] + argv[i + 2 :]
    if not rest:
        raise ValueError("--config requires a subcommand")
    injected = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        injected += [f"--{key.strip().replace('_', '-')}", value.strip()]
    return [rest[0]] + injected + rest[1:]


def _cmd_gen(args) -> int:
    p = experiments.parse_p_expression(str(args.p), args.n)
    g = sample_random(RandomModel(args.n, p, args.seed))
    _write_out(to_bbg(g), args.out)
    return 0


def _cmd_thin(args) -> int:
    g = _read_graph(args.infile)
    ham = _read_hamilton(args.hamilton) if args.hamilton else standard_hamilton(g.n)
    thinned, _ = adversary.random_thin_keep_hamilton(g, ham, args.target, args.seed)
    _write_out(to_bbg(thinned), args.out)
    return 0


def _cmd_spectrum(args) -> int:
    g = _read_graph(args.infile)
    ham = None
    if args.hamilton:
        ham = _read_hamilton(args.hamilton)
    elif args.mode == "certificate":
        ham = standard_hamilton(g.n)
    report = cycles.even_cycle_spectrum(g, ham, args.mode, args.budget)
    _write_out(json.dumps(report.to_json_dict(), indent=2) + "\n", args.out)
    if args.figures:
        from . import figures

        figures.render_spectrum(report, args.figures)
    return 0


def _cmd_theorem1(args) -> int:
    violators = experiments.verify_theorem1(args.n)
    print(f"{len(violators)} counterexamples")
    for g in violators[:10]:
        print(to_bbg(g))
    return 1 if violators else 0


def _cmd_resilience_sweep(args) -> int:
    p = experiments.parse_p_expression(str(args.p), args.n)
    config = experiments.SweepConfig(
        n=args.n,
        p=p,
        eps=args.eps,
        trials=args.trials,
        master_seed=args.seed,
        budget=args.budget,
    )
    records = experiments.resilience_sweep(config)
    _write_out(experiments.records_to_csv(records), args.out)
    if args.figures:
        from . import figures

        figures.render_sweep(records, args.figures)
    return 1 if any(r.verdict == "missing" for r in records) else 0


def _cmd_shortcut_census(args) -> int:
    g = _load_graph_arg(args)
    report = shortcuts.shortcut_census(g, args.eps_prime)
    _write_out(json.dumps(report.to_json_dict(), indent=2) + "\n", args.out)
    return 0 if report.all_pass else 1


def _cmd_hypergraph_probe(args) -> int:
    if args.probe == "size":
        verts, hyper = shortcuts.hypergraph_size(args.n, args.l)
        payload = {
            "probe": "size",
            "n": args.n,
            "l": args.l,
            "vertices": verts,
            "hyperedges": hyper,
            "upper_bound": 2 * args.n**4,
        }
    elif args.probe == "density":
        samples = shortcuts.hypergraph_density_probe(
            args.n, args.l, args.eps, args.trials, args.seed
        )
        payload = {
            "probe": "density",
            "n": args.n,
            "l": args.l,
            "eps": args.eps,
            "samples": [
                {
                    "subset_size": s.subset_size,
                    "inside": s.inside_count,
                    "bound": s.bound,
                    "pass": s.inside_count >= s.bound,
                }
                for s in samples
            ],
        }
    else:
        sample = shortcuts.hypergraph_degree_moment(
            args.n, args.l, args.moment_i, args.q, args.trials, args.seed
        )
        payload = {
            "probe": "moment",
            "n": args.n,
            "l": args.l,
            "i": sample.i,
            "q": sample.q,
            "estimate": sample.estimate,
            "denominator": sample.denominator,
            "implied_k": sample.implied_k,
        }
    _write_out(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _cmd_direction_audit(args) -> int:
    p = experiments.parse_p_expression(str(args.p), args.n)
    params = directions.GoodnessParams(args.beta, args.eps_prime, p)
    rows = ["trial,seed,n,p,beta,eps_prime,bad_count,bound,within_bound"]
    reports = []
    all_within = True
    for t in range(args.trials):
        seed = mix_seed(args.seed, t)
        g = sample_random(RandomModel(args.n, p, seed))
        report = directions.audit_directions(g, params, l=args.l)
        reports.append(report)
        all_within = all_within and report.within_bound
        rows.append(
            f"{t},{seed},{args.n},{p:.10g},{args.beta:.10g},"
            f"{args.eps_prime:.10g},{report.bad_count},{report.bound:.6f},"
            f"{str(report.within_bound).lower()}"
        )
    _write_out("\n".join(rows) + "\n", args.out)
    if args.json_out:
        Path(args.json_out).write_text(
            json.dumps([r.to_json_dict() for r in reports], indent=2) + "\n"
        )
    if args.figures:
        from . import figures

        figures.render_audit(
            [r.bad_count for r in reports], reports[0].bound, args.figures
        )
    return 0 if all_within else 1


def _cmd_lemma5_check(args) -> int:
    params = directions.GoodnessParams(args.beta, 0.1, 1.0)
    report = directions.lemma5_check(args.n, params, args.l)
    _write_out(json.dumps(report.to_json_dict(), indent=2) + "\n", args.out)
    return 0 if report.all_hold else 1


def _cmd_tightness(args) -> int:
    p = experiments.parse_p_expression(str(args.p), args.n)
    n = args.n
    ham = standard_hamilton(n)
    ham_edges = adversary.hamilton_edge_set(ham)
    rows = [
        "trial,seed,n,p,mode,edges_before,edges_after,deletions,c4_after,"
        "hamiltonian,c4_free_claim_flag"
    ]
    fractions, c4_counts = [], []
    summary = None
    for t in range(args.trials):
        seed = mix_seed(args.seed, t)
        sampled = sample_random(RandomModel(n, p, seed))
        g = type(sampled)(n, sampled.edges | ham_edges)
        if args.mode == "c4-breaker":
            out_g, log = adversary.quadrilateral_breaker(g, ham, seed)
            flag = ""
        else:
            out_g, log = adversary.fan_construction(g)
            # the literal deletion rule can leave 4-cycles behind; flag the
            # discrepancy instead of asserting absence
            flag = "c4-absence-not-guaranteed"
        c4_after = adversary.count_c4(out_g)
        hamiltonian = ham_edges <= out_g.edges
        rows.append(
            f"{t},{seed},{n},{p:.10g},{args.mode},{g.edge_count},"
            f"{out_g.edge_count},{len(log)},{c4_after},"
            f"{str(hamiltonian).lower()},{flag}"
        )
        fractions.append(len(log) / g.edge_count if g.edge_count else 0.0)
        c4_counts.append(c4_after)
        summary = (g, out_g, log, c4_after, hamiltonian)
    prefix = args.out_prefix
    if prefix:
        g, out_g, log, c4_after, hamiltonian = summary
        Path(prefix + ".bbg").write_text(to_bbg(out_g))
        Path(prefix + ".log").write_text(log.serialize())
        Path(prefix + ".json").write_text(
            json.dumps(
                {
                    "mode": args.mode,
                    "n": n,
                    "p": p,
                    "edges_before": g.edge_count,
                    "edges_after": out_g.edge_count,
                    "c4_after": c4_after,
                    "hamiltonian": hamiltonian,
                    "c4_absence_guaranteed": args.mode == "c4-breaker",
                },
                indent=2,
            )
            + "\n"
        )
        Path(prefix + ".csv").write_text("\n".join(rows) + "\n")
    else:
        sys.stdout.write("\n".join(rows) + "\n")
    if args.figures:
        from . import figures

        figures.render_tightness(fractions, c4_counts, args.figures)
    return 0


def _cmd_chernoff_check(args) -> int:
    rows = experiments.chernoff_check(
        args.binom_n, args.binom_p, args.eps, args.samples, args.seed
    )
    lines = ["eps,observed_freq,bound,slack,pass"]
    for r in rows:
        lines.append(
            f"{r.eps:.10g},{r.observed_freq:.10g},{r.bound:.10g},"
            f"{r.slack:.10g},{str(r.passed).lower()}"
        )
    _write_out("\n".join(lines) + "\n", args.out)
    if args.figures:
        from . import figures

        figures.render_chernoff(rows, args.figures)
    return 0 if all(r.passed for r in rows) else 1


_HANDLERS = {
    "gen": _cmd_gen,
    "thin": _cmd_thin,
    "spectrum": _cmd_spectrum,
    "theorem1": _cmd_theorem1,
    "resilience-sweep": _cmd_resilience_sweep,
    "shortcut-census": _cmd_shortcut_census,
    "hypergraph-probe": _cmd_hypergraph_probe,
    "direction-audit": _cmd_direction_audit,
    "lemma5-check": _cmd_lemma5_check,
    "tightness": _cmd_tightness,
    "chernoff-check": _cmd_chernoff_check,
}


def run_subcommand(argv: list[str]) -> int:
    """Parse argv (without the program name) and dispatch; returns the exit code."""
    parser = build_parser()
    try:
        argv = _inject_config(argv)
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_subcommand(sys.argv[1:]))


if __name__ == "__main__":
    main()
