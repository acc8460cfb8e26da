"""Single entry point: `python tasks/run.py <command> [--flags] [key value ...]`.

Every command writes `<out>/report.json`; exit code 0 on success, 1 when a
check fails, 2 on bad input.
"""
import argparse
import logging
import os
import sys
import time
from os.path import join

import pandas as pd

from circuits import graph_to_circuit, min_weight_satisfying, parse_circuit, write_circuit
from colorcoding import HashFamily, build_family, verify_family
from gapsource import (GapBicliqueInstance, Promise, attach_colorings, check_promise, duplicate_side,
                       find_colorful_biclique, lift_planted_biclique, preprocess, source_preconditions,
                       synth_no_instance, synth_yes_instance)
from graphs import bipartite_from_dict, bipartite_to_dict, is_dominating
from reductions import (build_g_c, build_g_prime, derive_params32, derive_params_main, exhaust_product_bound,
                        extract_yes_witness32, extract_yes_witness_main, reduce32, reducemain)
from reductions.params import exact
from solvers import SolverBudget, exact_min_dominating_set, has_k_clique
from tasks.shared_utils import (RunReport, inputs_digest, read_colored_input, read_graph_input, read_json_input,
                                read_text, write_graph_artifact, write_json_artifact, write_report)
from utils.basic_utils import MetricLogger, n_choose_k
from utils.config_utils import setup_main
from utils.errors import GapforgeError, InputError, InvariantViolation

logger = logging.getLogger(__name__)

COMMANDS = ("gen-family", "preprocess", "synth", "reduce32", "reduce-main", "params", "solve-ds", "clique",
            "circuit", "verify", "gap-demo")

MODE_ALIASES = {"exact": "exact_bb", "bb": "exact_bb", "enum": "exact_enum"}


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors raise `InputError` instead of exiting, so `run` can still write a report."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(f"{self.prog}: {message}")


def build_parser():
    parser = ArgumentParser(
        prog="gapforge",
        description="Build and check gap-producing dominating set reductions.",
        epilog="Trailing `key value` pairs override config entries, e.g. `solver.max_nodes 200000`.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", default=None, help="config file layered over the bundled defaults")
    parser.add_argument("--in", dest="input", default=None, help="input file")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--jobs", type=int, default=None)
    parser.add_argument("--k", type=int, default=None)
    parser.add_argument("--c", type=int, default=None)
    parser.add_argument("--s", type=int, default=None)
    parser.add_argument("--d", type=int, default=None)
    parser.add_argument("--t", type=int, default=None)
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--epsilon", default=None, help="decimal or fraction, e.g. 0.9 or 9/10")
    parser.add_argument("--delta", default=None, help="decimal or fraction, e.g. 0.4 or 2/5")
    parser.add_argument("--delta-dup", dest="delta_dup", type=int, default=None, help="left duplication factor Δ")
    parser.add_argument("--mode", default=None, help="exact | exact_bb | exact_enum | greedy")
    parser.add_argument("--cap-vertices", dest="cap_vertices", type=int, default=None)
    parser.add_argument("--promise", default=None, choices=("YES", "NO"))
    parser.add_argument("--a-size", dest="a_size", type=int, default=None)
    parser.add_argument("--b-size", dest="b_size", type=int, default=None)
    parser.add_argument("--edge-prob", dest="edge_prob", type=float, default=None)
    parser.add_argument("--pad-left", dest="pad_left", type=int, default=None)
    parser.add_argument("--pad-right", dest="pad_right", type=int, default=None)
    parser.add_argument("--pairs", type=int, default=None)
    parser.add_argument("--samples", type=int, default=None)
    return parser


def _is_number(token):
    try:
        float(token)
    except ValueError:
        return False
    return True


def parse_args(argv):
    parser = build_parser()
    args, extras = parser.parse_known_args(argv)
    unknown = [x for x in extras if x.startswith("-") and not _is_number(x)]
    if unknown:
        parser.error(f"unrecognized arguments: {' '.join(unknown)}")
    if args.mode is not None:
        args.mode = MODE_ALIASES.get(args.mode, args.mode)
    return args, extras


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"{args.command} needs {', '.join(missing)}")


def _budget(config):
    return SolverBudget(config.solver.max_nodes, config.solver.time_cap, config.solver.mode)


def _exact(name, value, default):
    if value is None:
        return exact(default)
    try:
        return exact(value)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--{name} must be a decimal or a fraction, got {value!r}") from None


# ========================= commands ==========================

def cmd_gen_family(args, config, report):
    _require(args, "n", "k")
    caps = config.caps
    family = build_family(args.n, args.k, caps.subsets, caps.family_entries)
    over_cap = n_choose_k(args.n, args.k) > caps.subsets
    samples = args.samples if args.samples is not None else (config.family.samples if over_cap else None)
    verdict = verify_family(family, samples=samples, seed=config.seed, subset_cap=caps.subsets)
    path = write_json_artifact(join(config.output_dir, "family.json"), family.to_dict(), report.inputs_digest)
    report.outputs["family"] = path
    report.result = {"size": len(family), "size_bound": family.size_bound, "verified": family.verified,
                     "verdict": verdict.to_dict()}
    return 0 if verdict.ok else 1


def cmd_preprocess(args, config, report):
    _require(args, "input", "k")
    G = read_graph_input(args.input)
    result = preprocess(G, args.k)
    path = write_graph_artifact(join(config.output_dir, "preprocessed.gr"), result.G_out, report.inputs_digest)
    report.outputs["graph"] = path
    report.result = result.to_dict()
    return 0


def _synth(config, promise, s, d, seed, a_size=None, b_size=None):
    synth = config.synth
    if promise == "YES":
        return synth_yes_instance(s, d, synth.left_pad, synth.right_pad, seed, synth.edge_prob,
                                  cap=config.caps.subsets)
    a_size = s + synth.left_pad if a_size is None else a_size
    b_size = d + synth.right_pad if b_size is None else b_size
    return synth_no_instance(s, d - 1, a_size, b_size, synth.edge_prob, seed=seed, d=d,
                             retries=synth.no_retries, cap=config.caps.subsets)


def _color(inst, config):
    caps = config.caps
    return attach_colorings(inst, inst.s, inst.d, vertex_cap=caps.vertices, subset_cap=caps.subsets,
                            entry_cap=caps.family_entries)


def cmd_synth(args, config, report):
    _require(args, "s", "d")
    promise = args.promise or "YES"
    inst = _synth(config, promise, args.s, args.d, config.seed, args.a_size, args.b_size)
    delta = config.gap_demo.delta_dup
    if delta > 1:
        inst = duplicate_side(inst, delta)
    verdict = check_promise(inst, cap=config.caps.subsets)
    colored = _color(inst, config)
    report.outputs["instance"] = write_json_artifact(join(config.output_dir, "instance.json"), inst.to_dict(),
                                                     report.inputs_digest)
    report.outputs["colored"] = write_json_artifact(join(config.output_dir, "colored.json"),
                                                    bipartite_to_dict(colored), report.inputs_digest)
    report.result = {
        "promise": inst.promise.value,
        "seed": inst.seed,
        "a_size": inst.a_size,
        "b_size": inst.b_size,
        "s": inst.s,
        "d": inst.d,
        "no_threshold": inst.no_threshold,
        "no_subset_size": inst.no_subset_size,
        "dup_factor": inst.dup_factor,
        "verdict": verdict.to_dict(),
        "colored": {"a_size": colored.a_size, "b_size": colored.b_size, "edges": len(colored.edges)},
    }
    return 0 if verdict.holds else 1


def _find_witness(inst, colored):
    if inst is not None and inst.promise is Promise.NO:
        return None
    if inst is not None and inst.planted is not None:
        found = lift_planted_biclique(inst, colored)
        if found is not None:
            return found
    return find_colorful_biclique(colored, colored.a_colors, colored.b_colors)


def _write_reduction(config, report, out, name):
    digest = report.inputs_digest
    graph_file = write_graph_artifact(join(config.output_dir, f"{name}.gr"), out.graph, digest)
    payload = {"manifest": out.manifest, "source": bipartite_to_dict(out.source), "graph_file": f"{name}.gr"}
    report.outputs["graph"] = graph_file
    report.outputs["reduction"] = write_json_artifact(join(config.output_dir, "reduction.json"), payload, digest)


def _witness_result(out, K, extract):
    if K is None:
        return None
    witness = extract(out, K)
    return dict(witness.to_dict(), biclique=[list(K[0]), list(K[1])],
                dominating=is_dominating(out.graph, witness.vertices))


def cmd_reduce32(args, config, report):
    _require(args, "input", "t")
    colored, inst = read_colored_input(args.input, config=config)
    out = build_g_prime(colored, args.t, s=args.s, d=args.d, vertex_cap=config.caps.vertices)
    _write_reduction(config, report, out, "g_prime")
    p = out.manifest["params"]
    report.result = {"counts": out.manifest["counts"], "roles": out.role_counts(),
                     "edge_rules": out.manifest["edge_rules"], "yes_bound": p["d"] + p["s"] * p["t"],
                     "witness": _witness_result(out, _find_witness(inst, colored), extract_yes_witness32)}
    return 0


def cmd_reduce_main(args, config, report):
    _require(args, "input", "c", "t")
    colored, inst = read_colored_input(args.input, config=config)
    out = build_g_c(colored, args.c, args.t, vertex_cap=config.caps.vertices, tuple_cap=config.caps.tuple_space)
    _write_reduction(config, report, out, "g_c")
    p = out.manifest["params"]
    report.result = {"counts": out.manifest["counts"], "roles": out.role_counts(),
                     "edge_rules": out.manifest["edge_rules"],
                     "yes_bound": p["d"] ** p["c"] + p["delta_s"] * p["c"] * p["t"],
                     "witness": _witness_result(out, _find_witness(inst, colored), extract_yes_witness_main)}
    return 0


def cmd_params(args, config, report):
    _require(args, "k")
    if args.c is not None:
        delta = args.delta_dup if args.delta_dup is not None else 2
        params = derive_params_main(args.k, args.c, delta)
        report.result = params.to_dict()
        return 0
    eps = _exact("epsilon", args.epsilon, "1/2")
    dlt = _exact("delta", args.delta, "1/4")
    params = derive_params32(args.k, n=args.n, epsilon=eps, delta=dlt)
    report.result = params.to_dict()
    if args.n is not None:
        report.result["source_preconditions"] = source_preconditions(args.n, args.k, params.d)
    return 0


def cmd_solve_ds(args, config, report):
    _require(args, "input")
    G = read_graph_input(args.input)
    result = exact_min_dominating_set(G, _budget(config))
    if not is_dominating(G, result.vertices):
        raise InvariantViolation("solver returned a non-dominating set")
    report.result = dict(result.to_dict(), mode=config.solver.mode, n=G.n, m=G.m)
    return 0


def cmd_clique(args, config, report):
    _require(args, "input", "k")
    G = read_graph_input(args.input)
    witness = has_k_clique(G, args.k, cap=config.caps.subsets)
    report.result = {"k": args.k, "found": witness is not None,
                     "clique": None if witness is None else list(witness)}
    return 0


def cmd_circuit(args, config, report):
    _require(args, "input")
    text = read_text(args.input)
    G = None
    if args.input.endswith(".gr") or any(line.startswith("p edge") for line in text.splitlines()):
        G = read_graph_input(args.input)
        circuit = graph_to_circuit(G)
        report.outputs["circuit"] = join(config.output_dir, "circuit.txt")
        with open(report.outputs["circuit"], "w") as f:
            f.write(write_circuit(circuit, comments=[f"digest {report.inputs_digest}"]))
    else:
        circuit = parse_circuit(text)
    assignment = min_weight_satisfying(circuit, _budget(config))
    report.result = dict(assignment.to_dict(), num_vars=circuit.num_vars, clauses=len(circuit.clauses))
    if G is None:
        return 0
    ds = exact_min_dominating_set(G, _budget(config))
    report.result["dominating_set"] = ds.to_dict()
    report.result["support_dominates"] = is_dominating(G, assignment.support)
    agree = not (ds.optimal and assignment.optimal) or ds.size == assignment.weight
    report.result["weights_agree"] = agree
    return 0 if agree and report.result["support_dominates"] else 1


def _verify_reduction(data, config, report):
    try:
        source = bipartite_from_dict(data["source"])
        manifest = data["manifest"]
        kind = manifest["reduction"]
        p = manifest["params"]
        t, c = int(p["t"]), (int(p["c"]) if kind == "g_c" else None)
        expected = {key: manifest[key] for key in ("source_digest", "roles", "edge_rules")}
    except KeyError as e:
        raise InputError(f"reduction JSON is missing key {e}") from None
    except (TypeError, ValueError) as e:
        if isinstance(e, InputError):
            raise
        raise InputError(f"bad reduction JSON: {e}") from None
    if kind == "g_prime":
        out = build_g_prime(source, t, vertex_cap=config.caps.vertices)
        rederived = reduce32.rederive_edges(out)
    elif kind == "g_c":
        out = build_g_c(source, c, t, vertex_cap=config.caps.vertices, tuple_cap=config.caps.tuple_space)
        rederived = reducemain.rederive_edges(out)
    else:
        raise InputError(f"unknown reduction {kind!r}, expected g_prime or g_c")
    checks = {key: out.manifest[key] == value for key, value in expected.items()}
    checks["rederived_edges"] = rederived == out.graph.edges
    report.result = {"kind": "reduction", "reduction": kind, "checks": checks}
    return 0 if all(checks.values()) else 1


def cmd_verify(args, config, report):
    if args.input is None:
        _require(args, "t", "c")
        delta = args.delta_dup if args.delta_dup is not None else 1
        summary = exhaust_product_bound(args.t, args.c, delta)
        report.result = dict(summary, kind="product_bound")
        return 0
    data = read_json_input(args.input)
    if "functions" in data:
        family = HashFamily.from_dict(data)
        over_cap = n_choose_k(family.n, family.k) > config.caps.subsets
        samples = args.samples if args.samples is not None else (config.family.samples if over_cap else None)
        verdict = verify_family(family, samples=samples, seed=config.seed, subset_cap=config.caps.subsets)
        report.result = dict(verdict.to_dict(), kind="family", size=len(family))
        return 0 if verdict.ok else 1
    if "manifest" in data:
        return _verify_reduction(data, config, report)
    if "alpha" in data:
        colored = bipartite_from_dict(data)
        empty = colored.empty_beta_classes()
        report.result = {"kind": "colored", "empty_beta_classes": empty,
                         "colorful_biclique": find_colorful_biclique(colored, colored.a_colors, colored.b_colors)}
        return 0 if not empty else 1
    inst = GapBicliqueInstance.from_dict(data)
    verdict = check_promise(inst, cap=config.caps.subsets)
    report.result = dict(verdict.to_dict(), kind="instance")
    return 0 if verdict.holds is not False else 1


def _solve_pair(config, yes, no, build, extract, label):
    budget = _budget(config)
    yes_colored, no_colored = _color(yes, config), _color(no, config)
    yes_out, no_out = build(yes_colored), build(no_colored)
    K = lift_planted_biclique(yes, yes_colored)
    witness = extract(yes_out, K) if K is not None else None
    ds_yes = exact_min_dominating_set(yes_out.graph, budget)
    ds_no = exact_min_dominating_set(no_out.graph, budget)
    return {
        "reduction": label,
        "seed_yes": yes.seed,
        "seed_no": no.seed,
        "n_yes": yes_out.graph.n,
        "n_no": no_out.graph.n,
        "witness_size": None if witness is None else witness.size,
        "ds_yes": ds_yes.size,
        "ds_no_lower": ds_no.gamma_lower_bound,
        "ds_no": ds_no.size,
        "optimal": ds_yes.optimal and ds_no.optimal,
        "gap_ok": ds_no.gamma_lower_bound > ds_yes.size,
    }


def cmd_gap_demo(args, config, report):
    _require(args, "s", "d", "t")
    s, d, t = args.s, args.d, args.t
    c = args.c if args.c is not None else config.gap_demo.c
    delta = config.gap_demo.delta_dup
    pairs = config.gap_demo.pairs
    yes_bound = d + s * t
    main_bound = None if c is None else d ** c + delta * s * c * t

    rows = []
    metric_logger = MetricLogger(delimiter="  ")
    for p in metric_logger.log_every(range(pairs), config.log_freq, header="gap-demo"):
        yes = _synth(config, "YES", s, d, config.seed + p)
        no = _synth(config, "NO", s, d, (config.seed + p) * config.synth.no_retries)
        row = _solve_pair(config, yes, no, lambda H: build_g_prime(H, t, vertex_cap=config.caps.vertices),
                          extract_yes_witness32, "g_prime")
        rows.append(dict(row, pair=p, yes_bound=yes_bound))
        metric_logger.update(ds_yes=row["ds_yes"], ds_no=row["ds_no"])
        if c is not None:
            dyes, dno = duplicate_side(yes, delta), duplicate_side(no, delta)
            row = _solve_pair(config, dyes, dno,
                              lambda H: build_g_c(H, c, t, vertex_cap=config.caps.vertices,
                                                  tuple_cap=config.caps.tuple_space),
                              extract_yes_witness_main, "g_c")
            rows.append(dict(row, pair=p, yes_bound=main_bound))

    table = pd.DataFrame(rows, columns=["pair", "reduction", "seed_yes", "seed_no", "n_yes", "n_no", "yes_bound",
                                        "witness_size", "ds_yes", "ds_no_lower", "ds_no", "optimal", "gap_ok"])
    report.outputs["gap_table"] = join(config.output_dir, "gap_table.csv")
    table.to_csv(report.outputs["gap_table"], index=False)

    g_prime = table[table.reduction == "g_prime"]
    completeness_ok = bool((g_prime.ds_yes <= yes_bound).all())
    report.set_gap(yes_bound, int(g_prime.ds_no_lower.min()))
    violations = table[~table.gap_ok]
    summary = {"pairs": pairs, "violations": int(len(violations)), "completeness_ok": completeness_ok,
               "gap_ok": bool(table.gap_ok.all())}
    for name, part in table.groupby("reduction", sort=True):
        summary[name] = {"ds_yes_max": int(part.ds_yes.max()), "ds_no_min": int(part.ds_no_lower.min()),
                         "all_optimal": bool(part.optimal.all())}
    if main_bound is not None:
        summary["g_c_yes_bound"] = main_bound
    report.result = summary
    if len(violations):
        logger.error(f"strict gap violated in {len(violations)} of {len(table)} rows")
    return 0 if summary["gap_ok"] and completeness_ok else 1


HANDLERS = {
    "gen-family": cmd_gen_family,
    "preprocess": cmd_preprocess,
    "synth": cmd_synth,
    "reduce32": cmd_reduce32,
    "reduce-main": cmd_reduce_main,
    "params": cmd_params,
    "solve-ds": cmd_solve_ds,
    "clique": cmd_clique,
    "circuit": cmd_circuit,
    "verify": cmd_verify,
    "gap-demo": cmd_gap_demo,
}


def _parameters(args):
    return {k: v for k, v in sorted(vars(args).items()) if v is not None and k not in ("out", "jobs", "config")}


def _recover_out(argv):
    for i, token in enumerate(argv):
        if token == "--out" and i + 1 < len(argv):
            return argv[i + 1]
        if token.startswith("--out="):
            return token[len("--out="):]
    return None


def _early_failure(argv, out, error):
    """Minimal exit-2 report for failures before the config is set up; None when no --out is known."""
    logger.error(str(error))
    if out is None:
        return None
    command = argv[0] if argv and argv[0] in COMMANDS else None
    report = RunReport(command=command, parameters={}, exit_code=2, error=str(error))
    os.makedirs(out, exist_ok=True)
    write_report(report, out)
    return report


def run(argv=None):
    """Run one command. Returns (exit_code, RunReport or None)."""
    start = time.time()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args, opts = parse_args(argv)
    except SystemExit as e:
        return (0 if e.code in (0, None) else 2), None
    except InputError as e:
        return 2, _early_failure(argv, _recover_out(argv), e)
    try:
        config = setup_main(args, opts)
    except (ValueError, FileNotFoundError) as e:
        return 2, _early_failure(argv, args.out, e)

    parameters = _parameters(args)
    report = RunReport(command=args.command, parameters=parameters)
    try:
        report.inputs_digest = inputs_digest(args.command, parameters, [args.input])
        report.exit_code = HANDLERS[args.command](args, config, report)
    except (InputError, FileNotFoundError) as e:
        logger.error(f"{args.command}: {e}")
        report.exit_code, report.error = 2, str(e)
    except GapforgeError as e:
        logger.error(f"{args.command}: {type(e).__name__}: {e}")
        report.exit_code, report.error = 1, f"{type(e).__name__}: {e}"
    report.timing = {"seconds": round(time.time() - start, 3)}
    write_report(report, config.output_dir)
    logger.info(f"{args.command} finished with exit code {report.exit_code}")
    return report.exit_code, report


def main():
    code, _ = run(sys.argv[1:])
    sys.exit(code)


if __name__ == "__main__":
    main()
