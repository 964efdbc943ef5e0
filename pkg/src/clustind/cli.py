"""Command line front end.

Exit codes: 0 success / certified / bound met, 1 refuted / witness found /
invalid input object, 2 usage error, 3 budget or size cap exceeded.
Results go to stdout as JSON (``table`` prints TSV), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import ceil

from .constructions import cary_tower, disjoint_copies, gi_chain, path_clique
from .engine import Certificate, EngineError, certify
from .graph import Graph, GraphError, components, is_c_clustered
from .greedy import clustered_c2_tokens, clustered_general, clustered_k1
from .models import (ModelError, RootedTwoTree, load_model, random_ktree, random_two_tree,
                     two_tree_to_model, validate_model)
from .oracle import SizeCapExceeded, alpha_exact_bruteforce, alpha_exact_treedp
from .ratio import find_ratio
from .refute import NotFound, refute

OK, REFUTED, USAGE, BUDGET = 0, 1, 2, 3

RANDOM_FAMILIES = ("random-ktree", "random-2tree")


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _check_out(path: str | None) -> None:
    if path is None:
        return
    folder = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(folder):
        raise UsageError(f"output directory {folder} does not exist")


def _write(path: str | None, text: str) -> None:
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)


def _ratio(text: str) -> tuple:
    try:
        p, q = text.split("/")
        r = (int(p), int(q))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected P/Q, got {text!r}") from None
    if r[1] <= 0:
        raise argparse.ArgumentTypeError("denominator must be positive")
    return r


def _load_graph(path: str) -> Graph:
    data = _read_json(path)
    if isinstance(data, dict) and "root_edge" in data:
        return RootedTwoTree.from_dict(data).graph()
    return Graph.from_dict(data)


def _load_model_arg(path: str, g: Graph):
    data = _read_json(path)
    m = load_model(data)
    bad = validate_model(m, g)
    if bad:
        raise UsageError(f"model does not fit the graph: {bad[0].reason} at {bad[0].u}-{bad[0].v}")
    return m, data


# -- subcommands -------------------------------------------------------------


def cmd_generate(a) -> int:
    fam = a.family
    if fam in RANDOM_FAMILIES and a.seed is None:
        raise UsageError(f"--seed is required for {fam}")
    for p in (a.out, a.model, a.dot):
        _check_out(p)
    tree = None
    if fam == "cary-tower":
        g, m = cary_tower(_need(a, "k"), _need(a, "c"))
    elif fam == "path-clique":
        g, m = path_clique(_need(a, "k"), _need(a, "c"))
    elif fam == "gi-chain":
        g, tree = gi_chain(_need(a, "i"))
        m = two_tree_to_model(tree)
    elif fam == "random-ktree":
        g, m = random_ktree(_need(a, "k"), _need(a, "n"), a.seed)
    else:
        tree = random_two_tree(_need(a, "n"), a.seed)
        g, m = tree.graph(), two_tree_to_model(tree)
    if a.copies > 1:
        g, m = disjoint_copies(g, m, a.copies)
        tree = None
    _write(a.out, g.to_json() + "\n")
    if a.model:
        _write(a.model, json.dumps(tree.to_dict() if tree is not None else m.to_dict()) + "\n")
    _write(a.dot, g.to_dot())
    summary = {"family": fam, "n": g.n, "m": g.m, "k": m.k}
    if a.out is None:
        summary["graph"] = g.to_dict()
    _emit(summary)
    return OK


def _need(a, name):
    val = getattr(a, name)
    if val is None:
        raise UsageError(f"--{name} is required for family {a.family}")
    return val


def cmd_alpha_exact(a) -> int:
    _check_out(a.dot)
    g = _load_graph(a.graph)
    if a.engine == "treedp":
        if a.model is None:
            data = _read_json(a.graph)
            if "root_edge" not in data:
                raise UsageError("--engine treedp needs --model unless the graph file is a 2-tree")
            model = RootedTwoTree.from_dict(data)
        else:
            model, data = _load_model_arg(a.model, g)
            if "root_edge" in data:
                model = RootedTwoTree.from_dict(data)
        res = alpha_exact_treedp(model, g, a.c)
    else:
        res = alpha_exact_bruteforce(g, a.c, budget=a.budget)
    _write(a.dot, g.to_dot(res.witness.vertices))
    _emit(res.to_dict())
    return OK if res.exact else BUDGET


def cmd_alpha_bound(a) -> int:
    _check_out(a.dot)
    g = _load_graph(a.graph)
    m, _ = _load_model_arg(a.model, g)
    k = m.k
    if a.algo == "general":
        s, formula, need = clustered_general(m, g, a.c), "ceil(c*n/(k+c+1))", ceil(a.c * g.n / (k + a.c + 1))
    elif a.algo == "k1":
        if k != 1:
            raise UsageError("--algo k1 needs a width-1 model")
        s, formula, need = clustered_k1(m, g, a.c), "ceil(c*n/(c+1))", ceil(a.c * g.n / (a.c + 1))
    else:
        if a.c != 2:
            raise UsageError("--algo c2 is the c=2 procedure; pass --c 2")
        s, formula, need = clustered_c2_tokens(m, g), "ceil(2*n/(k+2))", ceil(2 * g.n / (k + 2))
    _write(a.dot, g.to_dot(s.vertices))
    _emit({"size": len(s), "set": s.sorted(), "guarantee": formula, "bound": need})
    return OK if len(s) >= need else REFUTED


def cmd_certify(a) -> int:
    _check_out(a.out)
    p, q = a.ratio
    res = certify(a.c, p, q)
    if isinstance(res, Certificate):
        _write(a.out, res.to_json() + "\n")
        _emit(res.to_dict())
        return OK
    _emit({"certified": False, **res.to_dict()})
    return BUDGET if res.reason == "budget" else REFUTED


def cmd_refute(a) -> int:
    _check_out(a.dot)
    p, q = a.ratio
    res = refute(a.c, p, q, max_n=a.max_n, budget=a.budget)
    if isinstance(res, NotFound):
        _emit(res.to_dict())
        return BUDGET if res.reason == "budget" else OK
    _write(a.dot, res.two_tree.graph().to_dot())
    _emit({"found": True, **res.to_dict()})
    return REFUTED


def cmd_find_ratio(a) -> int:
    res = find_ratio(a.c, a.max_q, with_witness=a.witness, max_n=a.max_n, budget=a.budget)
    out = {"c": a.c, "p": res.p, "q": res.q, "frontier": str(res.frontier),
           "certificate": res.certificate.to_dict()}
    if res.witness is not None:
        out["witness"] = res.witness.to_dict()
    _emit(out)
    return OK


def cmd_table(a) -> int:
    if a.c_from < 2 or a.c_to < a.c_from:
        raise UsageError("need 2 <= c-from <= c-to")
    sys.stdout.write("c\tx2c\n")
    for c in range(a.c_from, a.c_to + 1):
        r = find_ratio(c, a.max_q).ratio
        sys.stdout.write(f"{c}\t{r.numerator}/{r.denominator}\n")
        sys.stdout.flush()
    return OK


def cmd_verify_set(a) -> int:
    g = _load_graph(a.graph)
    data = _read_json(a.set)
    if isinstance(data, dict):
        data = data.get("set", data.get("witness"))
    if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
        raise UsageError("set file must hold a list of vertex ids (or an object with 'set' or 'witness')")
    if any(not 0 <= v < g.n for v in data):
        raise UsageError("set mentions a vertex outside the graph")
    sizes = sorted((len(comp) for comp in components(g, data)), reverse=True)
    ok = is_c_clustered(g, data, a.c)
    _emit({"valid": ok, "size": len(set(data)), "largest_component": sizes[0] if sizes else 0})
    return OK if ok else REFUTED


def cmd_validate_model(a) -> int:
    g = _load_graph(a.graph)
    m = load_model(_read_json(a.model))
    bad = validate_model(m, g)
    _emit({"valid": not bad, "k": m.k, "violations": [list(v) for v in bad]})
    return OK if not bad else REFUTED


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="clustind", description="Clustered sets in bounded-treewidth graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("generate", help="build an extremal or random graph")
    s.add_argument("--family", required=True,
                   choices=["cary-tower", "path-clique", "gi-chain", *RANDOM_FAMILIES])
    s.add_argument("--k", type=int)
    s.add_argument("--c", type=int)
    s.add_argument("--i", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--copies", type=int, default=1)
    s.add_argument("--seed", type=int)
    s.add_argument("--out")
    s.add_argument("--model")
    s.add_argument("--dot")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("alpha-exact", help="exact alpha_c")
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--graph", required=True)
    s.add_argument("--model")
    s.add_argument("--engine", choices=["brute", "treedp"], default="brute")
    s.add_argument("--budget", type=int, help="node budget for the brute-force engine")
    s.add_argument("--dot")
    s.set_defaults(func=cmd_alpha_exact)

    s = sub.add_parser("alpha-bound", help="constructive lower-bound algorithms")
    s.add_argument("--algo", choices=["general", "k1", "c2"], required=True)
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--graph", required=True)
    s.add_argument("--model", required=True)
    s.add_argument("--dot")
    s.set_defaults(func=cmd_alpha_bound)

    s = sub.add_parser("certify", help="closure search for x_{2,c} >= P/Q")
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--ratio", type=_ratio, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("refute", help="search a 2-tree with alpha_c/n < P/Q")
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--ratio", type=_ratio, required=True)
    s.add_argument("--max-n", type=int, default=40)
    s.add_argument("--budget", type=int, default=2_000_000)
    s.add_argument("--dot")
    s.set_defaults(func=cmd_refute)

    s = sub.add_parser("find-ratio", help="largest certifiable ratio")
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--max-q", type=int, default=30)
    s.add_argument("--witness", action="store_true", help="also refute the frontier ratio")
    s.add_argument("--max-n", type=int, default=40)
    s.add_argument("--budget", type=int, default=2_000_000)
    s.set_defaults(func=cmd_find_ratio)

    s = sub.add_parser("table", help="x_{2,c} table as TSV")
    s.add_argument("--c-from", type=int, default=2)
    s.add_argument("--c-to", type=int, default=15)
    s.add_argument("--max-q", type=int, default=30)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("verify-set", help="check that a set is c-clustered")
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--graph", required=True)
    s.add_argument("--set", required=True)
    s.set_defaults(func=cmd_verify_set)

    s = sub.add_parser("validate-model", help="check a k-tree model against a graph")
    s.add_argument("--graph", required=True)
    s.add_argument("--model", required=True)
    s.set_defaults(func=cmd_validate_model)
    return ap


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if len(argv) >= 2 and argv[0] == "alpha" and argv[1] in ("exact", "bound"):
        argv = [f"alpha-{argv[1]}"] + argv[2:]
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"clustind: {exc}", file=sys.stderr)
        return USAGE
    except SizeCapExceeded as exc:
        print(f"clustind: {exc}", file=sys.stderr)
        return BUDGET
    except (GraphError, ModelError, EngineError, ValueError) as exc:
        print(f"clustind: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
