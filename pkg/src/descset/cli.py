"""Command line entry point: ``descset <command> [--op OP] [input]``.

Inputs are JSON (a file path, ``-`` for stdin, or ``--json TEXT``).  Every
output is one JSON document carrying ``"schema": "v1"``.  Exit codes: 0 on
success, 1 on a domain error (``{"error": code, "detail": text}``), 2 on a
usage error or malformed input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from itertools import islice

from . import cantor, catalog, convergence as cv, lftrees as lf, rank as rk, reductions as red, selftest
from . import trees as tr
from .jsonio import DecodeError, decode, envelope
from .ordinals import Ordinal, as_ordinal, from_json as ord_from_json, from_text, ord_add, ord_compare, ord_sup_plus_one


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers


def _read_raw(args):
    if args.json is not None:
        text = args.json
    elif args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {args.input}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DecodeError(f"malformed JSON: {e}") from None


def _value(args):
    """The whole input as one decoded value."""
    raw = _read_raw(args)
    if isinstance(raw, list) and all(isinstance(n, list) for n in raw):
        return tr.FinTree.from_nodes(raw)
    return decode(raw)


def _fields(args, *required, optional=()):
    """The input as an object of named, individually decoded fields."""
    raw = _read_raw(args)
    if not isinstance(raw, dict) or "type" in raw:
        raise DecodeError(f"expected an object with fields {', '.join(required)}")
    missing = [k for k in required if k not in raw]
    if missing:
        raise DecodeError(f"missing fields: {', '.join(missing)}")
    extra = set(raw) - set(required) - set(optional)
    if extra:
        raise DecodeError(f"unexpected fields: {', '.join(sorted(extra))}")
    return {k: _decode_field(k, v) for k, v in raw.items()}


def _decode_field(key, v):
    if key in ("S", "T") and isinstance(v, list):
        return tr.FinTree.from_nodes(v)
    return decode(v)


def _fraction(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise DecodeError(f"not a rational: {text!r}") from None


def _ordinal(v) -> Ordinal:
    if isinstance(v, Ordinal):
        return v
    if isinstance(v, int):
        return as_ordinal(v)
    if isinstance(v, str):
        return from_text(v)
    if isinstance(v, tuple):
        return ord_from_json([list(p) for p in v])
    raise DecodeError(f"not an ordinal: {v!r}")


def _caps(args) -> lf.Caps:
    fields = {}
    for part in filter(None, (args.caps or "").split(",")):
        key, _, val = part.partition("=")
        key = {"pool": "block_pool"}.get(key.strip(), key.strip())
        if key not in ("n_l", "max_word", "depth", "block_pool", "block_size") or not val.strip().isdigit():
            raise UsageError(f"bad caps entry {part!r}; use n_l=16,max_word=8,pool=16,block_size=2")
        fields[key] = int(val)
    if args.depth is not None:
        fields["depth"] = args.depth
    if args.d_range:
        try:
            fields["d_range"] = tuple(int(x) for x in args.d_range.split(","))
        except ValueError:
            raise UsageError(f"bad d-range {args.d_range!r}") from None
    return lf.Caps(**fields)


def _pair(args):
    a = rk.DEFAULT_A if args.a is None else _fraction(args.a)
    b = rk.DEFAULT_B if args.b is None else _fraction(args.b)
    return a, b


# ---------------------------------------------------------------------------
# rank-tree


def cmd_rank_tree(args):
    if args.op == "rank":
        T = _value(args)
        out = {}
        if isinstance(T, tr.FinTree):
            out["rank"] = tr.rank(T)
            if args.target:
                target = decode_tree(args.target)
                m = tr.find_monotone_map(T, target)
                out["target_rank"] = tr.rank(target)
                out["map"] = None if m is None else [[list(s), list(t)] for s, t in sorted(m.items())]
        else:
            if args.target:
                raise UsageError("--target needs an explicit finite tree")
            out["rank"] = tr.schema_rank(T)
            out["wellfounded"] = tr.is_wellfounded(T)
        return out
    if args.op == "derivative":
        T = _value(args)
        D = tr.derivative(_require_fintree(T))
        return {"tree": D, "rank": tr.rank(D)}
    if args.op == "wellfounded":
        T = _value(args)
        return {"wellfounded": tr.is_wellfounded(T), "infinite": tr.is_infinite(T)}
    if args.op == "verify-map":
        f = _fields(args, "S", "T", "map")
        m = {tuple(s): tuple(t) for s, t in f["map"]}
        return {"monotone": tr.verify_monotone(m, _require_fintree(f["S"]), _require_fintree(f["T"]))}
    if args.op == "konig":
        T = _value(args)
        return {"branch": list(tr.konig_branch(T, args.depth))}
    raise UsageError(f"unknown op {args.op}")


def decode_tree(text: str) -> tr.FinTree:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DecodeError(f"malformed JSON: {e}") from None
    if isinstance(raw, list):
        return tr.FinTree.from_nodes(raw)
    return _require_fintree(decode(raw))


def _require_fintree(T):
    if not isinstance(T, tr.FinTree):
        raise DecodeError("expected an explicit finite tree")
    return T


# ---------------------------------------------------------------------------
# alpha


def cmd_alpha(args):
    if args.op == "alpha":
        K = _value(args)
        if isinstance(K, rk.MultiComponent):
            return {"alpha": rk.alpha_on_space(K)}
        if args.a is not None or args.b is not None:
            pairs = [_pair(args)]
        else:
            pairs = rk.crossing_pairs(rk.values_of(K))
        rows = [{"a": a, "b": b, "alpha": rk.alpha_on(K, a, b)} for a, b in pairs]
        out = {"pairs": rows, "alpha": rk.alpha_full(K, pairs)}
        if args.trace:
            out["trace"] = [_trace(K, a, b) for a, b in pairs]
        return out
    if args.op == "derivative":
        K = _value(args)
        a, b = _pair(args)
        D = rk.iterate_derivative(K, _ordinal(args.stage), a, b) if args.stage else rk.sep_derivative(K, a, b)
        return {"stage": D.stage, "empty": D.is_empty(), "alpha_remaining": rk.alpha_on(D),
                "apex_survives": D.contains(rk.apex_point(""))}
    if args.op == "restrict-ball":
        f = _fields(args, "K", "x", "word", "xi")
        a, b = _pair(args)
        ok = rk.restrict_ball(f["K"], a, b, cantor.Cylinder(f["word"]), _ordinal(f["xi"]), f["x"])
        return {"holds": ok}
    if args.op == "example":
        K = rk.build_rank_example(_ordinal(args.xi), args.pattern)
        return {"presentation": K, "alpha": rk.alpha_on(K)}
    if args.op == "brute":
        K = _value(args)
        a, b = _pair(args)
        sample = rk.instantiate(K, args.depth)
        return {"points": len(sample), "brute_alpha": rk.brute_force_alpha(sample, a, b),
                "alpha": rk.alpha_on(K, a, b)}
    if args.op == "attain":
        K = _value(args)
        a, b = _pair(args)
        hit = rk.attaining_copy(K, a, b)
        out = {"alpha": rk.alpha_on(K, a, b), "attained": hit is not None}
        if hit is not None:
            out["position"], out["copy_rank"] = hit[0], hit[1]
        return out
    raise UsageError(f"unknown op {args.op}")


def _trace(K, a, b, limit: int = 12):
    """Finite stages of the derivative until the set is empty."""
    alpha = rk.alpha_on(K, a, b)
    stages = []
    for k in range(limit + 1):
        D = rk.iterate_derivative(K, k, a, b)
        stages.append({"stage": k, "alpha_remaining": rk.alpha_on(D),
                       "apex_survives": D.contains(rk.apex_point(""))})
        if D.is_empty():
            break
    return {"a": a, "b": b, "alpha": alpha, "stages": stages}


# ---------------------------------------------------------------------------
# eval


def cmd_eval(args):
    op = args.op
    if op == "fn":
        f = _fields(args, "f", "y")
        return {"value": catalog.evaluate(f["f"], f["y"])}
    if op == "term":
        f = _fields(args, "seq")
        return {"n": args.n, "term": f["seq"][args.n]}
    if op == "diff":
        f = _fields(args, "f", "g")
        return {"region": catalog.diff_region(f["f"], f["g"], _fraction(args.theta))}
    if op == "covers":
        f = _fields(args, "word", "regions")
        regions = [r.support() if isinstance(r, catalog.SymbolicFn) else r for r in f["regions"]]
        return {"covers": catalog.region_covers(cantor.Cylinder(f["word"]), regions)}
    if op == "lex":
        f = _fields(args, "x", "y")
        return {"order": cantor.lex_compare(f["x"], f["y"])}
    if op == "clopen":
        f = _fields(args, "a", optional=("b",))
        a, b = _clopen(f["a"]), _clopen(f["b"]) if "b" in f else None
        if args.clopen_op == "complement":
            return {"result": ~a}
        if b is None:
            raise UsageError(f"{args.clopen_op} needs both a and b")
        if args.clopen_op == "subset":
            return {"result": a.subset(b)}
        return {"result": a | b if args.clopen_op == "union" else a & b}
    if op == "h-enum":
        if args.word is None:
            raise UsageError("h-enum needs --word")
        return {"word": args.word, "n": cantor.h_enum(args.word)}
    if op == "h-inv":
        return {"n": args.n, "word": cantor.h_inv(args.n)}
    if op == "kth":
        L = _value(args)
        return {"k": args.k, "element": L.kth(args.k)}
    if op == "ord":
        f = _fields(args, "a", optional=("b",))
        a = _ordinal(f["a"])
        if args.ord_op == "sup-plus-one":
            items = [a] + ([_ordinal(f["b"])] if "b" in f else [])
            return {"result": ord_sup_plus_one(items)}
        if "b" not in f:
            raise UsageError(f"{args.ord_op} needs both a and b")
        b = _ordinal(f["b"])
        if args.ord_op == "compare":
            return {"result": ord_compare(a, b)}
        return {"result": ord_add(a, b)}
    raise UsageError(f"unknown op {op}")


def _clopen(v) -> cantor.ClopenSet:
    if isinstance(v, cantor.ClopenSet):
        return v
    if isinstance(v, tuple) and all(isinstance(w, str) for w in v):
        return cantor.ClopenSet.of(*v)
    raise DecodeError("expected a clopen set as a list of words")


# ---------------------------------------------------------------------------
# converge


def cmd_converge(args):
    if args.op == "decide":
        f = _fields(args, "seq", "L")
        verdict = cv.decide_convergence(f["seq"], f["L"])
        out = {"verdict": verdict}
        if args.oracle_depth:
            problems = cv.oracle_disagreements(f["seq"], f["L"], verdict, args.oracle_depth, args.point_size)
            out["oracle"] = {"depth": args.oracle_depth, "point_size": args.point_size,
                             "agrees": not problems, "disagreements": [list(p) for p in problems[:10]]}
        return out
    if args.op == "to":
        f = _fields(args, "seq", "L", "f")
        return {"converges_to": cv.decide_convergence_to(f["seq"], f["L"], f["f"])}
    if args.op == "refine":
        f = _fields(args, "seq", "M")
        sub = cv.refine_to_convergent(f["seq"], f["M"])
        return {"subset": sub, "verdict": cv.decide_convergence(f["seq"], sub)}
    if args.op == "tree-rep":
        f = _fields(args, "seq", "codes")
        rep = cv.tree_representation(f["seq"], f["codes"], args.depth)
        labels = [[list(node), rep.labels[node]] for node in rep.tree]
        return {"tree": rep.tree, "labels": labels}
    raise UsageError(f"unknown op {args.op}")


# ---------------------------------------------------------------------------
# lf-tree


def cmd_lf_tree(args):
    caps = _caps(args)
    if args.op == "truncate":
        f = _fields(args, "seq", "L", optional=("f",))
        fn = _target_fn(args, f)
        if args.glued:
            T = lf.glued_truncate(args.kind, f["seq"], f["L"], caps, fn)
            return {"tree": T, "rank": tr.rank(T), "glued_rank": lf.glued_rank(args.kind, f["seq"], f["L"], caps, fn),
                    "caps": caps}
        T = lf.truncate_tree(args.kind, f["seq"], f["L"], args.d, caps, fn)
        return {"tree": T, "rank": tr.rank(T), "caps": caps}
    if args.op == "member":
        f = _fields(args, "seq", "L", "node", optional=("f",))
        fn = _target_fn(args, f)
        node = f["node"]
        if args.glued:
            return {"member": lf.glued_member(args.kind, f["seq"], f["L"], node, fn)}
        if args.kind == "T":
            return {"member": lf.tdl_member(f["seq"], f["L"], args.d, node)}
        return {"member": lf.sdl_member(f["seq"], f["L"], fn, args.d, node)}
    if args.op == "witness":
        f = _fields(args, "seq", "L")
        nodes = list(islice(lf.branch_witness(f["seq"], f["L"], args.d), args.length + 1))
        return {"nodes": nodes, "all_members": all(lf.tdl_member(f["seq"], f["L"], args.d, n) for n in nodes)}
    if args.op == "monotone":
        f = _fields(args, "seq", "L", optional=("f",))
        fn = f.get("f", catalog.Zero())
        res = lf.newp3_monotone(f["seq"], f["L"], fn, args.d, caps)
        mapping = [[list(s), list(t)] for s, t in sorted(res.mapping.items())]
        return {
            "s_tree": res.s_tree,
            "t_image": res.t_image,
            "map": mapping,
            "verified": tr.verify_monotone(res.mapping, res.s_tree, res.t_image),
            "s_rank": tr.rank(res.s_tree),
            "t_image_rank": tr.rank(res.t_image),
        }
    raise UsageError(f"unknown op {args.op}")


def _target_fn(args, f):
    if args.kind == "S" and "f" not in f:
        raise DecodeError("kind S needs the limit function f")
    return f.get("f")


# ---------------------------------------------------------------------------
# reduce


def cmd_reduce(args):
    op = args.op
    if op in ("phi", "h-image"):
        x = _value(args)
        if not isinstance(x, cantor.Point):
            raise DecodeError("expected a point")
        L = red.phi_map(x) if op == "phi" else red.h_image(x)
        return {"index_set": L, "first": L.first(args.terms)}
    if op == "restrict":
        f = _fields(args, "seq", "A", "L")
        fam = red.restrict_family(f["seq"], _point_set(f["A"]))
        return {"verdict": red.decide_restricted(fam, f["L"])}
    if op == "verify-p1":
        return _verify_p1(args)
    if op == "psi-glue":
        f = _fields(args, "T", "T0", optional=("coding",))
        coding = f.get("coding", red.HCoding())
        L = red.psi_glue(f["T"], f["T0"], coding)
        verdict = cv.decide_convergence(catalog.NodeIndicatorsByH(), L)
        return {"index_set": L, "verdict": verdict, "wellfounded": tr.is_wellfounded(f["T"])}
    raise UsageError(f"unknown op {op}")


def _point_set(v) -> red.DecidablePointSet:
    if isinstance(v, red.DecidablePointSet):
        return v
    if isinstance(v, cantor.ClopenSet) or (isinstance(v, tuple) and all(isinstance(w, str) for w in v)):
        return red.DecidablePointSet.from_clopen(_clopen(v))
    raise DecodeError("expected a DecidablePointSet or a clopen word list")


def _verify_p1(args):
    """Single (x, A) from the input, or a seeded sample when no input is given."""
    if args.json is not None or args.input is not None:
        f = _fields(args, "x", "A")
        A = _point_set(f["A"])
        return {"x_in_A": A.contains(f["x"]), "holds": red.verify_p1(f["x"], A)}
    r = random.Random(args.seed)
    sets = selftest.admissible_sets(r)
    points = [selftest.random_point(r) for _ in range(args.samples)]
    failures = [[x, i] for i, A in enumerate(sets) for x in points if not red.verify_p1(x, A)]
    return {"seed": args.seed, "pairs": len(sets) * len(points), "failures": failures,
            "holds": not failures}


# ---------------------------------------------------------------------------
# selftest


def cmd_selftest(args):
    names = list(selftest.SUITES) if args.suite == "all" else [args.suite]
    results = [selftest.run_suite(n, args.samples, args.seed) for n in names]
    report = [{"suite": r.name, "passed": r.passed, "summary": r.summary, "cases": r.cases} for r in results]
    return {"seed": args.seed, "suites": report, "passed": all(r.passed for r in results)}


# ---------------------------------------------------------------------------
# parser


COMMANDS = {
    "rank-tree": (cmd_rank_tree, ["rank", "derivative", "wellfounded", "verify-map", "konig"]),
    "alpha": (cmd_alpha, ["alpha", "derivative", "restrict-ball", "example", "brute", "attain"]),
    "eval": (cmd_eval, ["fn", "term", "diff", "covers", "lex", "clopen", "h-enum", "h-inv", "kth", "ord"]),
    "converge": (cmd_converge, ["decide", "to", "refine", "tree-rep"]),
    "lf-tree": (cmd_lf_tree, ["truncate", "member", "witness", "monotone"]),
    "reduce": (cmd_reduce, ["phi", "h-image", "restrict", "verify-p1", "psi-glue"]),
    "selftest": (cmd_selftest, None),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="descset", description="Exact ranks, convergence verdicts and reductions on Cantor space.")
    p.add_argument("--format", choices=["json", "text"], default="json")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    subs = {}
    for name, (_, ops) in COMMANDS.items():
        sp = sub.add_parser(name)
        if name == "reduce":
            sp.add_argument("op", choices=ops)
        elif ops:
            sp.add_argument("--op", choices=ops, default=ops[0])
        if name != "selftest":
            sp.add_argument("input", nargs="?", help="JSON file, or - for stdin")
            sp.add_argument("--json", help="inline JSON input")
        subs[name] = sp

    subs["rank-tree"].add_argument("--target", help="finite tree JSON; also search for a monotone map into it")
    subs["rank-tree"].add_argument("--depth", type=int, default=8)

    al = subs["alpha"]
    al.add_argument("--a")
    al.add_argument("--b")
    al.add_argument("--trace", action="store_true")
    al.add_argument("--stage")
    al.add_argument("--xi", default="1")
    al.add_argument("--pattern", choices=["A1", "A2", "A3"], default="A1")
    al.add_argument("--depth", type=int, default=3)

    ev = subs["eval"]
    ev.add_argument("--theta", default="0")
    ev.add_argument("--n", type=int, default=0)
    ev.add_argument("--k", type=int, default=0)
    ev.add_argument("--word")
    ev.add_argument("--clopen-op", choices=["union", "intersect", "complement", "subset"], default="union")
    ev.add_argument("--ord-op", choices=["compare", "add", "sup-plus-one"], default="compare")

    co = subs["converge"]
    co.add_argument("--oracle-depth", type=int, default=50, help="0 skips the sampling cross-check")
    co.add_argument("--point-size", type=int, default=6)
    co.add_argument("--depth", type=int, default=6)

    lt = subs["lf-tree"]
    lt.add_argument("--kind", choices=["T", "S"], default="T")
    lt.add_argument("--d", type=int, default=1)
    lt.add_argument("--depth", type=int)
    lt.add_argument("--caps", help="n_l=16,max_word=8,pool=16,block_size=2")
    lt.add_argument("--d-range", help="comma separated d values for --glued")
    lt.add_argument("--glued", action="store_true")
    lt.add_argument("--length", type=int, default=6)

    rd = subs["reduce"]
    rd.add_argument("--terms", type=int, default=8)
    rd.add_argument("--samples", type=int, default=100)
    rd.add_argument("--seed", type=int, default=selftest.DEFAULT_SEED)

    st = subs["selftest"]
    st.add_argument("--suite", choices=["all"] + list(selftest.SUITES), default="all")
    st.add_argument("--samples", type=int)
    st.add_argument("--seed", type=int, default=selftest.DEFAULT_SEED)
    return p


def _check_counts(args):
    for name in ("depth", "samples", "terms", "length", "oracle_depth", "point_size", "n", "k"):
        v = getattr(args, name, None)
        if isinstance(v, int) and v < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be non-negative")


def _render_text(doc: dict) -> str:
    lines = []
    for key, val in doc.items():
        if key == "schema":
            continue
        if isinstance(val, dict) and val.get("type") == "Ordinal":
            val = val["text"]
        elif key == "suites":
            for s in val:
                lines.append(f"[{'PASS' if s['passed'] else 'FAIL'}] {s['suite']}: {s['summary']}")
                lines.extend(f"    {c}" for c in s["cases"])
            continue
        elif not isinstance(val, str):
            val = json.dumps(val, sort_keys=True)
        lines.append(f"{key}: {val}")
    return "\n".join(lines)


def _emit(doc: dict, fmt: str, stream) -> None:
    if fmt == "text":
        stream.write(_render_text(doc) + "\n")
    else:
        stream.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        if args.command is None:
            raise UsageError("a command is required: " + ", ".join(COMMANDS))
        _check_counts(args)
        handler = COMMANDS[args.command][0]
        doc = envelope(**handler(args))
    except (UsageError, DecodeError) as e:
        _emit({"schema": "v1", "error": "usage" if isinstance(e, UsageError) else "malformed-input",
               "detail": str(e)}, "json", stdout)
        return 2
    except cantor.Undecidable as e:
        _emit({"schema": "v1", "error": "undecidable", "detail": str(e)}, "json", stdout)
        return 1
    except (ValueError, KeyError, IndexError, TypeError, RecursionError) as e:
        _emit({"schema": "v1", "error": "domain", "detail": str(e).strip("'\"")}, "json", stdout)
        return 1
    _emit(doc, fmt, stdout)
    if args.command == "selftest" and not doc["passed"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
