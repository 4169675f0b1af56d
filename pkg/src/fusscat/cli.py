"""Command-line front end: ``fusscat <command> ...``.

Every command prints one JSON document (``--output json``, the default)
or a short text rendering.  Exit status is 0 on success, 1 when a check
fails and 2 on usage or bound errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from math import comb
from pathlib import Path

from fusscat import SCHEMA
from fusscat import bintree
from fusscat.dendriform import Dendriform, OpNode, RewriteLimitError
from fusscat.dias import Dias
from fusscat.ktrees import format_tree, parse_tree, reading_word, size, tree_from_word
from fusscat.lincomb import LinComb
from fusscat.mfqsym import MFQSym, class_product_closure, classes_up_to, verify_axioms
from fusscat.series import (
    check_dias_system,
    check_partial_system,
    dias_series,
    fuss_catalan_series,
    koszul_inversion_check,
    koszul_series,
    solve_dendriform_series,
)
from fusscat.sylvester import EnumerationBoundError, mpermutation_degree, sylvester_class
from fusscat.words import format_word, lincomb_to_json, parse_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    m: int = 2
    max_n: int = 4
    max_ops: int = 3
    cap: int | None = None
    order: int = 8
    output: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.cap is not None and self.cap <= 0:
            raise ValueError("enumeration cap must be positive")
        if self.output not in ("json", "text"):
            raise ValueError(f"unknown output format {self.output!r}")


class UsageError(Exception):
    pass


def _config(args) -> RunConfig:
    return RunConfig(
        m=getattr(args, "m", 2),
        max_n=getattr(args, "max_n", 4),
        max_ops=getattr(args, "max_ops", 3),
        cap=args.cap,
        order=getattr(args, "order", 8),
        output=args.output,
        seed=getattr(args, "seed", 0),
    )


def _terms(lc: LinComb, show) -> list[dict]:
    return [{"tree": show(t), "coeff": str(c)} for t, c in lc.items()]


def cmd_dims(cfg: RunConfig, args) -> tuple[dict, bool]:
    rows = []
    if args.algebra == "dendriform":
        alg = Dendriform(cfg.m)
        for n in range(1, cfg.max_n + 1):
            rep = alg.dimension_check(n, with_rank=n <= args.rank_max_n)
            rows.append(rep.to_json())
    else:
        alg = Dias(cfg.m)
        for n in range(1, cfg.max_n + 1):
            census = len(alg.enumerate_normal(n - 1))
            closed = comb(n + cfg.m - 1, n - 1)
            rows.append({"n": n, "census": census, "closed_form": closed, "rank": None, "match": census == closed})
    ok = all(r["match"] for r in rows)
    return {"algebra": args.algebra, "m": cfg.m, "rows": rows, "pass": ok}, ok


def cmd_normalize(cfg: RunConfig, args) -> tuple[dict, bool]:
    if args.algebra == "dias":
        alg = Dias(cfg.m)
        t = alg.parse(args.expr)
        nf = alg.normal_form(t)
        return {
            "algebra": "dias",
            "m": cfg.m,
            "input": alg.show(t),
            "normal_form": alg.show(nf),
            "terms": [{"tree": alg.show(nf), "coeff": "1"}],
        }, True
    alg = Dendriform(cfg.m)
    t = alg.parse(args.expr)
    res = alg.normalize(t)
    return {"algebra": "dendriform", "m": cfg.m, "input": alg.show(t), "terms": _terms(res, alg.show)}, True


def cmd_class(cfg: RunConfig, args) -> tuple[dict, bool]:
    w = parse_word(args.word)
    m, n = mpermutation_degree(w)
    cls = sylvester_class(w)
    out = {"word": format_word(w), "m": m, "n": n}
    out.update(cls.to_json())
    return out, True


def _op_label(text: str, m: int) -> int | str:
    if text in ("prec", "succ", "full"):
        return {"prec": 0, "succ": m, "full": "full"}[text]
    if text.startswith("mid:"):
        i = int(text[4:])
        if not 1 <= i <= m - 1:
            raise UsageError(f"mid index {i} out of range 1..{m - 1}")
        return i
    raise UsageError(f"unknown operation {text!r}; use prec, mid:i, succ or full")


def cmd_product(cfg: RunConfig, args) -> tuple[dict, bool]:
    alg = MFQSym(cfg.m)
    label = _op_label(args.op, cfg.m)
    a, b = alg.F(parse_word(args.left)), alg.F(parse_word(args.right))
    res = alg.product(a, b) if label == "full" else alg.op(label, a, b)
    return {
        "m": cfg.m,
        "op": args.op,
        "left": format_word(parse_word(args.left)),
        "right": format_word(parse_word(args.right)),
        "terms": lincomb_to_json(res),
    }, True


def cmd_verify(cfg: RunConfig, args) -> tuple[dict, bool]:
    axioms = verify_axioms(
        cfg.m,
        args.size,
        method=args.method,
        samples=args.samples,
        sample_max_size=args.sample_size,
        seed=cfg.seed,
    )
    alg = Dendriform(cfg.m)
    trees = [t for k in range(cfg.max_ops + 1) for t in bintree.all_trees(k, cfg.m, OpNode)]
    bad = alg.check_soundness(trees)
    soundness = {
        "max_ops": cfg.max_ops,
        "trees": len(trees),
        "pass": bad is None,
        "counterexample": None if bad is None else alg.show(bad),
    }

    pool = classes_up_to(cfg.m, args.size)
    limit = args.size + 1
    pairs = 0
    closure_fail = None
    for A in pool:
        for B in pool:
            if len(next(iter(A))) + len(next(iter(B))) > limit * cfg.m:
                continue
            for op in list(range(cfg.m + 1)) + ["full"]:
                pairs += 1
                if closure_fail is None and not class_product_closure(cfg.m, op, A, B):
                    closure_fail = {"op": str(op), "left": format_word(min(A)), "right": format_word(min(B))}
    closure = {"max_total_size": limit, "checks": pairs, "pass": closure_fail is None, "counterexample": closure_fail}
    ok = axioms.ok and soundness["pass"] and closure["pass"]
    return {"m": cfg.m, "axioms": axioms.to_json(), "soundness": soundness, "class_closure": closure, "pass": ok}, ok


def cmd_confluence(cfg: RunConfig, args) -> tuple[dict, bool]:
    alg = Dias(cfg.m)
    conf = alg.check_local_confluence()
    acyc = alg.check_acyclic(cfg.max_ops)
    ok = conf.ok and acyc.ok
    certificate = {
        "schema": SCHEMA,
        "m": cfg.m,
        "rules": [{"relation": r.name, "rule": r.describe(cfg.m)} for r in alg.rules],
        "local_confluence": conf.to_json(),
        "acyclicity": acyc.to_json(),
        "pass": ok,
    }
    path = Path(args.certificate or f"dias-confluence-m{cfg.m}.json")
    path.write_text(json.dumps(certificate, sort_keys=True, indent=2) + "\n")
    summary = {
        "m": cfg.m,
        "certificate": str(path),
        "trees": conf.trees,
        "rewritable": conf.rewritable,
        "confluent": conf.ok,
        "acyclic": acyc.ok,
        "acyclic_max_ops": cfg.max_ops,
        "pass": ok,
    }
    return summary, ok


def cmd_bijection(cfg: RunConfig, args) -> tuple[dict, bool]:
    if (args.word is None) == (args.tree is None):
        raise UsageError("give exactly one of --word or --tree")
    if args.word is not None:
        w = parse_word(args.word)
        t = tree_from_word(w)
        back = reading_word(t)
    else:
        t = parse_tree(args.tree)
        if t is None:
            raise UsageError("the empty tree has no reading word")
        w = reading_word(t)
        back = w
    ok = reading_word(tree_from_word(w)) == w and tree_from_word(back) == t
    return {"m": t.m, "tree": format_tree(t), "word": format_word(w), "size": size(t), "round_trip": ok}, ok


def cmd_series(cfg: RunConfig, args) -> tuple[dict, bool]:
    m, order = cfg.m, cfg.order
    if args.check == "fixedpoint":
        s = solve_dendriform_series(m, order)
        checks = [{"name": "closed form", "pass": s == fuss_catalan_series(m, order), "detail": ""}]
    elif args.check == "system":
        s = solve_dendriform_series(m, order)
        census = Dendriform(m).census_by_root(order)
        checks = [c.to_json() for c in check_partial_system(m, order, census)]
    elif args.check == "dias":
        s = dias_series(m, order)
        census = Dias(m).census_by_root(order)
        checks = [c.to_json() for c in check_dias_system(m, order, census)]
    else:
        f, h = koszul_series(m, order)
        s = f.compose(-h.negate_argument())
        checks = [c.to_json() for c in koszul_inversion_check(m, order)]
    ok = all(c["pass"] for c in checks)
    return {"m": m, "order": order, "check": args.check, "coefficients": s.to_json(), "checks": checks, "pass": ok}, ok


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "text"), default="json")
    common.add_argument("--cap", type=int, default=None, help="enumeration cap (overrides FUSSCAT_ENUM_CAP)")

    parser = argparse.ArgumentParser(prog="fusscat", description="m-dendriform and m-Dias algebra workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("dims", cmd_dims, "normal-form census against the closed-form dimensions")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--algebra", choices=("dendriform", "dias"), default="dendriform")
    p.add_argument("--rank-max-n", type=int, default=4, help="compute ranks for n up to this degree")

    p = add("normalize", cmd_normalize, "rewrite an operator tree into normal forms")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--expr", required=True)
    p.add_argument("--algebra", choices=("dendriform", "dias"), default="dendriform")

    p = add("class", cmd_class, "sylvester class of an m-permutation")
    p.add_argument("--word", required=True)

    p = add("product", cmd_product, "product or one operation in mFQSym")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--op", required=True, help="prec, mid:i, succ or full")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    p = add("verify", cmd_verify, "axioms, rewriting soundness and class closure")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--size", type=int, default=2)
    p.add_argument("--method", choices=("reduced", "direct"), default="reduced")
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--sample-size", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-ops", type=int, default=3, help="soundness over all trees with this many operators")

    p = add("confluence", cmd_confluence, "m-Dias local confluence and acyclicity certificate")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--max-ops", type=int, default=3)
    p.add_argument("--certificate", default=None, help="certificate path")

    p = add("bijection", cmd_bijection, "(m+1)-ary tree <-> 132-avoiding m-permutation")
    p.add_argument("--word")
    p.add_argument("--tree")

    p = add("series", cmd_series, "generating-series checks")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--check", choices=("fixedpoint", "system", "dias", "koszul"), default="fixedpoint")
    return parser


def _render_text(payload: dict, indent: str = "") -> list[str]:
    lines = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_render_text(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            cols = sorted(value[0])
            cells = [[str(row.get(c)) or "-" for c in cols] for row in value]
            widths = [max(len(c), *(len(r[j]) for r in cells)) for j, c in enumerate(cols)]
            for row in [cols] + cells:
                lines.append(indent + "  " + "  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip())
        elif isinstance(value, list):
            lines.append(f"{indent}{key}: {' '.join(map(str, value))}")
        else:
            lines.append(f"{indent}{key}: {value}")
    return lines


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    saved = os.environ.get("FUSSCAT_ENUM_CAP")
    try:
        cfg = _config(args)
        if cfg.cap is not None:
            os.environ["FUSSCAT_ENUM_CAP"] = str(cfg.cap)
        payload, ok = args.func(cfg, args)
    except (UsageError, ValueError, SyntaxError, EnumerationBoundError, RewriteLimitError) as exc:
        print(f"fusscat {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if saved is None:
            os.environ.pop("FUSSCAT_ENUM_CAP", None)
        else:
            os.environ["FUSSCAT_ENUM_CAP"] = saved
    used = {k: v for k, v in asdict(cfg).items() if k in ("cap", "output") or hasattr(args, k)}
    doc = {"schema": SCHEMA, "command": args.command, "config": used}
    doc.update(payload)
    if cfg.output == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print("\n".join(_render_text(doc)))
    return EXIT_OK if ok else EXIT_FAIL


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
