"""Command-line front end.

Exit codes: 0 means yes (or success), 1 means no, 2 means the input was
rejected; a rejection prints one diagnostic line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import groups, harness, interchange, rewrite, signature, spectral, totalcolor
from .terms import TermSyntaxError, leaf_positions, parse, parse_identity, print_canonical

YES, NO, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=1, sort_keys=True))


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise ValueError(f"expected comma-separated integers: {text!r}") from None


def _number_list(text: str) -> List[Fraction]:
    try:
        return [Fraction(v.strip()) for v in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"expected comma-separated numbers: {text!r}") from None


# --------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    e = parse_identity(args.identity)
    if args.k is not None:
        k = groups.parse_selector(args.k)
        if args.method == "criterion":
            verdict = groups.criterion_in_sigma_K(e, k)
        else:
            verdict = groups.oracle_in_sigma_K(e, k)
        print(f"{'holds' if verdict else 'fails'} in Sigma_{{{','.join(map(str, sorted(k)))}}}")
    else:
        g = groups.parse_group(args.group) if args.group else groups.KL
        verdict = groups.in_sigma(e, g)
        print(f"{'holds' if verdict else 'fails'} in Sigma({g.encode()})")
    return YES if verdict else NO


def cmd_color(args) -> int:
    g = groups.parse_group(args.group) if args.group else groups.KL
    t = parse(args.term)
    names = dict(leaf_positions(t))
    for p, c in groups.leaf_colors(t, g).items():
        print(f"{p or '-'}\t{names[p]}\t{g.name(c)}")
    return YES


def cmd_coeffs(args) -> int:
    g = groups.parse_group(args.group) if args.group else groups.KL
    vec = groups.coefficient_vector(parse(args.term), g)
    _emit({v: {g.name(e): c for e, c in sorted(ring.items())} for v, ring in vec.items()})
    return YES


def cmd_derive(args) -> int:
    t = parse(args.term)
    parts = args.swap.split(",")
    if len(parts) != 2 or any(c not in "LR" for c in "".join(parts)):
        raise ValueError(f"--swap expects two L/R positions separated by a comma: {args.swap!r}")
    tr = interchange.derive_interchange(interchange.SwapRequest(t, parts[0], parts[1]))
    print(tr.dumps())
    return YES


def cmd_verify_trace(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    try:
        tr = rewrite.DerivationTrace.loads(text)
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise ValueError(f"malformed trace file: {exc}") from None
    res = rewrite.verify_trace(tr, rewrite.get_rules(args.rules))
    if res.ok:
        print(f"ok {print_canonical(res.final)}")
        return YES
    print(f"failed at step {res.failed_step}: {res.reason}")
    return NO


def cmd_search(args) -> int:
    if args.depth < 0:
        raise ValueError("--depth must be nonnegative")
    tr = rewrite.bounded_search(parse_identity(args.identity), rewrite.get_rules(args.rules), args.depth)
    if tr is None:
        print("no derivation found")
        return NO
    print(tr.dumps())
    return YES


def cmd_compress(args) -> int:
    verdict = signature.is_compressed(args.word)
    print("compressed" if verdict else "not compressed")
    return YES if verdict else NO


def cmd_sigma_term(args) -> int:
    print(print_canonical(signature.sigma_term(args.word, args.var)))
    return YES


def cmd_lambda(args) -> int:
    q, p1, p2 = totalcolor.total_color(parse(args.term))
    _emit({"total_color": list(q.as_tuple()), "phi1": str(p1), "phi2": str(p2)})
    return YES


def cmd_represent(args) -> int:
    q = totalcolor.TotalColor.parse(args.tuple)
    if not totalcolor.is_representable(q):
        print("not representable")
        return NO
    print(print_canonical(totalcolor.construct_tree(q)) if args.witness else "representable")
    return YES


def cmd_quad_form(args) -> int:
    final, tr = interchange.to_quad_form(parse(args.term))
    _emit({"term": print_canonical(final), "position": interchange.find_quad_shape(final), "trace": tr.to_json()})
    return YES


def cmd_spectrum(args) -> int:
    s = _int_list(args.s)
    row = _number_list(args.row)
    spec = spectral.MulticirculantSpec(tuple(s), tuple(row))
    _emit(spectral.eigenvalues(spec).to_json())
    return YES


def cmd_basis_status(args) -> int:
    rep = spectral.interchange_basis_decision(groups.parse_group(args.group))
    print(rep.dumps())
    return YES if rep.verdict else NO


def cmd_model_check(args) -> int:
    with open(args.table, encoding="utf-8") as fh:
        model = rewrite.FiniteGroupoid.loads(fh.read())
    verdict = rewrite.model_check(model, parse_identity(args.identity))
    print("holds" if verdict else "fails")
    return YES if verdict else NO


def cmd_enumerate(args) -> int:
    if args.rank < 1:
        raise ValueError("--rank must be positive")
    if args.report == "representability":
        reps = [harness.representability_report(args.rank)]
    elif args.report == "interchange":
        reps = [harness.interchange_report(args.rank), harness.quad_form_report(args.rank)]
    else:
        reps = [harness.closure_report()]
    _emit([r.to_json() for r in reps])
    return YES if all(r.ok for r in reps) else NO


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="medial", description="Identities of medial groupoids and the operations +-x+-y.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", help="decide membership of an identity")
    s.add_argument("identity")
    s.add_argument("--variety", choices=["sigma"], default="sigma")
    s.add_argument("--group", help="m,n,a,a',b,b' (default: Klein group)")
    s.add_argument("--k", help="operation selector, e.g. 2,4")
    s.add_argument("--method", choices=["oracle", "criterion"], default="oracle")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("color", help="leaf colors of a term")
    s.add_argument("term")
    s.add_argument("--group")
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("coeffs", help="coefficient vector in the group ring")
    s.add_argument("term")
    s.add_argument("--group")
    s.set_defaults(func=cmd_coeffs)

    s = sub.add_parser("derive", help="derive an interchange law from M1-M6")
    s.add_argument("term")
    s.add_argument("--swap", required=True, help="POS1,POS2 over L/R")
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("verify-trace", help="replay a trace file")
    s.add_argument("file")
    s.add_argument("--rules", default="M")
    s.set_defaults(func=cmd_verify_trace)

    s = sub.add_parser("search", help="bounded breadth-first proof search")
    s.add_argument("identity")
    s.add_argument("--rules", default="M")
    s.add_argument("--depth", type=int, default=4)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("compress", help="is a signature compressed")
    s.add_argument("word")
    s.set_defaults(func=cmd_compress)

    s = sub.add_parser("sigma-term", help="canonical linear term of a signature")
    s.add_argument("word")
    s.add_argument("--var", default="x")
    s.set_defaults(func=cmd_sigma_term)

    s = sub.add_parser("lambda", help="total color and phi values")
    s.add_argument("term")
    s.set_defaults(func=cmd_lambda)

    s = sub.add_parser("represent", help="is a 4-tuple a total color")
    s.add_argument("tuple")
    s.add_argument("--witness", action="store_true")
    s.set_defaults(func=cmd_represent)

    s = sub.add_parser("quad-form", help="rewrite until a quad-shaped subterm appears")
    s.add_argument("term")
    s.set_defaults(func=cmd_quad_form)

    s = sub.add_parser("spectrum", help="eigenvalues of a multicirculant matrix")
    s.add_argument("--s", required=True)
    s.add_argument("--row", required=True)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("basis-status", help="do interchange laws form a basis")
    s.add_argument("--group", required=True)
    s.set_defaults(func=cmd_basis_status)

    s = sub.add_parser("model-check", help="check an identity in a finite groupoid")
    s.add_argument("--table", required=True)
    s.add_argument("identity")
    s.set_defaults(func=cmd_model_check)

    s = sub.add_parser("enumerate", help="exhaustive checks over tree shapes")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--report", choices=["representability", "interchange", "closure"], required=True)
    s.set_defaults(func=cmd_enumerate)
    return p


_VALUED = {"--row", "--s", "--group", "--k", "--swap", "--var"}


def _glue(argv: Sequence[str]) -> List[str]:
    """Attach option values such as ``--row -1,1,1,0`` that look like flags."""
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUED:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(_glue(argv))
        if args.command == "check" and args.k is not None and args.group is not None:
            raise UsageError("--k and --group are mutually exclusive")
        return args.func(args)
    except (UsageError, TermSyntaxError, ValueError, OSError, ArithmeticError, interchange.DerivationFailure) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"medial: error: {msg}", file=sys.stderr)
        return ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
