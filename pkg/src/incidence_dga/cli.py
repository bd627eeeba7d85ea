"""Command-line interface.

Exit status: 0 on success (or a verified property), 1 when a verification
fails, 2 on usage or parse errors.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import IncidenceElement, basis_pairs, differential
from .complex import ComplexError, betti, skeleton
from .functor import MapError, check_differentiable
from .stories import StoryElement, StoryError, in_ideal, kahler_d, sigma, verify_differential_ideal
from .textio import (ParseError, element_to_json, format_element, format_pair,
                     format_simplex, parse_complex, parse_element, parse_map)

OK, FAILED, USAGE = 0, 1, 2


class _Usage(Exception):
    pass


def _load_complex(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise _Usage(f"{path}: {e.strerror}") from None
    try:
        return parse_complex(text)
    except (ParseError, ComplexError) as e:
        raise _Usage(f"{path}: {e}") from None


def _load_element(expr: str, c, kind=None):
    try:
        return parse_element(expr, c, kind)
    except (ParseError, ComplexError, StoryError) as e:
        raise _Usage(f"--expr: {e}") from None


def _emit(args, text: str, payload) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        print(text)


def cmd_validate(args) -> int:
    c = _load_complex(args.complex)
    f = [len(skeleton(c, n)) for n in range(c.dim + 1)]
    _emit(args, f"ok: {len(c.vertex_order)} vertices, {len(c)} simplices, dimension {c.dim}, "
                f"f-vector {' '.join(map(str, f))}",
          {"valid": True, "vertices": [str(v) for v in c.vertex_order], "simplices": len(c),
           "dimension": c.dim, "f_vector": f})
    return OK


def cmd_basis(args) -> int:
    if args.degree < 0:
        raise _Usage("--degree must be non-negative")
    c = _load_complex(args.complex)
    pairs = basis_pairs(c, args.degree)
    _emit(args, "\n".join(format_pair(p, q) for p, q in pairs) if pairs else "(empty)",
          {"degree": args.degree, "count": len(pairs),
           "pairs": [{"p": [str(v) for v in p], "q": [str(v) for v in q]} for p, q in pairs]})
    return OK


def cmd_diff(args) -> int:
    c = _load_complex(args.complex)
    x = _load_element(args.expr, c)
    if isinstance(x, IncidenceElement):
        y = differential(x)
    else:
        try:
            y = kahler_d(x)
        except StoryError as e:
            raise _Usage(f"--expr: {e}") from None
    _emit(args, format_element(y), element_to_json(y))
    return OK


def cmd_sigma(args) -> int:
    c = _load_complex(args.complex)
    x = _load_element(args.expr, c, "story")
    if not isinstance(x, StoryElement):
        raise _Usage("--expr: sigma takes a story element")
    y = sigma(x)
    _emit(args, format_element(y), element_to_json(y))
    return OK


def cmd_ideal_check(args) -> int:
    c = _load_complex(args.complex)
    x = _load_element(args.expr, c, "story")
    if not isinstance(x, StoryElement):
        raise _Usage("--expr: ideal-check takes a story element")
    inside = in_ideal(x)
    image = sigma(x)
    _emit(args, "in ideal" if inside else f"not in ideal: sigma = {format_element(image)}",
          {"in_ideal": inside, "sigma": element_to_json(image)})
    return OK if inside else FAILED


def cmd_ideal_verify(args) -> int:
    if args.max_degree < 1:
        raise _Usage("--max-degree must be at least 1")
    c = _load_complex(args.complex)
    rep = verify_differential_ideal(c, args.max_degree, seed=args.seed)
    lines = [f"degree {k}: {rep.unfair_checked[k]} unfair stories, "
             f"{rep.symmetric_checked.get(k, 0)} symmetric generators" for k in sorted(rep.unfair_checked)]
    lines.append(f"products checked: {rep.products_checked}")
    lines += rep.violations
    lines.append("differential ideal verified" if rep.ok else f"{len(rep.violations)} violations")
    _emit(args, "\n".join(lines),
          {"ok": rep.ok, "max_degree": rep.max_degree,
           "unfair_checked": {str(k): v for k, v in rep.unfair_checked.items()},
           "symmetric_checked": {str(k): v for k, v in rep.symmetric_checked.items()},
           "products_checked": rep.products_checked, "violations": rep.violations})
    return OK if rep.ok else FAILED


def cmd_betti(args) -> int:
    c = _load_complex(args.complex)
    b = betti(c)
    _emit(args, "betti: " + " ".join(map(str, b)), b)
    return OK


def cmd_map_check(args) -> int:
    if args.max_degree < 0:
        raise _Usage("--max-degree must be non-negative")
    src = _load_complex(args.source)
    dst = _load_complex(args.target)
    try:
        m = parse_map(Path(args.map).read_text(encoding="utf-8"), src, dst)
    except OSError as e:
        raise _Usage(f"{args.map}: {e.strerror}") from None
    except (ParseError, MapError) as e:
        raise _Usage(f"{args.map}: {e}") from None
    rep = check_differentiable(m, args.max_degree)

    def yn(b):
        return "yes" if b else "no"

    lines = [f"simplicial: {yn(rep.simplicial)}",
             f"multiplicative: {yn(rep.multiplicative)}",
             f"commutes with differentials: {yn(rep.commutes)}",
             f"ideal preserved: {yn(rep.ideal_preserved)}"]
    if not rep.ideal_preserved:
        lines.append("ideal not preserved")
    if not rep.commutes:
        lines.append("differential not preserved")
    lines.append("differentiable" if rep.ok else "not differentiable")
    _emit(args, "\n".join(lines),
          {"simplicial": rep.simplicial, "multiplicative": rep.multiplicative,
           "commutes": rep.commutes, "ideal_preserved": rep.ideal_preserved,
           "max_degree": rep.max_degree, "differentiable": rep.ok, "failures": rep.failures})
    return OK if rep.ok else FAILED


def cmd_props(args) -> int:
    from .properties import complex_suite, full_suite

    if args.complexes:
        complexes = {p: _load_complex(p) for p in args.complexes}
        results = complex_suite(complexes, seed=args.seed)
    else:
        results = full_suite(seed=args.seed)
    ok = all(r.passed for r in results)
    if args.json:
        print(json.dumps({"ok": ok, "checks": [
            {"name": r.name, "passed": r.passed, "seconds": round(r.seconds, 3), "details": r.details[:20]}
            for r in results]}))
    else:
        for r in results:
            print(r.line())
            for d in r.details[:5]:
                print(f"    {d}")
        print("all properties hold" if ok else "some properties FAILED")
    return OK if ok else FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="incidence-dga",
                                     description="Incidence algebras of simplicial complexes as differential modules.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="parse and summarise a complex file")
    p.add_argument("complex")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("basis", parents=[common], help="list incidence basis pairs of one degree")
    p.add_argument("complex")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_basis)

    for name, func, what in [("diff", cmd_diff, "apply d (pairs) or dbar (stories)"),
                             ("sigma", cmd_sigma, "project a story element to the incidence algebra"),
                             ("ideal-check", cmd_ideal_check, "test membership in the simplicial ideal")]:
        p = sub.add_parser(name, parents=[common], help=what)
        p.add_argument("complex")
        p.add_argument("--expr", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("ideal-verify", parents=[common], help="check that the ideal is a differential ideal")
    p.add_argument("complex")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_ideal_verify)

    p = sub.add_parser("betti", parents=[common], help="rational Betti numbers")
    p.add_argument("complex")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("map-check", parents=[common], help="check that a vertex map induces a differentiable pullback")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("map")
    p.add_argument("--max-degree", type=int, default=2)
    p.set_defaults(func=cmd_map_check)

    p = sub.add_parser("props", parents=[common], help="run the property suite (built-in corpus if no files)")
    p.add_argument("complexes", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_props)
    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else USAGE
    try:
        return args.func(args)
    except _Usage as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
