"""Command-line interface: ``qkquot <noun> <verb> [options]``.

Exit codes: 0 success, 1 verification failure, 2 parse/usage error,
3 unsupported type or feature.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import QKError, UnsupportedError
from .rootsys import parse_J, root_system

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so run() owns exit codes."""

    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


class _UsageError(Exception):
    pass


def _color(text: str, ok: bool) -> str:
    if os.environ.get("QKP_COLOR") != "1":
        return text
    return f"\x1b[{32 if ok else 31}m{text}\x1b[0m"


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=True)


# -- handlers --------------------------------------------------------------------


def _root_info(args, out):
    info = root_system(args.type).info()
    if args.format == "doc":
        print(_dump(info), file=out)
    else:
        for key, value in info.items():
            print(f"{key}: {value}", file=out)
    return EXIT_OK


def _weyl_project(args, out):
    from .weyl import parse_element, project_affine, weyl_group

    group = weyl_group(args.type)
    J = parse_J(args.J, group.rank)
    w = parse_element(args.element, group)
    p = project_affine(w, J)
    if args.format == "doc":
        print(_dump({"type": group.rs.name, "J": sorted(J), "element": w.compact(),
                     "projection": p.compact(), "finite": str(p.finite),
                     "translation": list(p.translation)}), file=out)
    else:
        print(p, file=out)
    return EXIT_OK


def _weyl_length(args, out):
    from .weyl import parse_element, weyl_group

    group = weyl_group(args.type)
    w = parse_element(args.element, group)
    if args.format == "doc":
        print(_dump({"type": group.rs.name, "element": w.compact(), "length": w.length}), file=out)
    else:
        print(w.length, file=out)
    return EXIT_OK


def _qk_product(args, out):
    from .kmodule import module_space, phi_J
    from .qkring import ring_for
    from .weyl import parse_finite

    rs = root_system(args.type)
    J = parse_J(args.J, rs.rank)
    table = ring_for(rs.name, J)
    base = module_space(rs)
    lhs = phi_J(base.basis(parse_finite(args.lhs, base.group)), J)
    rhs = phi_J(base.basis(parse_finite(args.rhs, base.group)), J)
    res = table.star(lhs, rhs)
    if args.format == "doc":
        print(_dump(res.to_doc()), file=out)
    else:
        print(res.pretty(), file=out)
    return EXIT_OK


def _qk_table(args, out):
    from .qkring import ring_for

    rs = root_system(args.type)
    table = ring_for(rs.name, parse_J(args.J, rs.rank))
    text = table.dumps()
    if args.out:
        path = Path(args.out)
        try:
            path.write_text(text)
        except OSError as exc:
            raise _IOFailure(f"cannot write {path}: {exc}") from exc
        if args.format == "doc":
            print(_dump({"path": str(path), "entries": len(table.products)}), file=out)
        else:
            print(f"wrote {len(table.products)} products to {path}", file=out)
    elif args.format == "doc":
        out.write(text)
    else:
        reps = table.space.reps
        for (a, b), x in sorted(table.products.items()):
            print(f"[{reps[a]}] * [{reps[b]}] = {x.pretty()}", file=out)
    return EXIT_OK


class _IOFailure(Exception):
    pass


def _qk_verify(args, out):
    from .verify import run_suite

    if args.chevalley:
        from .qkring import load_external_chevalley
        from .verify import external_checks

        checks = external_checks(load_external_chevalley(args.chevalley))
    else:
        checks = run_suite(args.suite, args.seed)
    ok = all(c.passed for c in checks)
    if args.format == "doc":
        doc = {
            "suite": args.suite if not args.chevalley else "external",
            "seed": args.seed,
            "passed": ok,
            "checks": [{"name": c.name, "passed": c.passed} for c in checks],
            "failures": [c.to_doc() for c in checks if not c.passed],
        }
        print(_dump(doc), file=out)
    else:
        for c in checks:
            tag = _color("PASS" if c.passed else "FAIL", c.passed)
            print(f"{tag} {c.name}", file=out)
            for w in c.witnesses:
                print(f"     witness: {w}", file=out)
        print(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def _parse_translation(text, group):
    from .errors import ParseError
    from .weyl import parse_element

    w = parse_element(text, group)
    if not w.finite.is_identity:
        raise ParseError(f"{text!r} is not a pure translation")
    return w.translation


def _gr_peterson(args, out):
    from .grassmannian import GrClass, LocalizedGrClass, eta_J, peterson_phi
    from .weyl import parse_element, weyl_group

    group = weyl_group(args.type)
    w = parse_element(args.element, group)
    denom = _parse_translation(args.denom, group)
    x = LocalizedGrClass(GrClass(group, {w: 1}), denom)
    J = parse_J(args.J, group.rank)
    res = eta_J(x, J) if J else peterson_phi(x)
    if args.format == "doc":
        print(_dump(res.to_doc()), file=out)
    else:
        print(res.pretty(), file=out)
    return EXIT_OK


def _gr_translate(args, out):
    from .grassmannian import GrClass, pontryagin_translate
    from .weyl import parse_element, weyl_group

    group = weyl_group(args.type)
    w = parse_element(args.element, group)
    beta = _parse_translation(args.by, group)
    res = pontryagin_translate(GrClass(group, {w: 1}), beta)
    (v,) = res.terms
    if args.format == "doc":
        print(_dump({"type": group.rs.name, "element": w.compact(), "by": list(beta),
                     "result": v.compact(), "length": v.length}), file=out)
    else:
        print(v, file=out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("pretty", "doc"), default="pretty")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")

    p = _Parser(prog="qkquot", description="Quantum K-theory of flag manifolds, exactly.")
    nouns = p.add_subparsers(dest="noun", required=True, parser_class=_Parser)

    root = nouns.add_parser("root", help="root system data").add_subparsers(
        dest="verb", required=True, parser_class=_Parser)
    q = root.add_parser("info", parents=[common])
    q.add_argument("--type", required=True)
    q.set_defaults(func=_root_info)

    weyl = nouns.add_parser("weyl", help="finite and affine Weyl groups").add_subparsers(
        dest="verb", required=True, parser_class=_Parser)
    q = weyl.add_parser("project", parents=[common])
    q.add_argument("--type", required=True)
    q.add_argument("--J", default="")
    q.add_argument("--element", required=True)
    q.set_defaults(func=_weyl_project)
    q = weyl.add_parser("length", parents=[common])
    q.add_argument("--type", required=True)
    q.add_argument("--element", required=True)
    q.set_defaults(func=_weyl_length)

    qk = nouns.add_parser("qk", help="quantum K-rings").add_subparsers(
        dest="verb", required=True, parser_class=_Parser)
    q = qk.add_parser("product", parents=[common])
    q.add_argument("--type", required=True)
    q.add_argument("--J", default="")
    q.add_argument("--lhs", required=True)
    q.add_argument("--rhs", required=True)
    q.set_defaults(func=_qk_product)
    q = qk.add_parser("table", parents=[common])
    q.add_argument("--type", required=True)
    q.add_argument("--J", default="")
    q.add_argument("--out")
    q.set_defaults(func=_qk_table)
    q = qk.add_parser("verify", parents=[common])
    q.add_argument("--suite", choices=("golden", "ring", "quotient", "affine", "peterson", "all"),
                   default="all")
    q.add_argument("--chevalley", help="verify ring axioms for an external Chevalley file")
    q.set_defaults(func=_qk_verify)

    gr = nouns.add_parser("gr", help="affine Grassmannian side").add_subparsers(
        dest="verb", required=True, parser_class=_Parser)
    q = gr.add_parser("peterson", parents=[common])
    q.add_argument("--type", default="A2")
    q.add_argument("--element", required=True)
    q.add_argument("--denom", required=True)
    q.add_argument("--J", default="")
    q.set_defaults(func=_gr_peterson)
    q = gr.add_parser("translate", parents=[common])
    q.add_argument("--type", default="A2")
    q.add_argument("--element", required=True)
    q.add_argument("--by", required=True)
    q.set_defaults(func=_gr_translate)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if argv in ([], ["-h"], ["--help"]):
        (out if argv else err).write(parser.format_help())
        return EXIT_OK if argv else EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help on a subcommand
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args, out)
    except UnsupportedError as exc:
        print(f"unsupported: {exc}", file=err)
        return EXIT_UNSUPPORTED
    except _IOFailure as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except QKError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
