"""Command-line front end.  Every invocation prints one JSON document.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 simplifier stuck.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .cremap import (
    ProjPoint,
    cm_compose,
    cm_mult,
    cm_proper_base_points,
)
from .errors import CremonaError, NotDeJonquieres, NotIdentity, ParseError, Stuck
from .exactnum import field_from_mode

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_STUCK = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _read(arg):
    """A literal, or the contents of a file when prefixed with '@' (or '-' for stdin)."""
    if arg == "-":
        return sys.stdin.read()
    if arg.startswith("@"):
        try:
            return Path(arg[1:]).read_text()
        except OSError as e:
            raise InputError(f"cannot read {arg[1:]}: {e.strerror}") from None
    return arg


def _read_file(path):
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _need_seed(args):
    if args.seed is None:
        raise InputError(f"'{args.command}' is randomized and requires --seed")
    return args.seed


def _parse_point(text, K):
    from .parsing import _Lexer

    lx = _Lexer(text.strip())
    lx.eat("[")
    coords = []
    for k in range(3):
        sign = ""
        if lx.peek() and lx.peek() in "+-":
            sign = lx.peek()
            lx.i += 1
        coords.append(K.parse(sign + lx.number()))
        if k < 2:
            lx.eat(":")
    lx.eat("]")
    if not lx.at_end():
        lx.error(f"unexpected {lx.peek()!r}", "end of point")
    try:
        return ProjPoint(coords)
    except ValueError as e:
        raise ParseError(str(e), 1, 1, "a nonzero point") from None


# ---------------------------------------------------------------------------
# commands

def cmd_compose(args, K):
    from .parsing import format_map, parse_map

    maps = [parse_map(_read(m), K) for m in args.maps]
    out = maps[-1]
    for f in reversed(maps[:-1]):
        out = cm_compose(f, out)
    return EXIT_OK, {"map": format_map(out), "degree": out.degree}


def cmd_degree(args, K):
    from .parsing import parse_map

    return EXIT_OK, {"degree": parse_map(_read(args.map), K).degree}


def cmd_basepoints(args, K):
    from .parsing import parse_map

    f = parse_map(_read(args.map), K)
    pts = cm_proper_base_points(f)
    return EXIT_OK, {"base_points": [repr(p) for p in pts]}


def cmd_mult(args, K):
    from .parsing import parse_map

    f = parse_map(_read(args.map), K)
    p = _parse_point(args.point, K)
    return EXIT_OK, {"point": repr(p), "multiplicity": cm_mult(f, p)}


def cmd_eval_word(args, K):
    from .parsing import format_map, parse_word
    from .rewrite import word_eval

    w = parse_word(_read_file(args.word), K)
    f = word_eval(w, K(1))
    return EXIT_OK, {"letters": len(w), "map": format_map(f), "degree": f.degree}


def cmd_simplify(args, K):
    from .parsing import parse_word
    from .rewrite import simplify_identity_word, verify_certificate

    seed = _need_seed(args)
    w = parse_word(_read_file(args.word), K)
    try:
        cert = simplify_identity_word(w, seed)
    except Stuck as e:
        doc = {"stuck": {"reason": e.reason, "index": e.index, "detail": e.detail}}
        if e.certificate is not None:
            doc["partial_certificate"] = e.certificate.to_dict()
        return EXIT_STUCK, doc
    ok = verify_certificate(cert)
    doc = {"certificate": cert.to_dict(), "verified": ok.ok, "steps": len(cert.steps)}
    return (EXIT_OK if ok else EXIT_FAIL), doc


def cmd_verify_cert(args, K):
    from .rewrite import RewriteCertificate, verify_certificate

    try:
        doc = json.loads(_read_file(args.certificate))
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno, "JSON") from None
    # accept the full output document of `simplify` as well as a bare certificate
    if isinstance(doc, dict) and isinstance(doc.get("certificate"), dict):
        doc = doc["certificate"]
    elif isinstance(doc, dict) and isinstance(doc.get("partial_certificate"), dict):
        doc = doc["partial_certificate"]
    try:
        cert = RewriteCertificate.from_dict(doc)
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, CremonaError):
            raise
        raise InputError(f"malformed certificate: {e}") from None
    res = verify_certificate(cert)
    return (EXIT_OK if res else EXIT_FAIL), {"valid": res.ok, "step": res.step, "message": res.message}


def cmd_relations_check(args, K):
    from .checks import relation_suite

    seed = _need_seed(args)
    res = relation_suite(seed, K)
    return (EXIT_OK if all(res.values()) else EXIT_FAIL), {"relators": res, "passed": all(res.values())}


def cmd_giz_act(args, K):
    from .gizaction import giz_act_word
    from .parsing import format_triple, parse_triple, parse_word

    w = parse_word(_read_file(args.word), K)
    T = parse_triple(_read_file(args.triple), K)
    out = giz_act_word(w, T)
    return EXIT_OK, {"triple": format_triple(out)}


def cmd_giz_check(args, K):
    from .selftest import giz_checks

    seed = _need_seed(args)
    res = giz_checks(seed, K, sizes=args.n or [1, 2, 3, 4], count=args.count)
    ok = all(v["passed"] for v in res.values())
    return (EXIT_OK if ok else EXIT_FAIL), {"results": res, "passed": ok}


def cmd_selftest(args, K):
    from .selftest import run_selftest

    seed = _need_seed(args)
    res = run_selftest(seed, K)
    ok = all(v["passed"] for v in res.values())
    return (EXIT_OK if ok else EXIT_FAIL), {"results": res, "passed": ok}


COMMANDS = {
    "compose": cmd_compose,
    "degree": cmd_degree,
    "basepoints": cmd_basepoints,
    "mult": cmd_mult,
    "eval-word": cmd_eval_word,
    "simplify": cmd_simplify,
    "verify-cert": cmd_verify_cert,
    "relations-check": cmd_relations_check,
    "giz-act": cmd_giz_act,
    "giz-check": cmd_giz_check,
    "selftest": cmd_selftest,
}


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--field-mode", default="q", help="q (rationals, default) or fp:<prime>")
    common.add_argument("--output", help="write the JSON document here instead of stdout")
    common.add_argument("--seed", type=int, help="seed for randomized commands")

    p = _Parser(prog="cremona", description="Exact computations with plane Cremona maps and words.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    map_help = "map literal such as '[y*z : x*z : x*y]', or @file"

    s = sub.add_parser("compose", parents=[common], help="compose maps (rightmost applied first)")
    s.add_argument("maps", nargs="+", help=map_help)
    s = sub.add_parser("degree", parents=[common], help="degree of a map")
    s.add_argument("map", help=map_help)
    s = sub.add_parser("basepoints", parents=[common], help="proper base points of a map of degree <= 2")
    s.add_argument("map", help=map_help)
    s = sub.add_parser("mult", parents=[common], help="multiplicity of a map at a point")
    s.add_argument("map", help=map_help)
    s.add_argument("point", help="point such as '[1:0:0]'")
    s = sub.add_parser("eval-word", parents=[common], help="evaluate a word file")
    s.add_argument("word", help="word file (one letter per line), or - for stdin")
    s = sub.add_parser("simplify", parents=[common], help="rewrite an identity word to the empty word")
    s.add_argument("word", help="word file, or - for stdin")
    s = sub.add_parser("verify-cert", parents=[common], help="replay a certificate")
    s.add_argument("certificate", help="certificate JSON file, or - for stdin")
    sub.add_parser("relations-check", parents=[common], help="verify the five relator families")
    s = sub.add_parser("giz-act", parents=[common], help="act by a word on a triple of symmetric matrices")
    s.add_argument("word", help="word file")
    s.add_argument("triple", help="triple file")
    s = sub.add_parser("giz-check", parents=[common], help="random checks of the matrix-triple action")
    s.add_argument("--n", type=int, action="append", help="matrix size (repeatable; default 1..4)")
    s.add_argument("--count", type=int, default=50, help="random triples per size")
    sub.add_parser("selftest", parents=[common], help="run the property checks with one master seed")
    return p


def run(argv):
    """Returns (exit code, document)."""
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise InputError("missing command; choose one of " + ", ".join(COMMANDS))
        try:
            K = field_from_mode(args.field_mode)
        except ValueError as e:
            raise InputError(str(e)) from None
        code, doc = COMMANDS[args.command](args, K)
        doc = {"command": args.command, "status": "ok" if code == EXIT_OK else _STATUS[code], **doc}
        return code, doc, getattr(args, "output", None)
    except InputError as e:
        return EXIT_INPUT, {"status": "input-error", "error": str(e)}, _output_of(argv)
    except ParseError as e:
        return EXIT_INPUT, {
            "status": "input-error",
            "error": str(e),
            "line": e.line,
            "column": e.column,
            "expected": e.expected,
        }, _output_of(argv)
    except (NotIdentity, NotDeJonquieres) as e:
        return EXIT_INPUT, {"status": "input-error", "error": f"{type(e).__name__}: {e}"}, _output_of(argv)
    except CremonaError as e:
        return EXIT_INPUT, {"status": "input-error", "error": f"{type(e).__name__}: {e}"}, _output_of(argv)


_STATUS = {EXIT_FAIL: "verification-failure", EXIT_INPUT: "input-error", EXIT_STUCK: "stuck"}


def _output_of(argv):
    for i, a in enumerate(argv):
        if a == "--output" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--output="):
            return a.split("=", 1)[1]
    return None


def main(argv=None):
    code, doc, output = run(sys.argv[1:] if argv is None else list(argv))
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
