"""Command-line front end: ``omegafrag <command> [inputs] [options]``.

Inputs are either ``alphabet: <letters>; <expression>`` texts or
automata in the line-oriented text format.  Exit status is 0 on
success, 1 on malformed input and 2 when a resource bound is hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import automata as au
from .errors import OmegaFragError, ParseError, PreconditionError, ResourceLimitError
from .expressions import compile_text
from .fragments import classify
from .polynomials import synthesize_polynomial
from .profiles import DEFAULT_LIMIT
from .syntactic import report, syntactic_context
from .topology import closure_alphabetic, interior_alphabetic, is_closed_alphabetic, is_open_alphabetic
from .words import parse_word

EXIT_OK, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def load_language(text: str, limit: int = DEFAULT_LIMIT) -> au.ExtBuchiAutomaton:
    """An automaton from either an expression text or the automaton format."""
    if any(line.strip().startswith("states:") for line in text.splitlines()):
        return au.loads(text)
    return compile_text(text, limit)


def _inputs(args):
    texts = [(t, t.strip()) for t in args.expr]
    texts += [(t, t.strip()) for t in args.inline or []]
    for path in args.file:
        content = Path(path).read_text()
        texts.append((content, path))
    return texts


def _one_input(args):
    texts = _inputs(args)
    if len(texts) != 1:
        raise PreconditionError(f"expected exactly one input, got {len(texts)}")
    text, label = texts[0]
    return load_language(text, args.max_monoid), label


def _emit(text):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _classify_file(job):
    path, witness, limit, degree, fmt = job
    text = Path(path).read_text()
    try:
        rep = classify(load_language(text, limit), witness, limit, degree, language=text.strip())
        body = rep.to_json() if fmt == "json" else rep.to_text()
        status = EXIT_OK
    except ResourceLimitError as exc:
        body, status = f"resource limit: {exc}", EXIT_LIMIT
    except OmegaFragError as exc:
        body, status = f"error: {exc}", EXIT_INPUT
    out = Path(f"{path}.report.{'json' if fmt == 'json' else 'txt'}")
    out.write_text(body + "\n")
    return str(out), status


def cmd_classify(args):
    if args.batch:
        files = sorted(str(p) for p in Path(args.batch).iterdir() if p.is_file() and ".report." not in p.name)
        jobs = [(f, args.witness, args.max_monoid, args.max_degree, args.format) for f in files]
        worst = EXIT_OK
        with ProcessPoolExecutor() as pool:
            for out, status in pool.map(_classify_file, jobs):
                _emit(f"{out}: {'ok' if status == EXIT_OK else 'failed'}")
                worst = max(worst, status)
        return worst
    aut, label = _one_input(args)
    rep = classify(aut, args.witness, args.max_monoid, args.max_degree, language=label)
    _emit(rep.to_json() if args.format == "json" else rep.to_text())
    return EXIT_OK


def cmd_closure(args):
    aut, label = _one_input(args)
    result = interior_alphabetic(aut, args.max_monoid) if args.interior else closure_alphabetic(aut)
    result = au.reduce(result)
    ctx = syntactic_context(aut, args.max_monoid)
    opened = is_open_alphabetic(ctx)
    closed = is_closed_alphabetic(aut, args.max_monoid)
    verdict = "clopen" if opened and closed else "open" if opened else "closed" if closed else "neither open nor closed"
    if args.format == "dot":
        _emit(au.to_dot(result, "interior" if args.interior else "closure"))
    elif args.format == "json":
        payload = {
            "language": label,
            "operation": "interior" if args.interior else "closure",
            "automaton": au.dumps(result),
            "open": opened,
            "closed": closed,
            "verdict": verdict,
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2))
    else:
        _emit(au.dumps(result) + f"# verdict: {verdict}")
    return EXIT_OK


def cmd_monoid(args):
    aut, label = _one_input(args)
    ctx = syntactic_context(aut, args.max_monoid)
    M = ctx.monoid
    if args.format == "dot":
        _emit(M.egg_box_dot())
        return EXIT_OK
    data = report(ctx)
    if args.format == "json":
        data["language"] = label
        _emit(json.dumps(data, sort_keys=True, indent=2))
        return EXIT_OK
    lines = [f"size: {data['size']}", "elements:"]
    for el in data["elements"]:
        rep = el["representative"] or "1"
        lines.append(f"  {el['name']:<6} rep {rep}{'  idempotent' if el['idempotent'] else ''}")
    lines.append(M.dumps().rstrip())
    lines.append("linked pairs:")
    for p in data["linked_pairs"]:
        lines.append(f"  ({p['s']}, {p['e']}) {'inside' if p['val'] else 'outside'}")
    lines.append("conjugacy classes:")
    for group in data["conjugacy_classes"]:
        lines.append("  " + " ".join(f"({s},{e})" for s, e in group))
    lines.append(f"in DA: {'yes' if data['in_DA'] else 'no'}")
    lines.append("egg-box:")
    lines.append(M.egg_box_text().rstrip())
    _emit("\n".join(lines))
    return EXIT_OK


def cmd_equiv(args):
    texts = _inputs(args)
    if len(texts) != 2:
        raise PreconditionError(f"equiv expects exactly two inputs, got {len(texts)}")
    a, b = (load_language(t, args.max_monoid) for t, _ in texts)
    w = au.counterexample(a, b, args.max_monoid)
    if args.format == "json":
        payload = {"equivalent": w is None, "counterexample": None if w is None else str(w or "1")}
        _emit(json.dumps(payload, sort_keys=True, indent=2))
    elif w is None:
        _emit("equivalent")
    else:
        side = "first" if au.member(a, w) else "second"
        _emit(f"not equivalent: {w or '1'} is only in the {side} language")
    return EXIT_OK


def cmd_member(args):
    aut, _ = _one_input(args)
    word = parse_word(args.word)
    inside = au.member(aut, word)
    if args.format == "json":
        _emit(json.dumps({"word": str(word or "1"), "member": inside}, sort_keys=True, indent=2))
    else:
        _emit("yes" if inside else "no")
    return EXIT_OK


def cmd_synth(args):
    aut, label = _one_input(args)
    poly = synthesize_polynomial(aut, args.max_degree, args.unambiguous, args.max_monoid)
    if args.format == "json":
        payload = {"language": label, "found": poly is not None, "polynomial": None if poly is None else str(poly)}
        _emit(json.dumps(payload, sort_keys=True, indent=2))
    elif poly is None:
        _emit(f"no polynomial of degree <= {args.max_degree} found")
    else:
        _emit(str(poly))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("inline", nargs="*", help="inline 'alphabet: ...; expr' input")
    common.add_argument("-e", "--expr", action="append", default=[], help="inline input (repeatable)")
    common.add_argument("-f", "--file", action="append", default=[], help="input file (repeatable)")
    common.add_argument("--format", choices=["text", "json", "dot"], default="text")
    common.add_argument("--max-monoid", type=_positive, default=DEFAULT_LIMIT, help="profile monoid size bound")
    common.add_argument("--max-degree", type=_positive, default=3, help="synthesis degree bound")

    parser = _Parser(prog="omegafrag", description="Fragments of first-order logic over finite and infinite words")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="decide the fragment memberships")
    p.add_argument("--witness", action="store_true", help="explain negative answers")
    p.add_argument("--batch", metavar="DIR", help="classify every file of DIR into <file>.report.*")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("closure", parents=[common], help="alphabetic closure or interior")
    p.add_argument("--interior", action="store_true")
    p.set_defaults(run=cmd_closure)

    p = sub.add_parser("monoid", parents=[common], help="syntactic ordered monoid")
    p.set_defaults(run=cmd_monoid)

    p = sub.add_parser("equiv", parents=[common], help="compare two languages")
    p.set_defaults(run=cmd_equiv)

    p = sub.add_parser("member", parents=[common], help="test a word u, u(v)^w or uv^w")
    p.add_argument("--word", required=True)
    p.set_defaults(run=cmd_member)

    p = sub.add_parser("synth", parents=[common], help="search a polynomial for the language")
    p.add_argument("--unambiguous", action="store_true")
    p.set_defaults(run=cmd_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (ParseError, PreconditionError, OmegaFragError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
