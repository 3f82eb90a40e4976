"""Command line: ``decide``, ``verify``, ``reduce`` and ``repl``.

Exit codes::

    0   YES (decide), verified (verify), moves exist (reduce)
    1   NO, verification failed, no reducing move
    2   UNDECIDED
    64  input error (syntax, constant component, malformed certificate)
"""

import argparse
import sys

from . import certify
from .engine import Decision, Div1, MorphismPair, Outcome, Sub2, _reports, decide
from .errors import InvalidInput, MalformedCertificate, PolySyntaxError
from .notation import parse_poly, render_defining, render_elem, render_poly, render_uni
from .tower import FieldCtx, Mode

EXIT_YES, EXIT_NO, EXIT_UNDECIDED, EXIT_USAGE = 0, 1, 2, 64

_EXIT = {Outcome.YES: EXIT_YES, Outcome.NO: EXIT_NO, Outcome.UNDECIDED: EXIT_UNDECIDED}


class InputError(Exception):
    """Reported on stderr, exit status 64."""


def read_pair(u_text, v_text):
    out = []
    for name, text in (("U", u_text), ("V", v_text)):
        try:
            p = parse_poly(text)
        except PolySyntaxError as exc:
            raise InputError(f"{name}: {exc}\n  {text}\n  {' ' * (exc.position - 1)}^") from exc
        if p.total_degree() < 1:
            raise InputError(f"{name}: component is constant")
        out.append(p)
    return tuple(out)


def describe_step(step, ctx):
    """One-line text of a move, parameters rendered over ``ctx``."""
    if isinstance(step, Sub2):
        return f"sub2-{step.side.value} q = {render_uni(step.q.over(ctx))}"
    if isinstance(step, Div1):
        a, b = render_elem(ctx.lift(step.a), ctx), render_elem(ctx.lift(step.b), ctx)
        return f"div1-{step.side.value} a = {a}, b = {b}"
    return "swap"


def describe_tower(ctx):
    return ", ".join(f"{g.name}: {render_defining(ctx, k)} = 0" for k, g in enumerate(ctx.gens, 1))


def _print_trace(d, stream):
    print(f"bound {d.bound}, nodes {d.stats.nodes}, depth {d.stats.max_depth}, splits {d.stats.splits}", file=stream)
    if d.outcome is Outcome.YES:
        if d.ctx.height:
            print(f"tower: {describe_tower(d.ctx)}", file=stream)
        for i, entry in enumerate(d.trace, 1):
            print(f"  {i}. {describe_step(entry.step, d.ctx)}", file=stream)
        print(f"  final: ({render_poly(d.final.u)}, {render_poly(d.final.v)})", file=stream)
    else:
        for rep in d.refusal:
            gcd = "" if rep.gcd is None else f" [gcd {render_uni(rep.gcd, 'b')}]"
            print(f"  {rep.move}: {rep.reason}{gcd}", file=stream)


def cmd_decide(args, out=sys.stdout, err=sys.stderr):
    u, v = read_pair(args.u, args.v)
    d: Decision = decide(u, v, Mode(args.field), args.max_depth)
    if args.trace:
        _print_trace(d, err)
    if args.json:
        out.write(certify.encode(certify.from_decision(d)))
    else:
        print(d.outcome.value.upper(), file=out)
        if not args.trace and d.outcome is not Outcome.YES:
            for rep in d.refusal:
                print(f"  {rep.move}: {rep.reason}", file=out)
    return _EXIT[d.outcome]


def cmd_verify(args, out=sys.stdout, err=sys.stderr):
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from exc
    try:
        c = certify.decode(text)
        ok_replay = certify.replay(c)
        ok_recompose = ok_replay and certify.recompose(c)
    except MalformedCertificate as exc:
        raise InputError(f"malformed certificate: {exc}") from exc
    print(f"replay: {'ok' if ok_replay else 'FAILED'}", file=out)
    print(f"recompose: {'ok' if ok_recompose else 'FAILED'}", file=out)
    return EXIT_YES if ok_recompose else EXIT_NO


def reduce_listing(u, v, mode):
    """Lines describing every reducing move at ``(u, v)``, and whether any exist."""
    root = FieldCtx(Mode(mode))
    pair = MorphismPair(u.over(root), v.over(root), root)
    lines = []
    found = False
    for ctx, reports in _reports(pair, Mode(mode)):
        for rep in reports:
            gcd = "" if rep.gcd is None else f" [gcd {render_uni(rep.gcd, 'b')}]"
            if not rep.moves:
                lines.append(f"{rep.move}: unavailable, {rep.reason}{gcd}")
                continue
            for step, succ in rep.moves:
                found = True
                where = f" over {describe_tower(succ.ctx)}" if succ.ctx.height else ""
                degs = f"deg ({succ.u.total_degree()}, {succ.v.total_degree()})"
                lines.append(f"{describe_step(step, succ.ctx)} -> {degs}{where}{gcd}")
    return lines, found


def cmd_reduce(args, out=sys.stdout, err=sys.stderr):
    u, v = read_pair(args.u, args.v)
    lines, found = reduce_listing(u, v, args.field)
    for line in lines:
        print(line, file=out)
    return EXIT_YES if found else EXIT_NO


def cmd_repl(args, out=sys.stdout, err=sys.stderr, stdin=None):
    from .repl import Session

    shell = Session(Mode(args.field), stdin=stdin or sys.stdin, stdout=out)
    if stdin is not None or not sys.stdin.isatty():
        shell.use_rawinput = False
        shell.prompt = ""
    shell.cmdloop()
    return 0


def _depth(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sacdecide",
        description="Decide whether a plane map (u, v) over Q is a product of simple affine contractions.",
        epilog="exit status: 0 yes/ok, 1 no/failed, 2 undecided, 64 input error",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    field = dict(choices=[m.value for m in Mode], default=Mode.CLOSURE.value, help="ground field (default closure)")

    p = sub.add_parser("decide", help="run the decision procedure")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--field", **field)
    p.add_argument("--json", action="store_true", help="write the certificate to stdout")
    p.add_argument("--trace", action="store_true", help="step log on stderr")
    p.add_argument("--max-depth", type=_depth, default=None, help="search depth (default: deg u + deg v - 2)")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("verify", help="check a certificate by replay and recomposition")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="list the single reducing moves")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--field", **field)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("repl", help="interactive reduction session")
    p.add_argument("--field", **field)
    p.set_defaults(func=cmd_repl)
    return parser


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        return args.func(args, out=out, err=err)
    except (InputError, InvalidInput) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
