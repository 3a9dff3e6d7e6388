"""Command-line front end: ``tmcurves seq|render|verify|converge``.

Exit codes: 0 when every check passed, 1 when a verification found a
counterexample, 2 for invalid input (bad flags, failed hypotheses, caps).

Turtle instructions are written ``z@f``.  ``z`` is the translation: a sum of
terms, each a rational (``3``, ``-1/2``) or an optionally scaled root of unity
``a*z(m,e)`` meaning ``a * exp(2*pi*i*e/m)``.  ``f`` is the rotation as a
fraction of a full turn, so ``1@1/6`` steps forward one unit then turns by
``pi/3``, and ``0@-1/6`` turns back by ``pi/3`` without moving.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from fractions import Fraction

from .curves import SEGMENT_CAP_ENV, DekkingCurve, thue_morse_curve
from .cyclotomic import DEFAULT_WIDTH, CycNumber, RootOfUnity, embed_batch, root
from .hausdorff import convergence_report
from .similarity import DEFAULT_DEPTH, HypothesisError, certify_main_result
from .turtle import GroupElement
from .words import SequenceSpec, decode_pair

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INVALID = 0, 1, 2


class UsageError(Exception):
    pass


# -- instruction grammar ----------------------------------------------------

_TERM = re.compile(
    r"""\s*(?P<sign>[+-]?)\s*
        (?:
            (?:(?P<coef>\d+(?:/\d+)?)\s*\*\s*)?z\(\s*(?P<m>\d+)\s*,\s*(?P<e>-?\d+)\s*\)
          | (?P<rat>\d+(?:/\d+)?)
        )\s*""",
    re.VERBOSE,
)


def parse_translation(text: str) -> CycNumber:
    """Parse ``"1"``, ``"-1/2"``, ``"1 + 2*z(3,1)"`` and similar into a CycNumber."""
    pos, total, seen = 0, CycNumber.zero(), False
    text = text.strip()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (seen and not m.group("sign")):
            raise UsageError(f"cannot parse translation {text!r} at position {pos}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("rat") is not None:
            term = CycNumber.rational(sign * Fraction(m.group("rat")))
        else:
            order = int(m.group("m"))
            if order < 1:
                raise UsageError(f"root order must be positive in {text!r}")
            coef = Fraction(m.group("coef") or 1)
            term = root(order, int(m.group("e"))) * (sign * coef)
        total = total + term
        seen = True
        pos = m.end()
    if not seen:
        raise UsageError("empty translation")
    return total


def parse_instruction(text: str) -> GroupElement:
    """Parse ``z@f`` into a turtle instruction; ``f`` is a rational number of turns."""
    if text.count("@") != 1:
        raise UsageError(f"instruction {text!r} must look like z@f, e.g. 1@1/6")
    z, f = text.split("@")
    try:
        turns = Fraction(f.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse rotation {f!r} in {text!r}") from None
    return GroupElement(parse_translation(z), RootOfUnity(turns.denominator, turns.numerator))


# -- formatting -------------------------------------------------------------


def _num(x: float) -> str:
    s = format(float(x), ".9g")
    return "0" if s == "-0" else s


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


# -- commands ---------------------------------------------------------------


def cmd_seq(args) -> int:
    chosen = [a for a in (args.tm, args.periodic, args.dekking) if a is not None]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --tm, --periodic, --dekking")
    if args.len < 0:
        raise UsageError("--len must be non-negative")
    if args.tm is not None:
        spec = SequenceSpec.thue_morse(args.tm)
    elif args.periodic is not None:
        spec = SequenceSpec.periodic(args.periodic)
    else:
        spec = SequenceSpec.dekking(*args.dekking)
    syms = spec.prefix(args.len).tolist()
    if spec.kind == "dekking":
        items = ["({},{})".format(*decode_pair(s, spec.q)) for s in syms]
    else:
        items = syms
    if args.format == "json":
        text = json.dumps(items) + "\n"
    else:
        text = _csv([items])
    _emit(text, args.out)
    return EXIT_OK


def _render_curve(args):
    if (args.dekking is None) == (args.tm is None):
        raise UsageError("give exactly one of --dekking p q k or --tm p")
    if args.dekking is not None:
        return DekkingCurve(*args.dekking).turtle
    taus = [t for t in (args.tau0, args.tau1) if t is not None] + list(args.tau or [])
    if len(taus) != args.tm:
        raise UsageError(f"--tm {args.tm} needs {args.tm} instructions, got {len(taus)}")
    return thue_morse_curve(args.tm, [parse_instruction(t) for t in taus], "T")


def svg_polyline(points, scale: float) -> str:
    """SVG for a polyline through complex ``points``, imaginary axis up."""
    xs = [p.real * scale for p in points]
    ys = [-p.imag * scale for p in points]
    pad = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys), scale)
    x0, y0 = min(xs) - pad, min(ys) - pad
    w, h = max(xs) - min(xs) + 2 * pad, max(ys) - min(ys) + 2 * pad
    stroke = _num(max(w, h) / 500)
    coords = " ".join(f"{_num(x)},{_num(y)}" for x, y in zip(xs, ys))
    r = _num(max(w, h) / 150)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_num(x0)} {_num(y0)} {_num(w)} {_num(h)}">\n'
        f'  <polyline fill="none" stroke="black" stroke-width="{stroke}" points="{coords}"/>\n'
        f'  <circle cx="{_num(xs[0])}" cy="{_num(ys[0])}" r="{r}" fill="red"/>\n'
        f'  <circle cx="{_num(xs[-1])}" cy="{_num(ys[-1])}" r="{r}" fill="green"/>\n'
        "</svg>\n"
    )


def cmd_render(args) -> int:
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    if args.scale <= 0:
        raise UsageError("--scale must be positive")
    T = _render_curve(args)
    pts = embed_batch(T.points(args.steps), args.width)
    _emit(svg_polyline(pts, args.scale), args.out)
    return EXIT_OK


def _cert_json(cert) -> dict:
    return {
        "curve": {"b": cert.b, "q": cert.q, "k2": cert.k2, "d": cert.d, "k1": cert.k1},
        "absolute": str(cert.absolute),
        "intermediate": str(cert.intermediate),
        "target": str(cert.target),
        "r": repr(cert.r),
        "target_regular": cert.target_regular,
        "koch": cert.koch,
        "depth": cert.n_max,
        "witnesses": [
            {
                "lhs": str(rep.witness.lhs),
                "rhs": str(rep.witness.rhs),
                "c": repr(rep.witness.c),
                "k1": rep.witness.k1,
                "k2": rep.witness.k2,
                "passed": rep.passed,
                "first_failure": rep.first_failure,
            }
            for rep in cert.reports
        ],
        "verified": cert.verified,
    }


def _cert_text(cert) -> str:
    lines = [
        f"chain: T ~ {cert.absolute} ~ {cert.intermediate} ~ {cert.target}",
        f"b={cert.b} q={cert.q} k2={cert.k2} d={cert.d} k1={cert.k1}",
    ]
    names = ["T -> B", "B -> D", "D -> R", "composite"]
    for name, rep in zip(names, cert.reports):
        w = rep.witness
        status = "pass" if rep.passed else f"FAIL at n={rep.first_failure}"
        lines.append(f"{name}: ({w.c!r}) * {w.lhs}({w.k1}n) = {w.rhs}({w.k2}n) ... {status}")
    lines.append(f"target {cert.target}: r = {cert.r!r}, regular = {cert.target_regular}")
    lines.append(f"koch: {'yes' if cert.koch else 'no'}")
    lines.append(f"verified to depth {cert.n_max}: {'yes' if cert.verified else 'no'}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    if args.depth < 1:
        raise UsageError("--depth must be positive")
    T = thue_morse_curve(2, [parse_instruction(args.tau0), parse_instruction(args.tau1)], "T")
    cert = certify_main_result(T, args.depth, args.target_k1)
    if args.format == "json":
        text = json.dumps(_cert_json(cert), indent=2) + "\n"
    else:
        text = _cert_text(cert)
    _emit(text, args.out)
    return EXIT_OK if cert.verified else EXIT_COUNTEREXAMPLE


def cmd_converge(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.resolution <= 0:
        raise UsageError("--resolution must be positive")
    D = DekkingCurve(*args.dekking)
    rows = convergence_report(D, args.n, args.resolution, args.width, args.against_koch)
    header = ["n", "step_distance", "error", "bound", "tail_bound", "within_bound"]
    if args.against_koch:
        header += ["koch_distance", "koch_error", "koch_agrees"]
    table = []
    for r in rows:
        row = [r.n, _num(r.step_distance.value), _num(r.step_distance.error),
               _num(r.bound), _num(r.tail_bound), r.within_bound]
        if args.against_koch:
            row += [_num(r.koch_distance.value), _num(r.koch_distance.error), r.koch_agrees]
        table.append(row)
    if args.format == "json":
        recs = [dict(zip(header, row)) for row in table]
        for rec in recs:
            for key in ("step_distance", "error", "bound", "tail_bound", "koch_distance", "koch_error"):
                if key in rec:
                    rec[key] = float(rec[key])
        text = json.dumps({"curve": str(D), "resolution": args.resolution, "rows": recs}, indent=2) + "\n"
    else:
        text = _csv([header] + [[str(x).lower() if isinstance(x, bool) else x for x in row] for row in table])
    _emit(text, args.out)
    ok = all(r.within_bound for r in rows) and all(r.koch_agrees for r in rows if args.against_koch)
    return EXIT_OK if ok else EXIT_COUNTEREXAMPLE


# -- parser -----------------------------------------------------------------


def _positive_fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="tmcurves",
        description="Thue-Morse and Dekking turtle curves with exact cyclotomic arithmetic.",
        epilog=__doc__.split("\n\n", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--segment-cap", type=int, default=None,
                        help=f"largest number of curve steps to scan (also ${SEGMENT_CAP_ENV})")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("seq", help="print a prefix of a sequence")
    p.add_argument("--tm", type=int, metavar="P", help="Thue-Morse sequence t_P")
    p.add_argument("--periodic", type=int, metavar="Q", help="n mod Q")
    p.add_argument("--dekking", type=int, nargs=2, metavar=("P", "Q"), help="pairs (t_P(n), n mod Q)")
    p.add_argument("--len", type=int, default=32)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("render", help="draw a curve prefix as SVG")
    p.add_argument("--dekking", type=int, nargs=3, metavar=("P", "Q", "K"))
    p.add_argument("--tm", type=int, metavar="P")
    p.add_argument("--tau0", help="instruction for symbol 0, z@f")
    p.add_argument("--tau1", help="instruction for symbol 1, z@f")
    p.add_argument("--tau", action="append", help="instructions for symbols 2, 3, ... in order")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--scale", type=float, default=100.0, help="SVG units per unit length")
    p.add_argument("--width", type=_positive_fraction, default=DEFAULT_WIDTH, help="embedding width")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="certify a t_2 curve against a regular Dekking curve")
    p.add_argument("--tau0", required=True)
    p.add_argument("--tau1", required=True)
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--target-k1", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("converge", help="Hausdorff convergence table for a Dekking curve")
    p.add_argument("--dekking", type=int, nargs=3, metavar=("P", "Q", "K"), required=True)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--resolution", type=float, default=1e-3)
    p.add_argument("--width", type=_positive_fraction, default=DEFAULT_WIDTH)
    p.add_argument("--against-koch", action="store_true")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_converge)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    previous = os.environ.get(SEGMENT_CAP_ENV)
    if args.segment_cap is not None:
        if args.segment_cap < 1:
            print("tmcurves: error: --segment-cap must be positive", file=sys.stderr)
            return EXIT_INVALID
        os.environ[SEGMENT_CAP_ENV] = str(args.segment_cap)
    try:
        return args.func(args)
    except HypothesisError as exc:
        print(f"tmcurves: hypothesis failed [{exc.reason}]: {exc}", file=sys.stderr)
    except (UsageError, ValueError, TypeError, MemoryError, OSError) as exc:
        print(f"tmcurves: error: {exc}", file=sys.stderr)
    finally:
        # the override applies to this invocation only
        if args.segment_cap is not None:
            if previous is None:
                os.environ.pop(SEGMENT_CAP_ENV, None)
            else:
                os.environ[SEGMENT_CAP_ENV] = previous
    return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
