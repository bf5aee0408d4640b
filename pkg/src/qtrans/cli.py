"""Command-line front end: ``qtrans <verb> [options]``.

Exit codes: 0 when every check of the verb passed, 1 when a mathematical
check failed (including a map that is not a quasi-translation), 2 for usage
or input errors, 70 for anything unexpected.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import gallery
from .classify import classify_small
from .core.expr import default_names, format_poly, parse, parse_x
from .core.matrix import PolyMap, gradient, hessian, matmul, rank, row_times_matrix
from .core.poly import Poly
from .errors import NotQuasiTranslationError, ParseError, DimensionError, QtransError, VerificationError
from .hessian import (
    column_dependence,
    find_relation,
    hesse_check,
    image_span,
    make_relation,
    qt_from_relation,
)
from .quasitrans import (
    check_qt,
    conjugate,
    homogenize,
    is_invariant,
    iterate,
    quasi_degree,
    strip_gcd,
)
from . import serialize

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 70

#: Largest dimension for which ``--mode`` defaults to certified rank.
CERTIFIED_DEFAULT_MAX_DIM = 5


class UsageError(Exception):
    pass


@dataclass
class RunResult:
    """What a verb produced: text lines, a JSON document and an exit code."""

    lines: List[str] = field(default_factory=list)
    doc: Dict[str, Any] = field(default_factory=dict)
    code: int = EXIT_OK

    def say(self, line: str) -> None:
        self.lines.append(line)

    def check(self, label: str, ok: bool) -> bool:
        self.say(f"{'PASS' if ok else 'FAIL'}  {label}")
        self.doc.setdefault("checks", []).append({"check": label, "passed": bool(ok)})
        if not ok:
            self.code = EXIT_FAILED
        return ok


# -- input helpers -----------------------------------------------------------


def _read(value: str) -> str:
    """Inline text, or the contents of a file when written as ``@path``."""
    if value.startswith("@"):
        return Path(value[1:]).read_text()
    return value


def _highest_index(text: str, prefix: str = "x") -> int:
    found = [int(m) for m in re.findall(rf"\b{prefix}(\d+)\b", text)]
    return max(found, default=0)


def _need(args, name: str) -> str:
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"{args.verb} needs --{name.replace('_', '-')}")
    return _read(value)


def _dim(args, *texts: str) -> int:
    if args.dim is not None:
        return args.dim
    return max([1] + [_highest_index(t) for t in texts] + [len(t.split(";")) for t in texts if ";" in t])


def _map(args, name: str = "map", n: Optional[int] = None) -> PolyMap:
    text = _need(args, name)
    return PolyMap.parse(text, n if n is not None else _dim(args, text))


def _poly(args, n: int) -> Poly:
    return parse_x(_need(args, "poly"), n)


def _mode(args, n: int) -> str:
    if args.mode:
        return args.mode
    return "certified" if n <= CERTIFIED_DEFAULT_MAX_DIM else "randomized"


def _fmt(p: Poly) -> str:
    return format_poly(p, default_names(p.arity))


# -- verbs --------------------------------------------------------------------


def cmd_check(args) -> RunResult:
    H = _map(args)
    report = check_qt(H)
    r = rank(H.jacobian(), _mode(args, len(H)), args.seed)
    out = RunResult(doc=serialize.qt_report_json(H, report, r))
    out.say(f"H = ({'; '.join(H.to_strings())})")
    out.say(f"(1) (x - H)(x + H) = x : {report.cond_inverse}")
    out.say(f"(2) H(x + tH) = H      : {report.cond_deform}")
    out.say(f"(3) JH · H = 0         : {report.cond_jhh}")
    out.say(f"nilpotency index       : {report.nilpotency_index}")
    out.say(f"series identity        : {report.series_identity}")
    out.say(f"rank JH                : {r}")
    if not report.consistent:
        out.say("conditions disagree")
    if not (report.consistent and report.is_qt):
        out.code = EXIT_FAILED
    return out


def cmd_invariant(args) -> RunResult:
    H = _map(args, n=_dim(args, _need(args, "map"), _need(args, "poly")))
    f = _poly(args, H.arity)
    inv = is_invariant(f, H)
    out = RunResult(doc={"poly": _fmt(f), "map": H.to_strings(), "invariant": inv})
    out.say(f"{_fmt(f)} is {'' if inv else 'not '}invariant")
    return out


def cmd_nu(args) -> RunResult:
    H = _map(args, n=_dim(args, _need(args, "map"), _need(args, "poly")))
    f = _poly(args, H.arity)
    nu = quasi_degree(f, H)
    out = RunResult(doc={"poly": _fmt(f), "map": H.to_strings(), "quasi_degree": serialize.degree_json(nu)})
    out.say(f"nu({_fmt(f)}) = {'minus infinity' if nu == float('-inf') else nu}")
    return out


def cmd_iterate(args) -> RunResult:
    H = _map(args)
    G = iterate(H, args.times)
    out = RunResult(doc={"times": args.times, "map": H.to_strings(), "result": G.to_strings()})
    out.say(f"(x + H)^{args.times} = ({'; '.join(G.to_strings())})")
    return out


def cmd_strip_gcd(args) -> RunResult:
    H = _map(args)
    g, reduced = strip_gcd(H)
    out = RunResult(doc={"g": _fmt(g), "reduced": reduced.to_strings()})
    out.say(f"g = {_fmt(g)}")
    out.say(f"H / g = ({'; '.join(reduced.to_strings())})")
    return out


def cmd_conjugate(args) -> RunResult:
    texts = [_need(args, k) for k in ("map", "F", "G")]
    n = _dim(args, *texts)
    H, F, G = (PolyMap.parse(t, n) for t in texts)
    result = conjugate(H, F, G)
    out = RunResult(doc={"result": result.to_strings()})
    out.say(f"H~ = ({'; '.join(result.to_strings())})")
    return out


def cmd_homogenize(args) -> RunResult:
    H = _map(args)
    lifted = homogenize(H, args.degree, _mode(args, len(H) + 1), args.seed)
    out = RunResult(doc={"result": lifted.to_strings()})
    out.say(f"homogenization = ({'; '.join(lifted.to_strings())})")
    return out


def cmd_find_relation(args) -> RunResult:
    text = _need(args, "map") if args.map is not None else None
    if text is not None:
        G = PolyMap.parse(text, _dim(args, text))
    else:
        h = _poly(args, _dim(args, _need(args, "poly")))
        G = gradient(h)
    rel = find_relation(G, args.deg_cap, args.homogeneous)
    out = RunResult(doc=serialize.relation_json(rel))
    if rel is None:
        out.say("no relation: the components are algebraically independent")
    else:
        out.say(f"R = {rel.to_string()}  (degree {rel.degree}, minimal {rel.minimal})")
    return out


def cmd_from_hessian(args) -> RunResult:
    text = _need(args, "poly")
    n = _dim(args, text)
    h = parse_x(text, n)
    G = gradient(h)
    if args.relation:
        rel = make_relation(parse(_read(args.relation), default_names(n, "y")), G)
    else:
        rel = find_relation(G, args.deg_cap, args.homogeneous)
        if rel is None:
            raise VerificationError("the Hessian is not singular: no relation exists")
    H = qt_from_relation(h, rel)
    span = image_span(H)
    out = RunResult(doc={"relation": serialize.relation_json(rel), "map": H.to_strings(), "span": serialize.span_json(span)})
    out.say(f"R = {rel.to_string()}  (degree {rel.degree}, minimal {rel.minimal})")
    out.say(f"H = ({'; '.join(H.to_strings())})")
    out.say(f"dim span H = {span.dim}")
    return out


def cmd_hesse(args) -> RunResult:
    text = _need(args, "poly")
    h = parse_x(text, _dim(args, text))
    cert = hesse_check(h, args.affine)
    out = RunResult(doc=serialize.certificate_json(cert))
    if cert is None:
        out.say("no constant linear dependence among the partial derivatives")
    else:
        c = ", ".join(serialize.vector_json(cert.c))
        out.say(f"c = ({c}), c0 = {serialize.rat_json(cert.c0)}")
    return out


def cmd_span(args) -> RunResult:
    span = image_span(_map(args))
    out = RunResult(doc=serialize.span_json(span))
    out.say(f"dim = {span.dim}")
    for c in span.annihilators:
        out.say(f"annihilator ({', '.join(serialize.vector_json(c))})")
    return out


def cmd_classify(args) -> RunResult:
    result = classify_small(_map(args))
    doc = serialize.classification_json(result)
    out = RunResult(doc=doc)
    out.say(f"T = {doc['T']}")
    out.say(f"s = {doc['s']}")
    out.say(f"normal form = ({'; '.join(doc['normal_form'])})")
    for key in ("g", "a", "b"):
        out.say(f"{key} = {doc[key]}")
    for k, c in doc["parts"].items():
        out.say(f"c_{k} = {c}")
    return out


def _safe(out: RunResult, label: str, thunk: Callable[[], bool]) -> None:
    try:
        ok = bool(thunk())
    except QtransError as exc:
        out.say(f"      {type(exc).__name__}: {exc}")
        ok = False
    out.check(label, ok)


def cmd_paper_examples(args) -> RunResult:
    out = RunResult()

    # p^2 and the relation y3 y5 - y4^2
    h = gallery.power_of_ternary_form(2)
    p = gallery.ternary_form()
    rel = find_relation(gradient(h), 4, True)
    target = gallery.ternary_relation()
    _safe(out, "p^2: minimal homogeneous relation has degree 2",
          lambda: rel is not None and rel.degree == 2 and rel.minimal)
    _safe(out, "p^2: relation spans the line of y3*y5 - y4^2",
          lambda: rel.R.monic_normal() == target.monic_normal())
    H = qt_from_relation(h, rel)
    _safe(out, "p^2: H = 2p(0, 0, x2^2, -2x1x2, x1^2) up to the relation's scale",
          lambda: H == gallery.ternary_qt(2) or H == -gallery.ternary_qt(2))
    _safe(out, "p^2: x + H is a quasi-translation", lambda: check_qt(H).is_qt)
    _safe(out, "p^2: x1, x2 and p are invariants",
          lambda: all(is_invariant(f, H) for f in (Poly.var(5, 0), Poly.var(5, 1), p)))

    # paired squares, constant and polynomial coefficients
    ps = gallery.paired_squares(6)
    _safe(out, "paired squares: Hh · H = 0", lambda: matmul(hessian(ps.h), ps.H).is_zero)
    _safe(out, "paired squares: R(∇h) = 0 and (∇R)(∇h) = H",
          lambda: qt_from_relation(ps.h, make_relation(ps.relation(), ps.G)) == ps.H)
    _safe(out, "paired squares: x + H is a quasi-translation", lambda: check_qt(ps.H).is_qt)
    pp = gallery.paired_squares_polynomial(6)
    _safe(out, "paired squares with a, b: relation vanishes on G", lambda: pp.scaled_relation_value().is_zero)
    _safe(out, "paired squares with a, b: JG · H~ = 0", lambda: column_dependence(pp.G, pp.H))
    _safe(out, "paired squares with a, b: x + H~ is a quasi-translation", lambda: check_qt(pp.H).is_qt)
    _safe(out, "paired squares with a, b: image span has dimension 6", lambda: image_span(pp.H).dim == 6)

    # conjugating (0, x1, x1^2, x1^3)
    F, G = gallery.cubic_orbit_conjugators()
    Hc = gallery.cubic_orbit_qt()
    _safe(out, "cubic orbit: nu(f) = 1", lambda: quasi_degree(gallery.cubic_orbit_invariant(), Hc) == 1)
    Ht = conjugate(Hc, F, G)
    _safe(out, "cubic orbit: conjugate matches the closed form", lambda: Ht == gallery.cubic_orbit_conjugate())
    _safe(out, "cubic orbit: conjugate is a quasi-translation", lambda: check_qt(Ht).is_qt)
    _safe(out, "cubic orbit: conjugate has no linear invariants", lambda: image_span(Ht).dim == 4)

    # x3 x4: minimal versus non-minimal relation
    hb = gallery.bilinear_pair()
    rb = find_relation(gradient(hb), 4, False)
    _safe(out, "x3*x4: minimal relation has degree 1", lambda: rb is not None and rb.degree == 1)
    _safe(out, "x3*x4: minimal relation gives a constant H",
          lambda: all(c.is_constant for c in qt_from_relation(hb, rb)))
    Hn = qt_from_relation(hb, make_relation(gallery.bilinear_nonminimal_relation(), gradient(hb)))
    _safe(out, "x3*x4: y1*y3 + y2*y4 gives (x4, x3, 0, 0)", lambda: Hn == gallery.bilinear_nonminimal_qt())
    _safe(out, "x3*x4: its image span has dimension 2", lambda: image_span(Hn).dim == 2)

    passed = sum(c["passed"] for c in out.doc["checks"])
    out.say(f"{passed}/{len(out.doc['checks'])} checks passed")
    return out


VERBS: Dict[str, Tuple[Callable, str]] = {
    "check": (cmd_check, "test the three quasi-translation conditions"),
    "invariant": (cmd_invariant, "decide whether --poly is an invariant of x + --map"),
    "nu": (cmd_nu, "quasi-degree of --poly with respect to --map"),
    "iterate": (cmd_iterate, "closed form of (x + H) applied --times times"),
    "strip-gcd": (cmd_strip_gcd, "split off the gcd of the components"),
    "conjugate": (cmd_conjugate, "G o (x + H) o F - x for mutually inverse --F, --G"),
    "homogenize": (cmd_homogenize, "homogeneous lift in one more variable"),
    "find-relation": (cmd_find_relation, "minimal-degree R with R(G) = 0 (G = --map or the gradient of --poly)"),
    "from-hessian": (cmd_from_hessian, "quasi-translation (∇R)(∇h) from h = --poly"),
    "hesse": (cmd_hesse, "constant linear dependence among the partials of --poly"),
    "span": (cmd_span, "dimension of the linear span of the image of --map"),
    "classify": (cmd_classify, "normal form in dimension <= 3 (or 4, homogeneous)"),
    "paper-examples": (cmd_paper_examples, "run the bundled worked examples"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qtrans", description="Exact toolkit for quasi-translations x + H over Q.")
    parser.add_argument("verb", choices=list(VERBS), help="operation to run")
    parser.add_argument("--map", help="map components separated by ';' (or @file)")
    parser.add_argument("--poly", help="polynomial expression (or @file)")
    parser.add_argument("--F", dest="F", help="conjugating map F (conjugate)")
    parser.add_argument("--G", dest="G", help="inverse of F (conjugate)")
    parser.add_argument("--relation", help="use this R in y1..yn instead of searching (from-hessian)")
    parser.add_argument("-n", "--dim", type=int, help="number of variables (default: highest index used)")
    parser.add_argument("--deg-cap", type=int, default=6, help="largest relation degree to try (default 6)")
    parser.add_argument("--homogeneous", action="store_true", help="search homogeneous relations only")
    parser.add_argument("--affine", action="store_true", help="allow a constant on the right (hesse)")
    parser.add_argument("--times", "-m", type=int, default=1, help="iteration count (iterate)")
    parser.add_argument("--degree", type=int, help="homogenization degree (default deg H)")
    parser.add_argument("--mode", choices=["randomized", "certified"],
                        help="rank mode (default certified for n <= 5)")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized rank (default 0)")
    parser.add_argument("--json", action="store_true", help="print JSON instead of text")
    parser.add_argument("--out", help="also write the output to this file")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> Tuple[int, str]:
    """Execute one command and return ``(exit code, output text)``."""
    try:
        args = build_parser().parse_args(argv)
        if args.dim is not None and args.dim < 1:
            raise UsageError("--dim must be positive")
        result = VERBS[args.verb][0](args)
    except (UsageError, ParseError, DimensionError, OSError) as exc:
        return EXIT_USAGE, f"qtrans: error: {exc}\n"
    except (VerificationError, NotQuasiTranslationError) as exc:
        return EXIT_FAILED, f"qtrans: check failed: {exc}\n"
    except (QtransError, ValueError) as exc:
        return EXIT_USAGE, f"qtrans: error: {exc}\n"
    except Exception as exc:  # pragma: no cover - last resort
        return EXIT_INTERNAL, f"qtrans: internal error: {type(exc).__name__}: {exc}\n"
    text = serialize.dumps(result.doc) + "\n" if args.json else "\n".join(result.lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    return result.code, text


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code in (EXIT_OK, EXIT_FAILED) and not text.startswith("qtrans:") else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
