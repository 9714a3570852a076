"""The triadlab command line: run triad operations on session files.

One command per invocation; output is deterministic text (or key=value
records with --format=records).  Exit codes: 0 success, 1 domain error,
2 usage error, 3 resource abort.
"""

import argparse
import sys

from .chiffres import chiffres_format, chiffres_parse
from .errors import (
    InconclusiveError,
    ParseError,
    ResourceLimitError,
    TriadlabError,
)
from .families import (
    FamilyShape,
    QFunction,
    degree_genus,
    family_report,
    koszul_complex,
    koszul_q_sharp,
    shift_h0,
)
from .resolutions import free_resolution
from .scalars import field_from_name
from .session import format_session, parse_session
from .subquotients import cocycle_check, subquotient_of
from .triads import (
    dual_triad,
    elementary_reduction,
    fiber_functor,
    psi_check,
    resolution_majeure,
    triad_invariants,
)


def _fmt_chiffres(c):
    # the untwisted rank-one module prints as 0; the zero module as (0)
    text = chiffres_format(c)
    return text if text else "(0)"


class Report:
    """Collects both the human text and the records view."""

    def __init__(self):
        self.lines = []
        self.records = []

    def line(self, text):
        self.lines.append(text)

    def record(self, key, value):
        self.records.append((key, value))

    def both(self, key, value):
        self.line(f"{key}: {value}")
        self.record(key, value)

    def render(self, fmt):
        if fmt == "records":
            return "".join(f"{k}={v}\n" for k, v in self.records)
        return "".join(line + "\n" for line in self.lines)


def _load_session(args):
    field = field_from_name(args.field) if args.field else None
    try:
        with open(args.session, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read session file: {exc}") from exc
    return parse_session(text, field=field, bound=args.bound)


def _hilbert_text(hilbert, max_degree=None):
    if max_degree is not None:
        hilbert = {n: v for n, v in hilbert.items() if n <= max_degree}
    if not hilbert:
        return "0"
    return ", ".join(f"{n}: {inv}" for n, inv in sorted(hilbert.items()))


def _fiber_text(value, max_degree=None):
    items = value.hilbert
    if max_degree is not None:
        items = {n: d for n, d in items.items() if n <= max_degree}
    if not items:
        return "0"
    return ", ".join(f"{n}:{d}" for n, d in sorted(items.items()))


def cmd_check(args, out):
    session = _load_session(args)
    names = session.names("triad")
    if args.triad:
        names = [args.triad]
        session.get(args.triad, "triad")
    out.both("session", args.session)
    out.both("triads", ",".join(names) if names else "none")
    out.line("all declarations validated")
    out.record("status", "ok")
    return 0


def cmd_resolve(args, out):
    session = _load_session(args)
    mod = session.get(args.module, "module")
    length = args.length or 6
    res = free_resolution(mod, length=length, partial=args.length is not None)
    out.both("module", args.module)
    out.both("gens", _fmt_chiffres(mod.generators()))
    for k, stage in enumerate(res, start=1):
        out.both(f"stage{k}", _fmt_chiffres(stage.source()))
    return 0


def cmd_analyze(args, out):
    session = _load_session(args)
    t = session.get(args.triad, "triad")
    rep = triad_invariants(t)
    out.both("triad", args.triad)
    if rep.terms is not None:
        l1, l0, lm1 = rep.terms
        out.line(
            f"terms: {_fmt_chiffres(l1)} -> {_fmt_chiffres(l0)} -> {_fmt_chiffres(lm1)}"
        )
        out.record("l1", _fmt_chiffres(l1))
        out.record("l0", _fmt_chiffres(l0))
        out.record("lm1", _fmt_chiffres(lm1))
    if rep.kernel_chiffres is not None:
        out.both("N gens", _fmt_chiffres(rep.kernel_chiffres))
    if rep.c1 is not None:
        out.both("c1", rep.c1)
    cap = args.max_degree
    out.both("H", _hilbert_text(rep.heart_hilbert, cap))
    out.both("C", _hilbert_text(rep.coker_hilbert, cap))
    out.both("V(k)", _fiber_text(rep.fiber_special, cap))
    out.both("V(K)", _fiber_text(rep.fiber_generic, cap))
    out.both("flags", ",".join(rep.flags()) if rep.flags() else "none")
    return 0


def cmd_fiber(args, out):
    session = _load_session(args)
    t = session.get(args.triad, "triad")
    out.both("triad", args.triad)
    if args.point in ("special", "all"):
        out.both("V(k)", _fiber_text(fiber_functor(t, "special")))
    if args.point in ("generic", "all"):
        out.both("V(K)", _fiber_text(fiber_functor(t, "generic")))
    if args.point in ("base", "all"):
        base = fiber_functor(t, "base")
        from .triads import _hilbert_of_module

        out.both("V(A)", _hilbert_text(_hilbert_of_module(base, args.bound)))
    return 0


def cmd_dual(args, out):
    session = _load_session(args)
    t = session.get(args.triad, "triad")
    d = dual_triad(t)
    rep = triad_invariants(d)
    out.both("triad", args.triad)
    dc = d.degreewise()
    out.both("window", f"{dc.lo}..{dc.hi}")
    out.both("H", _hilbert_text(rep.heart_hilbert))
    out.both("C", _hilbert_text(rep.coker_hilbert))
    out.both("flags", ",".join(rep.flags()) if rep.flags() else "none")
    return 0


def cmd_psi(args, out):
    session = _load_session(args)
    morph = session.get(args.morphism, "morphism")
    rep = psi_check(morph)
    out.both("morphism", args.morphism)
    out.both("heart_iso", str(rep.heart_iso).lower())
    out.both("coker_injective", str(rep.coker_injective).lower())
    out.both("quotient_flat", str(rep.quotient_flat).lower())
    out.both("psi", str(rep.is_psi).lower())
    out.both("strong_psi", str(rep.is_strong_psi).lower())
    return 0


def cmd_trivial(args, out):
    session = _load_session(args)
    datum = session.get(args.subquotient, "subquotient")
    from .subquotients import trivial_triad

    t = trivial_triad(datum, bound=args.bound)
    out.both("subquotient", args.subquotient)
    out.both("V(k)", _fiber_text(fiber_functor(t, "special")))
    out.both("V(K)", _fiber_text(fiber_functor(t, "generic")))
    return 0


def cmd_cone(args, out, compact=False):
    session = _load_session(args)
    u = session.get(args.cocycle, "cocycle")
    from .subquotients import compact_cone_triad, cone_triad

    build = compact_cone_triad if compact else cone_triad
    t = build(u.c_module, u.target, u, bound=args.bound)
    l1, l0, lm1 = t.terms()
    out.both("cocycle", args.cocycle)
    out.both("cocycle_valid", str(cocycle_check(u)).lower())
    out.line(
        f"terms: {_fmt_chiffres(l1)} -> {_fmt_chiffres(l0)} -> {_fmt_chiffres(lm1)}"
    )
    out.record("l1", _fmt_chiffres(l1))
    out.record("l0", _fmt_chiffres(l0))
    out.record("lm1", _fmt_chiffres(lm1))
    out.both("N gens", _fmt_chiffres(t.kernel_chiffres()))
    return 0


def cmd_reduce_elementary(args, out):
    session = _load_session(args)
    t = session.get(args.triad, "triad")
    reduced, morphism = elementary_reduction(t)
    rep = triad_invariants(reduced)
    l1, l0, lm1 = reduced.terms()
    out.both("triad", args.triad)
    out.line(
        f"terms: {_fmt_chiffres(l1)} -> {_fmt_chiffres(l0)} -> {_fmt_chiffres(lm1)}"
    )
    out.record("l1", _fmt_chiffres(l1))
    out.record("l0", _fmt_chiffres(l0))
    out.record("lm1", _fmt_chiffres(lm1))
    out.both("C", _hilbert_text(rep.coker_hilbert))
    out.both("psi", str(psi_check(morphism).is_psi).lower())
    return 0


def cmd_majeure(args, out):
    session = _load_session(args)
    t = session.get(args.triad, "triad")
    res = resolution_majeure(t)
    l1, l0, lm1 = res.majeure.terms()
    out.both("triad", args.triad)
    out.line(
        f"terms: {_fmt_chiffres(l1)} -> {_fmt_chiffres(l0)} -> {_fmt_chiffres(lm1)}"
    )
    out.record("l1", _fmt_chiffres(l1))
    out.record("l0", _fmt_chiffres(l0))
    out.record("lm1", _fmt_chiffres(lm1))
    out.both("N gens", _fmt_chiffres(res.majeure.kernel_chiffres()))
    return 0


def cmd_subquotient(args, out):
    session = _load_session(args)
    t = session.get(args.triad, "triad")
    extraction = subquotient_of(t)
    from .triads import _hilbert_of_module

    out.both("triad", args.triad)
    m0_h = {
        n: inv.dim_generic()
        for n, inv in _hilbert_of_module(extraction.datum.m0, args.bound).items()
    }
    m_h = {
        n: inv.dim_generic()
        for n, inv in _hilbert_of_module(extraction.m_module, args.bound).items()
    }
    out.both("M0", ", ".join(f"{n}:{d}" for n, d in sorted(m0_h.items())) or "0")
    out.both("M", ", ".join(f"{n}:{d}" for n, d in sorted(m_h.items())) or "0")
    out.both(
        "M-1",
        ", ".join(f"{n}:{d}" for n, d in sorted(extraction.co_quotient_hilbert.items()))
        or "0",
    )
    out.both("M_A", _hilbert_text(_hilbert_of_module(extraction.m_a, args.bound)))
    return 0


def cmd_koszul(args, out):
    if args.qsharp:
        degs = [int(x) for x in args.qsharp.split(",")]
        if len(degs) != 4:
            raise ParseError("qsharp needs four degrees")
        _, q = koszul_q_sharp(*degs)
        out.both("q", repr(q))
        return 0
    session = _load_session(args)
    polys = [session.get(n, "poly") for n in args.sequence.split(",")]
    maps = koszul_complex(polys, session.field)
    out.both("length", len(maps))
    for k, m in enumerate(maps, start=1):
        out.both(f"stage{k}", _fmt_chiffres(m.source()))
    return 0


def cmd_family(args, out):
    session = _load_session(args)
    t = session.get(args.triad, "triad")
    q = QFunction.parse(args.q)
    rep = family_report(t, q)
    out.line(f"(d,g) = ({rep.degree},{rep.genus}), h0 = {rep.h0}")
    out.line(rep.bracket())
    out.record("degree", rep.degree)
    out.record("genus", rep.genus)
    out.record("h0", rep.h0)
    out.record("p", _fmt_chiffres(rep.p))
    out.record("n_gens", _fmt_chiffres(rep.kernel_chiffres))
    vk, vK = rep.fibers
    out.both("V(k)", _fiber_text(vk))
    out.both("V(K)", _fiber_text(vK))
    return 0


def cmd_format(args, out):
    session = _load_session(args)
    out.line(format_session(session).rstrip("\n"))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="triadlab",
        description="Exact triad computations over a discrete valuation ring",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, session=True):
        if session:
            p.add_argument("--session", required=True, help="session file (.tl)")
        p.add_argument("--out", help="also write the report to this file")
        p.add_argument("--field", help="QQ or Fp:<p>")
        p.add_argument("--bound", type=int, default=20)
        p.add_argument("--max-degree", type=int, default=None, dest="max_degree")
        p.add_argument(
            "--format",
            choices=["text", "records"],
            default="text",
            dest="fmt",
        )

    p = sub.add_parser("check", help="parse and validate a session")
    common(p)
    p.add_argument("--triad")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("resolve", help="free resolution of a module")
    common(p)
    p.add_argument("--module", required=True)
    p.add_argument("--length", type=int)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("analyze", help="triad invariants and flags")
    common(p)
    p.add_argument("--triad", required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("fiber", help="values of the associated functor")
    common(p)
    p.add_argument("--triad", required=True)
    p.add_argument("--point", choices=["special", "generic", "base", "all"], default="all")
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("dual", help="dual triad data")
    common(p)
    p.add_argument("--triad", required=True)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("psi", help="pseudo-isomorphism check of a morphism")
    common(p)
    p.add_argument("--morphism", required=True)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("trivial", help="trivial triad of a sub-quotient")
    common(p)
    p.add_argument("--subquotient", required=True)
    p.set_defaults(func=cmd_trivial)

    p = sub.add_parser("cone", help="cone triad from a cocycle")
    common(p)
    p.add_argument("--cocycle", required=True)
    p.set_defaults(func=lambda a, o: cmd_cone(a, o, compact=False))

    p = sub.add_parser("compact-cone", help="compact cone triad from a cocycle")
    common(p)
    p.add_argument("--cocycle", required=True)
    p.set_defaults(func=lambda a, o: cmd_cone(a, o, compact=True))

    p = sub.add_parser("reduce-elementary", help="elementary reduction")
    common(p)
    p.add_argument("--triad", required=True)
    p.set_defaults(func=cmd_reduce_elementary)

    p = sub.add_parser("majeure", help="majeure resolution of a mineure triad")
    common(p)
    p.add_argument("--triad", required=True)
    p.set_defaults(func=cmd_majeure)

    p = sub.add_parser("subquotient", help="sub-quotient extraction")
    common(p)
    p.add_argument("--triad", required=True)
    p.set_defaults(func=cmd_subquotient)

    p = sub.add_parser("koszul", help="Koszul complex or q-sharp values")
    common(p, session=False)
    p.add_argument("--session")
    p.add_argument("--sequence", help="comma-separated poly names")
    p.add_argument("--qsharp", help="four degrees n1,n2,n3,n4")
    p.set_defaults(func=cmd_koszul)

    p = sub.add_parser("family", help="minimal family invariants")
    common(p)
    p.add_argument("--triad", required=True)
    p.add_argument("--q", required=True, help='q-function, e.g. "2:1,3:3"')
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("format", help="canonical form of a session file")
    common(p)
    p.set_defaults(func=cmd_format)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    out = Report()
    try:
        status = args.func(args, out)
    except (ResourceLimitError, InconclusiveError) as exc:
        sys.stdout.write(f"error: {exc}\n")
        return 3
    except TriadlabError as exc:
        code = getattr(exc, "code", None)
        msg = f"{code}: {exc}" if code else str(exc)
        sys.stdout.write(f"error: {msg}\n")
        return 1
    text = out.render(args.fmt)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
