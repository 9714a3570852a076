"""Line-oriented session files: named rings, modules, matrices, triads.

A session is a sequence of keyword-led declarations; names are unique and
must be declared before use.  Polynomials use the expression grammar,
chiffres the compact twist notation, matrices are row-major bracket
lists.  Statements may span lines until their brackets balance.
"""

from .chiffres import chiffres_format, chiffres_parse
from .errors import ParseError, ShapeError, TriadlabError
from .families import QFunction, koszul_complex
from .gradedmatrix import GradedMatrix, PresentedModule
from .poly import Poly, format_poly, parse_poly
from .scalars import QQ, field_from_name
from .subquotients import (
    ExtCocycle,
    SubquotientDatum,
    compact_cone_triad,
    cone_triad,
    trivial_triad,
)
from .triads import (
    TriadMorphism,
    dual_triad,
    elementary_reduction,
    resolution_majeure,
    triad_validate,
)
from .complexes import Complex3


class Session:
    def __init__(self, field=QQ, bound=20):
        self.field = field
        self.bound = bound
        self.entities = {}
        self.order = []

    def declare(self, kind, name, obj, render):
        if name in self.entities:
            raise ParseError(f"duplicate name {name!r}")
        self.entities[name] = (kind, obj, render)
        self.order.append(name)

    def get(self, name, kind=None):
        if name not in self.entities:
            raise ParseError(f"unknown name {name!r}")
        k, obj, _ = self.entities[name]
        if kind is not None and k != kind:
            raise ParseError(f"{name!r} is a {k}, expected {kind}")
        return obj

    def names(self, kind):
        return [n for n in self.order if self.entities[n][0] == kind]


def _statements(text):
    """Split into logical statements: lines merged until brackets balance."""
    out = []
    buf = []
    depth = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip() and depth == 0:
            continue
        if not buf:
            start = lineno
        buf.append(line)
        depth += line.count("[") - line.count("]")
        if depth < 0:
            raise ParseError("unbalanced brackets", lineno)
        if depth == 0:
            stmt = " ".join(buf).strip()
            if stmt:
                out.append((start, stmt))
            buf = []
    if depth != 0:
        raise ParseError("unterminated bracket at end of session")
    return out


def parse_session(text, field=None, bound=20):
    session = Session(field or QQ, bound)
    explicit_field = field is not None
    for lineno, stmt in _statements(text):
        try:
            _parse_statement(session, stmt, explicit_field)
        except ParseError:
            raise
        except TriadlabError:
            raise  # domain diagnostics keep their code
        except Exception as exc:  # surface with position
            raise ParseError(f"{exc}", lineno) from exc
    return session


def _parse_statement(session, stmt, explicit_field):
    head, _, rest = stmt.partition(" ")
    rest = rest.strip()
    if head == "field":
        if not explicit_field:
            session.field = field_from_name(rest)
        return
    if head not in (
        "poly",
        "chiffres",
        "matrix",
        "module",
        "triad",
        "subquotient",
        "qfunction",
        "cocycle",
        "morphism",
    ):
        raise ParseError(f"unknown statement {head!r}")
    if head == "matrix":
        _parse_matrix(session, rest)
        return
    name, _, body = rest.partition("=")
    name = name.strip()
    body = body.strip()
    if not name or not body:
        raise ParseError(f"malformed {head} statement")
    if head == "poly":
        p = parse_poly(body, session.field)
        session.declare("poly", name, p, lambda p=p: f"poly {name} = {format_poly(p)}")
    elif head == "chiffres":
        c = chiffres_parse(body)
        session.declare(
            "chiffres", name, c, lambda c=c, n=name: f"chiffres {n} = {chiffres_format(c)}"
        )
    elif head == "module":
        _parse_module(session, name, body)
    elif head == "triad":
        _parse_triad(session, name, body)
    elif head == "subquotient":
        _parse_subquotient(session, name, body)
    elif head == "qfunction":
        q = QFunction.parse(body)
        session.declare(
            "qfunction", name, q, lambda q=q, n=name: f"qfunction {n} = {q!r}"
        )
    elif head == "cocycle":
        _parse_cocycle(session, name, body)
    elif head == "morphism":
        _parse_morphism(session, name, body)


def _parse_matrix(session, rest):
    sig, _, body = rest.partition("=")
    body = body.strip()
    namepart, _, arrow = sig.partition(":")
    name = namepart.strip()
    src_text, _, tgt_text = arrow.partition("->")
    src = chiffres_parse(src_text.strip())
    tgt = chiffres_parse(tgt_text.strip())
    rows_text = _split_bracket_list(body)
    rows = []
    for row_text in rows_text:
        entries = _split_top_level(row_text, ",")
        rows.append([parse_poly(e, session.field) for e in entries if e.strip()])
    src_twists = src.twists()
    tgt_twists = tgt.twists()
    if len(rows) != len(tgt_twists):
        raise ShapeError(
            f"matrix {name!r}: {len(rows)} rows for target rank {len(tgt_twists)}"
        )
    for r in rows:
        if len(r) != len(src_twists):
            raise ShapeError(f"matrix {name!r}: row width mismatch")
    mat = GradedMatrix(tgt_twists, src_twists, rows, session.field)
    bad = mat.check()
    if bad:
        i, j, msg = bad[0]
        raise ShapeError(f"matrix {name!r} entry ({i},{j}): {msg}")
    session.declare("matrix", name, mat, lambda m=mat, n=name: _render_matrix(n, m))


def _render_matrix(name, m):
    src = chiffres_format(m.source())
    tgt = chiffres_format(m.target())
    rows = ", ".join(
        "[" + ", ".join(format_poly(e) for e in row) + "]" for row in m.rows
    )
    return f"matrix {name} : {src} -> {tgt} = [{rows}]"


def _split_bracket_list(body):
    """Top-level bracket items of "[ [..], [..] ]" (or "[]")."""
    body = body.strip()
    if not body.startswith("[") or not body.endswith("]"):
        raise ParseError("expected a bracketed list")
    inner = body[1:-1].strip()
    if not inner:
        return []
    items = _split_top_level(inner, ",")
    out = []
    for item in items:
        item = item.strip()
        if not item.startswith("[") or not item.endswith("]"):
            raise ParseError(f"expected a bracketed row, got {item!r}")
        out.append(item[1:-1])
    return out


def _split_top_level(text, sep):
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _parse_module(session, name, body):
    kind, _, rest = body.partition(" ")
    rest = rest.strip()
    if kind == "quotient":
        opts = _parse_options(rest)
        # twist uses the signed convention: twist=-1 means the ring twisted
        # by -1 (the chiffres entry 1)
        twist = int(opts.get("twist", "0"))
        rel_text = opts.get("relations")
        if rel_text is None:
            raise ParseError("quotient module needs relations=[...]")
        rels = [
            parse_poly(e, session.field)
            for e in _split_top_level(rel_text.strip()[1:-1], ",")
            if e.strip()
        ]
        mod = PresentedModule.cyclic(-twist, rels, session.field)
        render = f"module {name} = quotient twist={twist} relations=[" + ", ".join(
            format_poly(r) for r in rels
        ) + "]"
    elif kind == "cokernel":
        mat = session.get(rest, "matrix")
        mod = PresentedModule(mat)
        render = f"module {name} = cokernel {rest}"
    elif kind == "zero":
        mod = PresentedModule.zero(session.field)
        render = f"module {name} = zero"
    elif kind == "free":
        c = chiffres_parse(rest)
        mod = PresentedModule.free(c.twists(), session.field)
        render = f"module {name} = free {chiffres_format(c)}"
    else:
        raise ParseError(f"unknown module form {kind!r}")
    session.declare("module", name, mod, lambda r=render: r)


def _parse_options(text):
    """key=value options; bracketed values may contain spaces."""
    out = {}
    i = 0
    n = len(text)
    while i < n:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            break
        j = text.find("=", i)
        if j < 0:
            raise ParseError(f"expected key=value in {text[i:]!r}")
        key = text[i:j].strip()
        i = j + 1
        if i < n and text[i] == "[":
            depth = 0
            k = i
            while k < n:
                if text[k] == "[":
                    depth += 1
                elif text[k] == "]":
                    depth -= 1
                    if depth == 0:
                        break
                k += 1
            if depth != 0:
                raise ParseError("unbalanced bracket in option value")
            out[key] = text[i : k + 1]
            i = k + 1
        else:
            k = i
            while k < n and not text[k].isspace():
                k += 1
            out[key] = text[i:k]
            i = k
    return out


def _parse_triad(session, name, body):
    kind, _, rest = body.partition(" ")
    args = rest.split()
    if kind == "complex":
        if len(args) != 2:
            raise ParseError("triad complex needs two matrices: d1 d0")
        d1 = session.get(args[0], "matrix")
        d0 = session.get(args[1], "matrix")
        t = triad_validate(
            Complex3(d1, d0), bound=session.bound, provenance=name
        )
        render = f"triad {name} = complex {args[0]} {args[1]}"
    elif kind == "minor":
        if len(args) != 5:
            raise ParseError("triad minor needs: m1 f1 m0 f0 mm1")
        m1 = session.get(args[0], "module")
        f1 = session.get(args[1], "matrix")
        m0 = session.get(args[2], "module")
        f0 = session.get(args[3], "matrix")
        mm1 = session.get(args[4], "module")
        t = triad_validate(
            (m1, f1, m0, f0, mm1), bound=session.bound, provenance=name
        )
        render = f"triad {name} = minor {' '.join(args)}"
    elif kind == "trivial":
        datum = session.get(rest.strip(), "subquotient")
        t = trivial_triad(datum, bound=session.bound)
        render = f"triad {name} = trivial {rest.strip()}"
    elif kind == "majeure":
        src = session.get(rest.strip(), "triad")
        t = resolution_majeure(src).majeure
        render = f"triad {name} = majeure {rest.strip()}"
    elif kind == "cone":
        u = session.get(rest.strip(), "cocycle")
        t = cone_triad(u.c_module, u.target, u, bound=session.bound)
        render = f"triad {name} = cone {rest.strip()}"
    elif kind == "compact-cone":
        u = session.get(rest.strip(), "cocycle")
        t = compact_cone_triad(u.c_module, u.target, u, bound=session.bound)
        render = f"triad {name} = compact-cone {rest.strip()}"
    elif kind == "dual":
        src = session.get(rest.strip(), "triad")
        t = dual_triad(src)
        render = f"triad {name} = dual {rest.strip()}"
    elif kind == "reduce-elementary":
        src = session.get(rest.strip(), "triad")
        t, _ = elementary_reduction(src)
        render = f"triad {name} = reduce-elementary {rest.strip()}"
    else:
        raise ParseError(f"unknown triad form {kind!r}")
    session.declare("triad", name, t, lambda r=render: r)


def _parse_vectors(session, text, gen_twists):
    """Bracketed vector list: entries are polys or ;-separated components."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError("expected [vectors]")
    inner = text[1:-1].strip()
    cols = []
    if inner:
        for item in _split_top_level(inner, ","):
            item = item.strip()
            if item.startswith("[") and item.endswith("]"):
                comps = item[1:-1].split(";")
            else:
                comps = [item]
            col = {}
            for i, comp in enumerate(comps):
                p = parse_poly(comp, session.field)
                if p:
                    col[i] = p
            cols.append(col)
    degs = []
    for col in cols:
        deg = None
        for i, p in col.items():
            if i >= len(gen_twists):
                raise ShapeError("vector has more components than generators")
            deg = p.wdeg() + gen_twists[i]
        if deg is None:
            raise ShapeError("zero vector in generator list")
        degs.append(deg)
    return GradedMatrix.from_columns(list(gen_twists), cols, degs, session.field)


def _parse_subquotient(session, name, body):
    opts = _parse_options(body)
    if "module" not in opts:
        raise ParseError("subquotient needs module=NAME")
    m0 = session.get(opts["module"], "module")
    j = _parse_vectors(session, opts.get("j", "[]"), m0.gen_twists)
    m1 = _parse_vectors(session, opts.get("m1", "[]"), m0.gen_twists)
    datum = SubquotientDatum(m0, j, m1)
    render = f"subquotient {name} = module={opts['module']} j={opts.get('j', '[]')} m1={opts.get('m1', '[]')}"
    session.declare("subquotient", name, datum, lambda r=render: r)


def _koszul_basis_names(n):
    """e1..e_{n-1} for pairs with the first element, then eps1, eps2, ..."""
    from itertools import combinations

    names = {}
    idx = 0
    eps = 0
    for pair in combinations(range(n), 2):
        idx_name = None
        if pair[0] == 0:
            idx_name = f"e{pair[1]}"
        else:
            eps += 1
            idx_name = f"eps{eps}"
        names[idx_name] = idx
        idx += 1
    return names


def _parse_cocycle(session, name, body):
    kind, _, rest = body.partition(" ")
    if kind != "koszul":
        raise ParseError("only 'cocycle NAME = koszul C -> H images=[...]' is supported")
    sig, _, opts_text = rest.partition("images=")
    c_name, _, h_name = sig.partition("->")
    c_mod = session.get(c_name.strip(), "module")
    h_mod = session.get(h_name.strip(), "module")
    if len(c_mod.gen_twists) != 1:
        raise ShapeError("koszul cocycle needs a cyclic cokernel module")
    if len(h_mod.gen_twists) != 1:
        raise ShapeError("koszul cocycle needs a cyclic heart module")
    seq = [
        c_mod.presentation.rows[0][j] for j in range(c_mod.presentation.ncols)
    ]
    res = koszul_complex(seq, session.field)
    if len(res) < 3:
        res = res + [GradedMatrix(res[-1].src_twists, [], [[] for _ in res[-1].src_twists], session.field)]
    names = _koszul_basis_names(len(seq))
    images = {}
    text = opts_text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError("cocycle images must be bracketed")
    inner = text[1:-1].strip()
    if inner:
        for item in _split_top_level(inner, ","):
            key, _, val = item.partition(":")
            key = key.strip()
            if key.startswith("col"):
                idx = int(key[3:])
            elif key in names:
                idx = names[key]
            else:
                raise ParseError(f"unknown cocycle basis name {key!r}")
            p = parse_poly(val.strip(), session.field)
            if p:
                images[idx] = {0: p}
    p2 = list(res[1].src_twists)
    u_hat = GradedMatrix.from_columns(
        list(h_mod.gen_twists),
        [images.get(j, {}) for j in range(len(p2))],
        p2,
        session.field,
    )
    cocycle = ExtCocycle(c_mod, res[:3], h_mod, u_hat)
    render = f"cocycle {name} = koszul {c_name.strip()} -> {h_name.strip()} images={text}"
    session.declare("cocycle", name, cocycle, lambda r=render: r)


def _parse_morphism(session, name, body):
    src_name, _, rest = body.partition("->")
    parts = rest.strip().split(None, 1)
    if not parts:
        raise ParseError("morphism needs a target triad")
    tgt_name = parts[0]
    opts = _parse_options(parts[1] if len(parts) > 1 else "")
    src = session.get(src_name.strip(), "triad")
    tgt = session.get(tgt_name.strip(), "triad")
    f1 = session.get(opts["f1"], "matrix")
    f0 = session.get(opts["f0"], "matrix")
    fm1 = session.get(opts["fm1"], "matrix")
    morph = TriadMorphism(src, tgt, f1, f0, fm1)
    render = (
        f"morphism {name} = {src_name.strip()} -> {tgt_name} "
        f"f1={opts['f1']} f0={opts['f0']} fm1={opts['fm1']}"
    )
    session.declare("morphism", name, morph, lambda r=render: r)


def format_session(session):
    lines = [f"field {session.field.name}"]
    for name in session.order:
        _, _, render = session.entities[name]
        lines.append(render())
    return "\n".join(lines) + "\n"
