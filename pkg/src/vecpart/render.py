"""Output formats for computed vector partition functions.

Three emitters: plain text, an exact JSON document (rationals as "p/q"
strings) that round-trips back into a result, and LaTeX longtables
mirroring the reference layout (polynomial/lattice table plus chamber
table with inequalities, vertices, internal point and neighbors).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cones import Chamber
from .complexes import ChamberComplex
from .engine import VpfResult
from .lattice import Lattice, lattice_from_rows
from .quasipoly import Polynomial, QuasiPolynomial


def _frac_str(f) -> str:
    f = Fraction(f)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _term_order(item):
    e, _ = item
    return (-sum(e), tuple(-x for x in e))


def polynomial_text(poly: Polynomial, names=None) -> str:
    if poly.is_zero():
        return "0"
    names = names or [f"x{i+1}" for i in range(poly.nvars)]
    bits = []
    for e, c in sorted(poly.terms.items(), key=_term_order):
        mono = "*".join(names[i] + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
        if mono:
            if c == 1:
                frag = mono
            elif c == -1:
                frag = f"-{mono}"
            else:
                frag = f"{_frac_str(c)}*{mono}"
        else:
            frag = _frac_str(c)
        if bits and not frag.startswith("-"):
            bits.append("+ " + frag)
        elif bits:
            bits.append("- " + frag[1:])
        else:
            bits.append(frag)
    return " ".join(bits)


def _vec_str(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _lattice_str(lat: Lattice) -> str:
    return "<" + ", ".join(_vec_str([_frac_str(x) for x in row]) for row in lat.basis) + ">"


def _walls_as_inequalities(chamber: Chamber) -> list:
    out = []
    for w in chamber.walls:
        parts = []
        for i, c in enumerate(w):
            if c == 0:
                continue
            var = f"x{i+1}"
            if c == 1:
                frag = var
            elif c == -1:
                frag = f"-{var}"
            else:
                frag = f"{c}{var}"
            if parts and not frag.startswith("-"):
                parts.append("+" + frag)
            else:
                parts.append(frag)
        out.append("".join(parts) + " >= 0")
    return out


def emit_text(result: VpfResult) -> str:
    lines = []
    lines.append(f"Vector partition function of {', '.join(_vec_str(v) for v in result.delta)}")
    lines.append(f"algorithm: {result.algorithm}   chambers: {result.strategy}   "
                 f"count: {len(result.complex.chambers)}")
    lines.append("")
    n = result.dimension
    trivial = lattice_from_rows(tuple(tuple(Fraction(1 if i == j else 0) for j in range(n))
                                      for i in range(n)))
    for display, cid in enumerate(result.complex.ids(), start=1):
        chamber = result.complex.chambers[cid]
        qp = result.formulas.get(cid)
        lines.append(f"Chamber {display} (id {cid})")
        lines.append("  inequalities: " + "; ".join(_walls_as_inequalities(chamber)))
        lines.append("  vertices:     " + ", ".join(_vec_str(v) for v in chamber.vertices))
        lines.append("  internal pt:  " + _vec_str(chamber.internal_point()))
        nbrs = sorted({nid for ns in result.complex.neighbors.get(cid, {}).values() for nid in ns})
        lines.append("  neighbors:    " + (", ".join(str(x) for x in nbrs) if nbrs else "-"))
        if qp is None or qp.is_zero():
            lines.append("  P = 0")
        elif qp.lattice == trivial and len(qp.pieces) == 1:
            lines.append("  P = " + polynomial_text(qp.pieces[0][1]))
        else:
            lines.append("  lattice " + _lattice_str(qp.lattice))
            for shift, poly in qp.pieces:
                lines.append(f"    on {_vec_str(shift)} + lattice:  " + polynomial_text(poly))
        lines.append("")
    return "\n".join(lines)


def to_json_dict(result: VpfResult) -> dict:
    chambers = []
    for cid in result.complex.ids():
        chamber = result.complex.chambers[cid]
        qp = result.formulas.get(cid, QuasiPolynomial.zero(result.dimension))
        wall_list = [list(w) for w in chamber.walls]
        neighbors = {}
        for idx, w in enumerate(chamber.walls):
            ns = result.complex.neighbors.get(cid, {}).get(w)
            if ns:
                neighbors[str(idx)] = sorted(ns)
        chambers.append({
            "id": cid,
            "walls": wall_list,
            "vertices": [list(v) for v in chamber.vertices],
            "internal_point": list(chamber.internal_point()),
            "neighbors": neighbors,
            "quasipolynomial": {
                "lattice_basis": [[_frac_str(x) for x in row] for row in qp.lattice.basis],
                "pieces": [
                    {"shift": list(shift),
                     "polynomial": [
                         {"exponents": list(e), "coefficient": _frac_str(c)}
                         for e, c in sorted(poly.terms.items(), key=_term_order)]}
                    for shift, poly in qp.pieces],
            },
        })
    return {
        "delta": [list(v) for v in result.delta],
        "strategy": result.strategy,
        "algorithm": result.algorithm,
        "chambers": chambers,
    }


def emit_json(result: VpfResult) -> str:
    return json.dumps(to_json_dict(result), indent=2)


def from_json_dict(doc: dict) -> VpfResult:
    """Rebuild a result from its JSON document (inverse of to_json_dict)."""
    cx = ChamberComplex()
    formulas = {}
    for ch in doc["chambers"]:
        walls = tuple(tuple(int(x) for x in w) for w in ch["walls"])
        vertices = tuple(tuple(int(x) for x in v) for v in ch["vertices"])
        cid = int(ch["id"])
        nbmap = {}
        for idx, ids in ch.get("neighbors", {}).items():
            nbmap[walls[int(idx)]] = set(int(i) for i in ids)
        cx.add(Chamber(walls, vertices, cid), nbmap)
        qdoc = ch["quasipolynomial"]
        basis = tuple(tuple(Fraction(x) for x in row) for row in qdoc["lattice_basis"])
        lat = lattice_from_rows(basis)
        n = len(basis)
        pieces = {}
        for piece in qdoc["pieces"]:
            terms = {tuple(int(e) for e in t["exponents"]): Fraction(t["coefficient"])
                     for t in piece["polynomial"]}
            pieces[tuple(int(x) for x in piece["shift"])] = Polynomial(n, terms)
        formulas[cid] = QuasiPolynomial.build(lat, pieces)
    delta = tuple(tuple(int(x) for x in v) for v in doc["delta"])
    return VpfResult(delta=delta, complex=cx, formulas=formulas,
                     algorithm=doc["algorithm"], strategy=doc["strategy"])


def _poly_latex(poly: Polynomial) -> str:
    if poly.is_zero():
        return "0"
    bits = []
    for e, c in sorted(poly.terms.items(), key=_term_order):
        mono = "".join(f"x_{{{i+1}}}" + (f"^{{{k}}}" if k > 1 else "")
                       for i, k in enumerate(e) if k)
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if c.denominator == 1:
            coeff = "" if (c == 1 and mono) else str(c.numerator)
        else:
            num = "" if (c.numerator == 1 and mono) else str(c.numerator)
            if mono:
                frag = f"\\frac{{{num}{mono}}}{{{c.denominator}}}" if num == "" else \
                    f"\\frac{{{c.numerator}{mono}}}{{{c.denominator}}}"
                bits.append((sign, frag))
                continue
            coeff = f"\\frac{{{c.numerator}}}{{{c.denominator}}}"
        bits.append((sign, coeff + mono))
    out = ""
    for i, (sign, frag) in enumerate(bits):
        if i == 0:
            out += ("-" if sign == "-" else "") + frag
        else:
            out += sign + frag
    return out


def emit_latex(result: VpfResult) -> str:
    """Longtable layout mirroring the reference tables."""
    n = result.dimension
    trivial = lattice_from_rows(tuple(tuple(Fraction(1 if i == j else 0) for j in range(n))
                                      for i in range(n)))
    caption = "V.p.f. of " + ", ".join(_vec_str(v) for v in result.delta)
    out = []
    out.append(r"\begin{longtable}{|c|c|c|}\caption{" + caption + r"}\\ \hline")
    out.append(r"N & Polynomial/Lattice & Shift(s)\\ \hline\endfirsthead\hline\endhead")
    for display, cid in enumerate(result.complex.ids(), start=1):
        qp = result.formulas.get(cid, QuasiPolynomial.zero(n))
        if qp.lattice == trivial or qp.is_zero():
            poly = qp.pieces[0][1] if qp.pieces else Polynomial.zero(n)
            out.append(f"{display} & \\({_poly_latex(poly)}\\) & -\\\\ \\hline")
        else:
            basis = ",".join(_vec_str([_frac_str(x) for x in row]) for row in qp.lattice.basis)
            out.append(f"{display} & \\(\\Lambda=\\langle({basis})\\rangle\\) & \\\\ \\hline")
            for shift, poly in qp.pieces:
                out.append(f" & \\({_poly_latex(poly)}\\) & \\({_vec_str(shift)}\\)\\\\ \\hline")
    out.append(r"\end{longtable}")
    out.append("")
    out.append(r"\begin{longtable}{|ccccc|}\caption{" + caption + r"}\\ \hline")
    out.append(r"N & Defining inequalities & Vertices & Int. Pt. & Neighbors\\ \hline\endfirsthead\hline\endhead")
    for display, cid in enumerate(result.complex.ids(), start=1):
        chamber = result.complex.chambers[cid]
        ineqs = r"\\ ".join(i.replace(">=", r"\geq").replace("*", " ")
                            for i in _walls_as_inequalities(chamber))
        verts = r"\\ ".join(_vec_str(v) for v in chamber.vertices)
        nbrs = sorted({nid for ns in result.complex.neighbors.get(cid, {}).values() for nid in ns})
        out.append(f"{display} & \\(\\begin{{array}}{{l}}{ineqs}\\end{{array}}\\) & "
                   f"\\(\\begin{{array}}{{l}}{verts}\\end{{array}}\\) & "
                   f"{_vec_str(chamber.internal_point())} & {nbrs}\\\\ \\hline")
    out.append(r"\end{longtable}")
    return "\n".join(out)


def emit(result: VpfResult, fmt: str) -> str:
    if fmt == "text":
        return emit_text(result)
    if fmt == "json":
        return emit_json(result)
    if fmt == "latex":
        return emit_latex(result)
    raise ValueError(f"unknown format {fmt!r}")


def _laurent_latex(poly) -> str:
    bits = []
    for e, c in sorted(poly.terms.items(), key=_term_order):
        mono = "".join(f"x_{{{i+1}}}" + (f"^{{{k}}}" if k != 1 else "")
                       for i, k in enumerate(e) if k)
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        coeff = "" if (mag == 1 and mono) else _frac_str(mag)
        bits.append((sign, coeff + (mono or "")))
    out = ""
    for i, (sign, frag) in enumerate(bits):
        out += (sign if (i or sign == "-") else "") + frag
    return out or "0"


def _denominator_latex(key) -> str:
    out = []
    for alpha, pairs in key:
        mono = "".join(f"x_{{{i+1}}}" + (f"^{{{k}}}" if k != 1 else "")
                       for i, k in enumerate(alpha) if k)
        for b, m in pairs:
            base = mono if b == 1 else "".join(
                f"x_{{{i+1}}}" + (f"^{{{b*k}}}" if b * k != 1 else "")
                for i, k in enumerate(alpha) if k)
            out.append(f"(1-{base})" + (f"^{{{m}}}" if m > 1 else ""))
    return "".join(out)


def decomposition_latex(pf_sum) -> str:
    """align* block listing the fractions of a partial fraction sum,
    mirroring the reference layout (one fraction per line)."""
    lines = []
    for key, numer in sorted(pf_sum.fractions.items()):
        lines.append(f"\\frac{{{_laurent_latex(numer)}}}{{{_denominator_latex(key)}}}")
    body = "\\\\\n&+".join(lines)
    return "\\begin{align*}\n&" + body + "\n\\end{align*}"


def decomposition_text(pf_sum) -> str:
    lines = []
    for key, numer in sorted(pf_sum.fractions.items()):
        denom = " ".join(f"(1-x^{tuple(int(b*x) for x in alpha)})^{m}"
                         for alpha, pairs in key for b, m in pairs)
        lines.append(f"[{numer}] / {denom}")
    return "\n".join(lines)
