"""Map files, reports, and the polynomial expression parser.

Maps travel as JSON with polynomial components written in a small
expression grammar: integer and rational literals, `i` over Q(i),
variables, `+ - * ^ ( )`, with `^` binding tighter than `*`.  The
canonical printer in `poly` emits exactly this grammar, so files
round-trip.  Plane maps use z0, z1, z2; product maps are stored as two
affine value pairs in z1, z2, the factor j image being num_j / den_j,
and are bihomogenized on load.

Reports are JSON as well, schema_version "1" throughout.  Exact
scalars are serialized as strings so nothing is lost; floating values
are printed to 12 significant digits, round half even, which keeps
golden files stable.
"""

import json

from dataclasses import dataclass
from decimal import Context, Decimal, ROUND_HALF_EVEN
from fractions import Fraction
from typing import Optional

from .analyzer import FixClassification, LemmaReport, classify
from .poly import AFFINE_VARS, MultiPoly, P2_VARS, dehomogenize_bi, poly_to_string
from .scalars import GaussianRational, Scalar, format_scalar
from .spaces import (
    SPACE_P1XP1,
    SPACE_P2,
    DegreeReport,
    ProjMap,
    degree_report,
    normalize_map,
)
from .transfer import HypothesisReport

SCHEMA_VERSION = "1"

FIELD_Q = "Q"
FIELD_QI = "Q(i)"


class MapFileError(ValueError):
    """A map file that does not follow the schema."""


class UnknownVariable(ValueError):
    """An identifier outside the declared variable list."""

    def __init__(self, name, offset):
        super().__init__(f"unknown variable {name!r} at offset {offset}")
        self.name = name
        self.offset = offset


class GaussianLiteralInRationalField(ValueError):
    """`i` used in an expression declared over Q."""

    def __init__(self, offset):
        super().__init__(f"the literal i at offset {offset} needs the field Q(i)")
        self.offset = offset


# === expression parser ==============================================

_OPS = set("+-*^()/")


def _syntax_error(message, text, offset):
    err = SyntaxError(f"{message} at offset {offset}")
    err.text = text
    err.offset = offset
    return err


def _tokenize(text):
    """(kind, value, offset) triples; kinds are num, name, op, end."""
    out = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            out.append(("num", int(text[start:pos]), start))
            continue
        if ch.isalpha() or ch == "_":
            start = pos
            while pos < len(text) and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            out.append(("name", text[start:pos], start))
            continue
        if ch in _OPS:
            out.append(("op", ch, pos))
            pos += 1
            continue
        raise _syntax_error(f"unexpected character {ch!r}", text, pos)
    out.append(("end", None, len(text)))
    return out


class _Parser:
    """Recursive descent over the token list.

    expr   := ('+'|'-')? term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' integer)?
    atom   := integer ('/' integer)? | 'i' | variable | '(' expr ')'
    """

    def __init__(self, text, variables, field):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variables = tuple(variables)
        self.field = field

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, offset):
        raise _syntax_error(message, self.text, offset)

    def parse(self):
        node = self.expr()
        kind, value, offset = self.peek()
        if kind != "end":
            self.fail(f"unexpected {value!r}", offset)
        return node

    def expr(self):
        kind, value, _ = self.peek()
        negate = False
        if kind == "op" and value in "+-":
            negate = value == "-"
            self.take()
        node = self.term()
        if negate:
            node = -node
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                right = self.term()
                node = node - right if value == "-" else node + right
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.take()
                node = node * self.factor()
            else:
                return node

    def factor(self):
        node = self.atom()
        kind, value, offset = self.peek()
        if kind == "op" and value == "^":
            self.take()
            kind, value, offset = self.take()
            if kind != "num":
                self.fail("the exponent must be an integer", offset)
            node = node ** value
        return node

    def atom(self):
        kind, value, offset = self.take()
        if kind == "num":
            scalar = Fraction(value)
            nk, nv, noff = self.peek()
            if nk == "op" and nv == "/":
                self.take()
                dk, dv, doff = self.take()
                if dk != "num":
                    self.fail("expected a denominator", doff)
                if dv == 0:
                    self.fail("zero denominator", doff)
                scalar = Fraction(value, dv)
            return MultiPoly.constant(self.variables, scalar)
        if kind == "name":
            if value == "i":
                if self.field != FIELD_QI:
                    raise GaussianLiteralInRationalField(offset)
                return MultiPoly.constant(self.variables, GaussianRational(0, 1))
            if value not in self.variables:
                raise UnknownVariable(value, offset)
            return MultiPoly.variable(value, self.variables)
        if kind == "op" and value == "(":
            node = self.expr()
            kind, value, offset = self.take()
            if not (kind == "op" and value == ")"):
                self.fail("expected ')'", offset)
            return node
        shown = "end of input" if kind == "end" else repr(value)
        self.fail(f"unexpected {shown}", offset)

    # fail always raises, atom cannot fall through


def parse_polynomial(text, variables, field=FIELD_Q) -> MultiPoly:
    """Exact polynomial from expression text.

    Whitespace-insensitive; `^` binds tighter than `*`; rational
    literals are written `3/5`.  `i` is accepted only when field is
    "Q(i)".  Malformed input raises SyntaxError carrying the 0-based
    offset of the offending token; identifiers outside `variables`
    raise UnknownVariable.
    """
    if field not in (FIELD_Q, FIELD_QI):
        raise MapFileError(f"unknown field {field!r}")
    return _Parser(text, variables, field).parse()


# === map files ======================================================


def _map_field(f: ProjMap) -> str:
    for group in f.groups:
        for p in group:
            for c in p.terms.values():
                if isinstance(c, GaussianRational) and c.im != 0:
                    return FIELD_QI
    return FIELD_Q


@dataclass(frozen=True)
class MapFile:
    """The JSON form of a self-map.

    P2 components are the three homogeneous polynomials in z0, z1, z2.
    P1xP1 components are four affine polynomials in z1, z2, in the
    order den1, num1, den2, num2: factor j of the image has affine
    value num_j / den_j.
    """

    space: str
    field: str
    components: tuple
    metadata: Optional[dict] = None

    @classmethod
    def from_map(cls, f: ProjMap, metadata=None) -> "MapFile":
        f = normalize_map(f)
        if f.source != f.target:
            raise MapFileError("map files hold self-maps")
        if f.source == SPACE_P2:
            comps = tuple(poly_to_string(p) for p in f.groups[0])
        else:
            comps = tuple(
                poly_to_string(dehomogenize_bi(p)) for pair in f.groups for p in pair
            )
        return cls(
            space=f.source,
            field=_map_field(f),
            components=comps,
            metadata=dict(metadata) if metadata else None,
        )

    def to_map(self) -> ProjMap:
        if self.space == SPACE_P2:
            if len(self.components) != 3:
                raise MapFileError("a P2 map needs exactly 3 components")
            polys = [
                parse_polynomial(c, P2_VARS, self.field) for c in self.components
            ]
            return normalize_map(ProjMap.p2_self_map(polys))
        if self.space == SPACE_P1XP1:
            if len(self.components) != 4:
                raise MapFileError(
                    "a P1xP1 map needs exactly 4 components: den1, num1, den2, num2"
                )
            polys = [
                parse_polynomial(c, AFFINE_VARS, self.field) for c in self.components
            ]
            return normalize_map(ProjMap.from_affine_pair(*polys))
        raise MapFileError(f"unknown space {self.space!r}")

    def to_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "space": self.space,
            "field": self.field,
            "components": list(self.components),
        }
        if self.metadata:
            out["metadata"] = dict(self.metadata)
        return out

    @classmethod
    def from_dict(cls, data) -> "MapFile":
        if not isinstance(data, dict):
            raise MapFileError("a map file holds a JSON object")
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise MapFileError(f"unsupported schema_version {version!r}")
        missing = {"space", "field", "components"} - set(data)
        if missing:
            raise MapFileError(f"missing fields: {', '.join(sorted(missing))}")
        if data["field"] not in (FIELD_Q, FIELD_QI):
            raise MapFileError(f"unknown field {data['field']!r}")
        comps = data["components"]
        if not isinstance(comps, list) or not all(isinstance(c, str) for c in comps):
            raise MapFileError("components must be a list of strings")
        meta = data.get("metadata")
        if meta is not None and not isinstance(meta, dict):
            raise MapFileError("metadata must be an object")
        return cls(
            space=data["space"],
            field=data["field"],
            components=tuple(comps),
            metadata=meta,
        )


def write_map_file(f: ProjMap, path, metadata=None):
    doc = MapFile.from_map(f, metadata=metadata).to_dict()
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(doc, handle, indent=2)
        handle.write("\n")


def read_map_file(path) -> MapFile:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise MapFileError(f"not valid JSON: {exc}") from None
    return MapFile.from_dict(data)


# === decimal display ================================================

_TWELVE = Context(prec=12, rounding=ROUND_HALF_EVEN)


def _decimal_real(value) -> str:
    if isinstance(value, Fraction):
        return str(_TWELVE.divide(Decimal(value.numerator), Decimal(value.denominator)))
    if isinstance(value, int):
        return str(_TWELVE.plus(Decimal(value)))
    return str(_TWELVE.plus(Decimal(float(value))))


def decimal_str(value) -> str:
    """12 significant digits, round half even; complex as 'a + b*i'."""
    if isinstance(value, GaussianRational):
        re, im = value.re, value.im
    elif isinstance(value, complex):
        re, im = value.real, value.imag
    else:
        return _decimal_real(value)
    if im == 0:
        return _decimal_real(re)
    im_text = _decimal_real(im)
    if im_text.startswith("-"):
        return f"{_decimal_real(re)} - {im_text[1:]}*i"
    return f"{_decimal_real(re)} + {im_text}*i"


# === reports ========================================================


def _witness_dict(w) -> dict:
    return {
        "chart": w.chart,
        "exact": str(w.exact_point) if w.exact_point is not None else None,
        "approx": [decimal_str(c) for c in w.approx],
        "residual": decimal_str(w.residual),
    }


def _indeterminacy_dict(loc) -> dict:
    return {
        "points": [str(p) for p in loc.points],
        "clusters": [
            {
                "stratum": cluster.stratum,
                "eliminants": [
                    {"variable": v, "polynomial": poly_to_string(p)}
                    for v, p in cluster.eliminants
                ],
                "approx": [
                    [decimal_str(c) for c in coords]
                    for coords in cluster.approximations
                ],
            }
            for cluster in loc.residual
        ],
    }


def degree_dict(report: DegreeReport) -> dict:
    out = {
        "space": report.space,
        "topological_degree": report.topological_degree,
    }
    if report.algebraic_degree is not None:
        out["algebraic_degree"] = report.algebraic_degree
    if report.skew_degree is not None:
        out["skew_degree"] = report.skew_degree
    if report.graph_volume is not None:
        out["graph_volume"] = report.graph_volume
    if report.bidegree_matrix is not None:
        out["bidegree_matrix"] = [list(row) for row in report.bidegree_matrix]
        out["bidegree_is_extension"] = report.bidegree_is_extension
    return out


def classification_report(
    cls: FixClassification,
    degree: Optional[DegreeReport] = None,
    name: Optional[str] = None,
) -> dict:
    out = {"schema_version": SCHEMA_VERSION}
    if name:
        out["name"] = name
    out["verdict"] = cls.verdict
    if cls.curve is not None:
        out["curve"] = poly_to_string(cls.curve)
    out["witnesses"] = [_witness_dict(w) for w in cls.witnesses]
    out["indeterminacy"] = _indeterminacy_dict(cls.indeterminacy)
    if degree is not None:
        out["degree"] = degree_dict(degree)
    out["certificate"] = [
        {"chart": row.chart, "product": row.product, "holds": row.holds}
        for row in cls.certificate
    ]
    if cls.notes:
        out["notes"] = list(cls.notes)
    return out


def lemma_report(p: MultiPoly, q: MultiPoly, k: int, result: LemmaReport) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "p": poly_to_string(p),
        "q": poly_to_string(q),
        "k": k,
        "pass": result.passed,
    }
    if result.reason:
        out["reason"] = result.reason
    if result.difference is not None:
        out["difference"] = poly_to_string(result.difference)
    return out


def hypothesis_dict(report: HypothesisReport) -> dict:
    return {
        "center": str(report.center),
        "all_pass": report.all_pass,
        "conditions": [
            {"name": c.name, "passed": c.passed, "facts": list(c.facts)}
            for c in report.conditions
        ],
    }


def transfer_report(
    hypotheses: HypothesisReport,
    transferred: Optional[ProjMap] = None,
    cls: Optional[FixClassification] = None,
    degree: Optional[DegreeReport] = None,
) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "hypotheses": hypothesis_dict(hypotheses),
    }
    if transferred is not None:
        out["transferred"] = MapFile.from_map(transferred).to_dict()
    if cls is not None:
        out["verdict"] = cls.verdict
        out["witnesses"] = [_witness_dict(w) for w in cls.witnesses]
        out["indeterminacy"] = _indeterminacy_dict(cls.indeterminacy)
    if degree is not None:
        out["degree"] = degree_dict(degree)
    return out


def converge_report(report) -> dict:
    ladder = [
        {
            "n": rung.n,
            "verdict": rung.verdict,
            "algebraic_degree": rung.algebraic_degree,
            "topological_degree": rung.topological_degree,
            "hausdorff_to_limit": decimal_str(rung.hausdorff_to_limit),
        }
        for rung in report.rungs
    ]
    return {
        "schema_version": SCHEMA_VERSION,
        "samples": report.samples,
        "seed": report.seed,
        "limit": {
            "verdict": report.limit_verdict,
            "curve": poly_to_string(report.limit_curve)
            if report.limit_curve is not None
            else None,
            "algebraic_degree": report.limit_algebraic_degree,
            "topological_degree": report.limit_topological_degree,
        },
        "ladder": ladder,
        "hausdorff_ladder": [r["hausdorff_to_limit"] for r in ladder],
        "note": report.note,
    }


def write_report(report: dict, path):
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(report, handle, indent=2)
        handle.write("\n")


def analyze_map(f: ProjMap, name: Optional[str] = None, seed: int = 0) -> dict:
    """Classification plus degree data, as a report dictionary."""
    result = classify(f)
    return classification_report(result, degree=degree_report(f, seed=seed), name=name)
