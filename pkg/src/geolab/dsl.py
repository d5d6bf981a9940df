"""Scene files: a small declaration language for charts, tensors, structures and checks.

Example::

    chart M(x, y, z)
    form eta = d(z) - y*d(x)
    structure graph_form L(eta)
    check contact(eta)
    check integrability(L)

Expressions use ``d(...)`` for the exterior derivative, ``@x`` for the
coordinate field d/dx, ``^`` for both wedge (graded operands) and integer
powers (scalar operands), and ``i`` for the imaginary unit.  ``#`` starts a
comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

from . import e1, structures as st
from .checks import REGISTRY
from .errors import GeolabError
from .extcalc import DiffForm, MultiVector, Tensor11, d_form, wedge
from .symcore import Chart, Scalar

KEYWORDS = frozenset({"chart", "scalar", "form", "vector", "bivector", "multivector",
                      "tensor11", "structure", "check", "endo", "subbundle"})


class SceneError(GeolabError):
    """Error in a scene file, positioned at ``line:col`` of the offending token."""

    kind = "SceneError"

    def __init__(self, message: str, line: int = 0, col: int = 0, token: str = ""):
        self.message, self.line, self.col, self.token = message, line, col, token
        super().__init__(f"{line}:{col}: {self.kind}: {message}" + (f" (at {token!r})" if token else ""))


class SceneSyntaxError(SceneError):
    kind = "SyntaxError"


class UnboundName(SceneError):
    kind = "UnboundName"


class TypeMismatch(SceneError):
    kind = "TypeMismatch"


class ArityError(SceneError):
    kind = "ArityError"


class UnknownCheck(SceneError):
    kind = "UnknownCheck"


# -- lexer ---------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str   # IDENT, INT, OP, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*) |
    (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*) | (?P<INT>[0-9]+) |
    (?P<OP>->|[()+\-*/^@=,;{}\[\]])
""", re.VERBOSE)


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise SceneSyntaxError("unexpected character", line, col, text[pos])
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("IDENT", "INT", "OP"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


# -- scene model -----------------------------------------------------------------

@dataclass
class Binding:
    name: str
    decl: str                    # statement keyword, or "structure:<kind>"
    value: Any
    args: tuple[str, ...] = ()

    def __eq__(self, other):
        if not isinstance(other, Binding):
            return NotImplemented
        return (self.name, self.decl, self.args) == (other.name, other.decl, other.args) \
            and _value_eq(self.value, other.value)


def _value_eq(a, b) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, (st.JacobiPair,)):
        return a.pi == b.pi and a.E == b.E
    return a == b


@dataclass(frozen=True)
class CheckDecl:
    name: str
    args: tuple[str, ...]
    options: tuple[tuple[str, int], ...] = ()
    line: int = field(default=0, compare=False)

    @property
    def label(self) -> str:
        return f"{self.name}({', '.join(self.args)})"


@dataclass
class Scene:
    chart: Chart | None
    bindings: dict[str, Binding] = field(default_factory=dict)
    checks: list[CheckDecl] = field(default_factory=list)

    def __eq__(self, other):
        if not isinstance(other, Scene):
            return NotImplemented
        same_chart = (self.chart is None and other.chart is None) or (
            self.chart is not None and other.chart is not None
            and self.chart == other.chart and self.chart.name == other.chart.name)
        return (same_chart and list(self.bindings) == list(other.bindings)
                and all(self.bindings[k] == other.bindings[k] for k in self.bindings)
                and self.checks == other.checks)

    def value(self, name: str):
        return self.bindings[name].value


# -- types -------------------------------------------------------------------------

def type_of(value) -> set[str]:
    """Set of signature type names a value satisfies."""
    if isinstance(value, Scalar):
        return {"scalar"}
    if isinstance(value, DiffForm):
        return {"form", f"form{value.degree}"}
    if isinstance(value, MultiVector):
        names = {"multivector"}
        if value.degree == 1:
            names.add("vector")
        if value.degree == 2:
            names.add("bivector")
        return names
    if isinstance(value, Tensor11):
        return {"tensor11"}
    if isinstance(value, st.JacobiPair):
        return {"jacobi"}
    if isinstance(value, st.AlmostContact):
        return {"almost_contact"}
    if isinstance(value, st.CosymplecticPair):
        return {"cosymplectic"}
    if isinstance(value, e1.SubBundle):
        return {"subbundle"}
    if isinstance(value, e1.EndoJ):
        return {"endo"}
    return set()


def _conj_bundle(L):
    return e1.conjugate(L)


# structure kind -> (argument types, constructor)
STRUCTURES: dict[str, tuple[tuple[str, ...], Any]] = {
    "jacobi": (("bivector", "vector"), lambda pi, E: st.JacobiPair(pi, E)),
    "almost_contact": (("tensor11", "vector", "form1"),
                       lambda phi, xi, eta: st.AlmostContact(phi, xi, eta, validate=False)),
    "cosymplectic": (("form2", "form1"), lambda w, eta: st.CosymplecticPair(w, eta, validate=False)),
    "jacobi_from_contact": (("form1",), st.jacobi_from_contact),
    "graph_jacobi": (("jacobi",), st.graph_jacobi),
    "graph_omega_eta": (("form2", "form1"), st.graph_omega_eta),
    "graph_form": (("form1",), st.graph_form),
    "endo_almost_contact": (("almost_contact",), st.endo_from_almost_contact),
    "endo_cosymplectic": (("cosymplectic",), st.endo_from_cosymplectic),
    "gac_almost_contact": (("almost_contact",), lambda a: st.gac_from_almost_contact(a)[1]),
    "gac_cosymplectic": (("cosymplectic",), st.cosymplectic_bundle),
    "eigenbundle": (("endo",), lambda J: e1.eigenbundle(J, +1)),
    "eigenbundle_minus": (("endo",), lambda J: e1.eigenbundle(J, -1)),
    "conjugate": (("subbundle",), _conj_bundle),
}


def coerce_multivector(value, chart: Chart, degree: int | None):
    if isinstance(value, MultiVector):
        if degree is not None and value.degree != degree:
            raise TypeError(f"expected a degree-{degree} multivector, got degree {value.degree}")
        return value
    if isinstance(value, Scalar):
        if degree in (None, 0):
            return MultiVector.from_scalar(value)
        if value.is_zero():
            return MultiVector(chart, degree)
    raise TypeError(f"expected a multivector, got {type(value).__name__}")


def _coerce_form(value, chart: Chart, degree: int | None = None):
    if isinstance(value, DiffForm):
        if degree is not None and value.degree != degree:
            raise TypeError(f"expected a {degree}-form, got degree {value.degree}")
        return value
    if isinstance(value, Scalar):
        if degree in (None, 0):
            return DiffForm.from_scalar(value)
        if value.is_zero():
            return DiffForm(chart, degree)
    raise TypeError(f"expected a differential form, got {type(value).__name__}")


# -- parser --------------------------------------------------------------------------

class Parser:
    def __init__(self, text: str, chart: Chart | None = None, env: dict | None = None):
        self.tokens = tokenize(text)
        self.pos = 0
        self.chart = chart
        self.env = env if env is not None else {}

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def ident(self, what="identifier") -> Token:
        if self.tok.kind != "IDENT":
            self.error(f"expected {what}")
        return self.advance()

    def error(self, message, cls=SceneSyntaxError, tok: Token | None = None):
        t = tok or self.tok
        raise cls(message, t.line, t.col, t.text or "<end of input>")

    # expressions
    def expression(self):
        value = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance()
            rhs = self.term()
            value = self._binary(op, value, rhs)
        return value

    def term(self):
        value = self.unary()
        while self.at("*") or self.at("/"):
            op = self.advance()
            rhs = self.unary()
            value = self._binary(op, value, rhs)
        return value

    def unary(self):
        if self.at("-"):
            op = self.advance()
            value = self.unary()
            return self._binary(op, self._scalar(0), value)
        if self.at("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            op = self.advance()
            exponent = self.unary()
            return self._binary(op, base, exponent)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return self._scalar(int(t.text))
        if self.at("("):
            self.advance()
            value = self.expression()
            self.expect(")")
            return value
        if self.at("@"):
            self.advance()
            name = self.ident("coordinate name after '@'")
            chart = self._need_chart(name)
            if name.text not in chart.coords:
                self.error(f"unknown coordinate {name.text!r}", UnboundName, name)
            return MultiVector.basis(chart, name.text)
        if t.kind == "IDENT":
            self.advance()
            if t.text == "d" and self.at("("):
                self.advance()
                inner = self.expression()
                self.expect(")")
                if not isinstance(inner, (Scalar, DiffForm)):
                    self.error("d() needs a scalar or a form", TypeMismatch, t)
                return d_form(inner)
            chart = self._need_chart(t)
            if t.text == "i":
                from sympy.polys.domains import QQ_I
                return Scalar.const(chart, QQ_I(0, 1))
            if t.text in chart.coords:
                return chart.coord(t.text)
            if t.text in self.env:
                value = self.env[t.text]
                if not isinstance(value, (Scalar, DiffForm, MultiVector)):
                    self.error(f"{t.text!r} cannot be used inside an expression", TypeMismatch, t)
                return value
            self.error(f"name {t.text!r} is not bound", UnboundName, t)
        self.error("expected an expression")

    def _need_chart(self, tok) -> Chart:
        if self.chart is None:
            t = tok if isinstance(tok, Token) else self.tok
            self.error("no chart declared before this expression", SceneSyntaxError, t)
        return self.chart

    def _scalar(self, value) -> Scalar:
        return Scalar.const(self._need_chart(self.tok), value)

    def _binary(self, op: Token, a, b):
        graded = (DiffForm, MultiVector)
        try:
            if op.text in "+-":
                if isinstance(a, Scalar) and isinstance(b, Scalar):
                    return a + b if op.text == "+" else a - b
                if isinstance(a, Scalar) and a.is_zero() and isinstance(b, graded):
                    return b if op.text == "+" else -b
                if isinstance(b, Scalar) and b.is_zero() and isinstance(a, graded):
                    return a
                if isinstance(a, graded) and isinstance(b, graded):
                    if type(a) is not type(b) or a.degree != b.degree:
                        raise TypeError(f"cannot add {_describe(a)} and {_describe(b)}")
                    return a + b if op.text == "+" else a - b
                raise TypeError(f"cannot add {_describe(a)} and {_describe(b)}")
            if op.text == "*":
                if isinstance(a, graded) and isinstance(b, graded):
                    raise TypeError("use '^' to wedge graded elements")
                return a * b if not isinstance(b, graded) else b * a
            if op.text == "/":
                if not isinstance(b, Scalar):
                    raise TypeError("division needs a scalar denominator")
                return a / b
            if op.text == "^":
                if isinstance(a, Scalar) and isinstance(b, Scalar):
                    if not b.is_constant():
                        raise TypeError("exponent must be an integer constant")
                    v = b.constant_value()
                    if v.y != 0 or v.x.denominator != 1:
                        raise TypeError("exponent must be an integer constant")
                    return a ** int(v.x)
                if isinstance(a, graded) and isinstance(b, graded):
                    if type(a) is not type(b):
                        raise TypeError(f"cannot wedge {_describe(a)} with {_describe(b)}")
                    return wedge(a, b)
                raise TypeError(f"'^' needs two scalars (power) or two graded operands (wedge)")
        except (TypeError, GeolabError) as exc:
            if isinstance(exc, SceneError):
                raise
            self.error(str(exc), TypeMismatch, op)
        raise AssertionError(op)

    # statements
    def scene(self) -> Scene:
        scene = Scene(self.chart)
        while self.tok.kind != "EOF":
            self.statement(scene)
        return scene

    def _new_name(self, scene: Scene) -> Token:
        t = self.ident("a name")
        if t.text in KEYWORDS or t.text in ("d", "i"):
            self.error(f"{t.text!r} is reserved", SceneSyntaxError, t)
        if self.chart is not None and t.text in self.chart.coords:
            self.error(f"{t.text!r} is a coordinate name", SceneSyntaxError, t)
        if t.text in scene.bindings:
            self.error(f"{t.text!r} is already bound", SceneSyntaxError, t)
        return t

    def _bind(self, scene: Scene, binding: Binding):
        scene.bindings[binding.name] = binding
        self.env[binding.name] = binding.value

    def statement(self, scene: Scene):
        t = self.tok
        if t.kind != "IDENT" or t.text not in KEYWORDS:
            self.error("expected a statement keyword")
        kw = self.advance().text
        if kw == "chart":
            if scene.chart is not None:
                self.error("chart already declared", SceneSyntaxError, t)
            name = self.ident("chart name")
            self.expect("(")
            coords = [self.ident("coordinate name").text]
            while self.at(","):
                self.advance()
                coords.append(self.ident("coordinate name").text)
            self.expect(")")
            try:
                self.chart = Chart(tuple(coords), name=name.text)
            except ValueError as exc:
                self.error(str(exc), SceneSyntaxError, name)
            scene.chart = self.chart
            return
        if self.chart is None:
            self.error("the first statement must declare a chart", SceneSyntaxError, t)
        if kw == "check":
            self.check(scene)
            return
        if kw == "structure":
            self.structure(scene)
            return
        name = self._new_name(scene)
        if kw == "tensor11":
            self._bind(scene, Binding(name.text, kw, self.tensor_body()))
            return
        if kw == "endo":
            self._bind(scene, Binding(name.text, kw, self.endo_body(name)))
            return
        if kw == "subbundle":
            complexified = False
            if self.tok.kind == "IDENT" and self.tok.text == "complex":
                self.advance()
                complexified = True
            self._bind(scene, Binding(name.text, kw, self.subbundle_body(complexified)))
            return
        self.expect("=")
        start = self.tok
        value = self.expression()
        try:
            if kw == "scalar":
                if not isinstance(value, Scalar):
                    raise TypeError(f"expected a scalar, got {_describe(value)}")
            elif kw == "form":
                value = _coerce_form(value, self.chart)
            elif kw == "vector":
                value = coerce_multivector(value, self.chart, 1)
            elif kw == "bivector":
                value = coerce_multivector(value, self.chart, 2)
            elif kw == "multivector":
                value = coerce_multivector(value, self.chart, None)
        except TypeError as exc:
            self.error(str(exc), TypeMismatch, start)
        self._bind(scene, Binding(name.text, kw, value))

    def tensor_body(self) -> Tensor11:
        self.expect("{")
        images = {}
        while not self.at("}"):
            c = self.ident("coordinate name")
            if c.text not in self.chart.coords:
                self.error(f"unknown coordinate {c.text!r}", UnboundName, c)
            if c.text in images:
                self.error(f"image of @{c.text} given twice", SceneSyntaxError, c)
            self.expect("->")
            start = self.tok
            try:
                images[c.text] = coerce_multivector(self.expression(), self.chart, 1)
            except TypeError as exc:
                self.error(str(exc), TypeMismatch, start)
            if not self.at("}"):
                self.expect(";")
        self.expect("}")
        return Tensor11.from_images(self.chart, images)

    def _scalar_expr(self) -> Scalar:
        start = self.tok
        value = self.expression()
        if not isinstance(value, Scalar):
            self.error(f"expected a scalar, got {_describe(value)}", TypeMismatch, start)
        return value

    def endo_body(self, name: Token) -> e1.EndoJ:
        self.expect("{")
        rows = []
        while not self.at("}"):
            row = [self._scalar_expr()]
            while self.at(","):
                self.advance()
                row.append(self._scalar_expr())
            rows.append(row)
            if not self.at("}"):
                self.expect(";")
        close = self.expect("}")
        N = 2 * (self.chart.dim + 1)
        if len(rows) != N or any(len(r) != N for r in rows):
            self.error(f"endo needs a {N}x{N} matrix", ArityError, name)
        return e1.EndoJ(self.chart, rows)

    def section(self) -> e1.E1Section:
        self.expect("(")
        start = self.tok
        try:
            X = coerce_multivector(self.expression(), self.chart, 1)
            self.expect(",")
            f = self._scalar_expr()
            self.expect(")")
            self.expect("+")
            self.expect("(")
            start = self.tok
            alpha = _coerce_form(self.expression(), self.chart, 1)
        except TypeError as exc:
            self.error(str(exc), TypeMismatch, start)
        self.expect(",")
        g = self._scalar_expr()
        self.expect(")")
        return e1.E1Section(X, f, alpha, g)

    def subbundle_body(self, complexified: bool) -> e1.SubBundle:
        brace = self.expect("{")
        gens = []
        while not self.at("}"):
            gens.append(self.section())
            if not self.at("}"):
                self.expect(";")
        self.expect("}")
        if not gens:
            self.error("a sub-bundle needs at least one section", ArityError, brace)
        return e1.SubBundle(gens, complexified)

    def _args(self) -> list[Token]:
        self.expect("(")
        args = [self.ident("argument name")]
        while self.at(","):
            self.advance()
            args.append(self.ident("argument name"))
        self.expect(")")
        return args

    def _typecheck(self, what: str, signature, args: list[Token], at: Token):
        if len(args) != len(signature):
            self.error(f"{what} takes {len(signature)} argument(s), got {len(args)}", ArityError, at)
        values = []
        for tok, want in zip(args, signature):
            if tok.text not in self.env:
                self.error(f"name {tok.text!r} is not bound", UnboundName, tok)
            value = self.env[tok.text]
            if want not in type_of(value):
                self.error(f"{what} expects {want} for {tok.text!r}, got {_describe(value)}",
                           TypeMismatch, tok)
            values.append(value)
        return values

    def structure(self, scene: Scene):
        kind = self.ident("structure kind")
        if kind.text not in STRUCTURES:
            self.error(f"unknown structure kind {kind.text!r}", SceneSyntaxError, kind)
        name = self._new_name(scene)
        args = self._args()
        signature, build = STRUCTURES[kind.text]
        values = self._typecheck(f"structure {kind.text}", signature, args, kind)
        try:
            value = build(*values)
        except (GeolabError, ValueError) as exc:
            self.error(f"cannot build {kind.text}: {exc}", TypeMismatch, kind)
        self._bind(scene, Binding(name.text, f"structure:{kind.text}", value,
                                  tuple(a.text for a in args)))

    def check(self, scene: Scene):
        name = self.ident("check name")
        if name.text not in REGISTRY:
            self.error(f"unknown check {name.text!r}", UnknownCheck, name)
        spec = REGISTRY[name.text]
        args = self._args()
        self._typecheck(f"check {name.text}", spec.signature, args, name)
        options = {}
        if self.at("["):
            self.advance()
            while True:
                key = self.ident("option name")
                if key.text not in spec.options:
                    self.error(f"check {name.text} has no option {key.text!r}", SceneSyntaxError, key)
                self.expect("=")
                val = self.tok
                if val.kind != "INT":
                    self.error("option values are integers")
                self.advance()
                options[key.text] = int(val.text)
                if self.at("]"):
                    break
                self.expect(",")
            self.expect("]")
        scene.checks.append(CheckDecl(name.text, tuple(a.text for a in args),
                                      tuple(sorted(options.items())), name.line))


def _describe(value) -> str:
    if isinstance(value, Scalar):
        return "a scalar"
    if isinstance(value, DiffForm):
        return f"a {value.degree}-form"
    if isinstance(value, MultiVector):
        return f"a degree-{value.degree} multivector"
    kinds = type_of(value)
    return next(iter(kinds)) if kinds else type(value).__name__


def parse_scene(text: str) -> Scene:
    return Parser(text).scene()


def parse_expression(text: str, chart: Chart, env: dict | None = None):
    p = Parser(text, chart, env)
    value = p.expression()
    if p.tok.kind != "EOF":
        p.error("unexpected trailing input")
    return value


# -- printer ---------------------------------------------------------------------

def _print_section(e: e1.E1Section) -> str:
    X = str(e.X)
    alpha = str(e.alpha)
    return f"({X}, {e.f}) + ({alpha}, {e.g})"


def print_binding(b: Binding) -> str:
    v = b.value
    if b.decl.startswith("structure:"):
        return f"structure {b.decl.split(':', 1)[1]} {b.name}({', '.join(b.args)})"
    if b.decl == "scalar":
        return f"scalar {b.name} = {v}"
    if b.decl == "form":
        return f"form {b.name} = {v}"
    if b.decl in ("vector", "bivector", "multivector"):
        return f"{b.decl} {b.name} = {v}"
    if b.decl == "tensor11":
        chart = v.chart
        parts = []
        for j, c in enumerate(chart.coords):
            img = v.image(j)
            if img:
                parts.append(f"{c} -> {img};")
        return f"tensor11 {b.name} {{ {' '.join(parts)} }}" if parts else f"tensor11 {b.name} {{ }}"
    if b.decl == "endo":
        rows = "; ".join(", ".join(str(x) for x in row) for row in v.matrix)
        return f"endo {b.name} {{ {rows} }}"
    if b.decl == "subbundle":
        kind = " complex" if v.complexified else ""
        body = "; ".join(_print_section(g) for g in v.generators)
        return f"subbundle {b.name}{kind} {{ {body} }}"
    raise ValueError(f"cannot print binding of kind {b.decl}")


def print_scene(scene: Scene) -> str:
    lines = []
    if scene.chart is not None:
        lines.append(f"chart {scene.chart.name}({', '.join(scene.chart.coords)})")
    lines += [print_binding(b) for b in scene.bindings.values()]
    for c in scene.checks:
        opts = ""
        if c.options:
            opts = " [" + ", ".join(f"{k}={v}" for k, v in c.options) + "]"
        lines.append(f"check {c.label}{opts}")
    return "\n".join(lines) + "\n"
