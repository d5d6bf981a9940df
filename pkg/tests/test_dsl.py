from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from geolab.dsl import (ArityError, SceneSyntaxError, TypeMismatch, UnboundName, UnknownCheck,
                        parse_expression, parse_scene, print_scene, tokenize)
from geolab.extcalc import DiffForm, MultiVector, wedge
from gen import R3, rand_form, rand_scalar, rand_vector

SCENES = sorted((Path(__file__).parent / "scenes").glob("*.geo"))
MALFORMED = sorted((Path(__file__).parent / "malformed").glob("*.geo"))


def test_minimal_scene():
    s = parse_scene("chart M(x,y,z)\nform eta = d(z) - y*d(x)\ncheck contact(eta)")
    assert len(s.bindings) == 1 and len(s.checks) == 1
    assert s.checks[0].label == "contact(eta)"


def test_repeated_wedge_is_zero_two_form():
    w = parse_scene("chart M(x,y,z)\nform w = d(x) ^ d(x)\n").value("w")
    assert isinstance(w, DiffForm) and w.degree == 2 and w.is_zero()


def test_unbound_name_position():
    with pytest.raises(UnboundName) as err:
        parse_scene("chart M(x,y,z)\ncheck contact(zeta)")
    assert (err.value.line, err.value.col, err.value.token) == (2, 15, "zeta")


def test_caret_power_vs_wedge():
    x = R3.coord("x")
    assert parse_expression("x^3", R3) == x**3
    assert parse_expression("x^-1", R3) == 1 / x
    assert parse_expression("2^3^2", R3) == 512
    assert parse_expression("-x^2", R3) == -(x**2)
    v = parse_expression("@x ^ @y", R3)
    assert v == wedge(MultiVector.basis(R3, "x"), MultiVector.basis(R3, "y"))
    with pytest.raises(TypeMismatch):
        parse_expression("x ^ d(x)", R3)
    with pytest.raises(TypeMismatch):
        parse_expression("x ^ y", R3)
    with pytest.raises(TypeMismatch):
        parse_expression("d(x) ^ @y", R3)


def test_comments_and_tokens():
    toks = tokenize("form a = d(x) # trailing\n@y -> 3")
    assert [t.text for t in toks] == ["form", "a", "=", "d", "(", "x", ")", "@", "y", "->", "3", ""]
    assert (toks[7].line, toks[7].col) == (2, 1)


@pytest.mark.parametrize("path", SCENES, ids=lambda p: p.stem)
def test_roundtrip_fixpoint(path):
    s = parse_scene(path.read_text())
    printed = print_scene(s)
    again = parse_scene(printed)
    assert again == s
    assert print_scene(again) == printed


EXPECTED_ERRORS = {
    "arity": (ArityError, 3, 7, "contact"),
    "badchar": (SceneSyntaxError, 2, 15, "$"),
    "syntax": (SceneSyntaxError, 3, 1, "<end of input>"),
    "typemix": (TypeMismatch, 2, 15, "+"),
    "unbound": (UnboundName, 2, 15, "zeta"),
    "unknown_check": (UnknownCheck, 3, 7, "frobnicate"),
    "wrongtype": (TypeMismatch, 3, 15, "v"),
}


@pytest.mark.parametrize("path", MALFORMED, ids=lambda p: p.stem)
def test_malformed_positions(path):
    cls, line, col, tok = EXPECTED_ERRORS[path.stem]
    with pytest.raises(cls) as err:
        parse_scene(path.read_text())
    assert (err.value.line, err.value.col, err.value.token) == (line, col, tok)
    assert str(err.value).startswith(f"{line}:{col}:")


@pytest.mark.parametrize("text,cls", [
    ("form a = d(x)", SceneSyntaxError),                       # no chart
    ("chart M(x)\nchart N(y)", SceneSyntaxError),
    ("chart M(x)\nform a = d(x)\nform a = d(x)", SceneSyntaxError),
    ("chart M(x)\nform x = d(x)", SceneSyntaxError),
    ("chart M(x,y,z)\nstructure nope L(a)", SceneSyntaxError),
    ("chart M(x)\nendo J { 1 }", ArityError),
    ("chart M(x,y,z)\nvector v = @x\ncheck gen_sasakian(v, v) [seed=3]", TypeMismatch),
    ("chart M(x,y,z)\nvector v = @w", UnboundName),
    ("chart M(x,y,z)\nform a = d(@x)", TypeMismatch),
])
def test_rejections(text, cls):
    with pytest.raises(cls):
        parse_scene(text)


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_expression_roundtrip(rng):
    s = rand_scalar(rng, R3, rational=True)
    a = rand_form(rng, R3, rng.randint(0, 3), rational=True)
    v = rand_vector(rng, R3, rng.randint(1, 3))
    assert parse_expression(str(s), R3) == s
    assert R3.form(str(a)) == a
    assert R3.vector(str(v), v.degree) == v
