import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from geolab import Chart
from geolab.e1 import (E1Section, SubBundle, conjugate, direct_sum_check, eigenbundle, endo_check,
                       integrability_check, isotropy_check, same_span)
from geolab.errors import EvenDimension, NotAlmostContact
from geolab.extcalc import DiffForm, MultiVector, Tensor11, d_form, wedge
from geolab import structures as S
from gen import R3, R5

C = R3
x, y, z = (C.coord(n) for n in "xyz")
dx, dy, dz = (DiffForm.basis(C, n) for n in "xyz")
px, py, pz = (MultiVector.basis(C, n) for n in "xyz")
eta0 = dz - dx * y


def sec(X=None, f=0, alpha=None, g=0):
    return E1Section.make(C, X, f, alpha, g)


def test_contact_and_reeb():
    cert = S.contact_check(eta0)
    assert cert.verdict == "pass"
    assert S.reeb(eta0) == pz
    assert S.contact_check(dz).verdict == "fail"
    with pytest.raises(EvenDimension):
        S.contact_check(DiffForm.basis(Chart(("a", "b")), "a"))


def test_contact_generic_certificate():
    # (1 + x^2) eta0 is contact everywhere, certificate is nonconstant
    eta = eta0 * (1 + x * x)
    cert = S.contact_check(eta)
    assert cert.verdict == "generic-pass"
    assert any("zero locus" in line for line in cert.certificate)


def test_jacobi_from_contact_oracle():
    j = S.jacobi_from_contact(eta0)
    assert j.pi == wedge(px, py) - wedge(py, pz) * y
    assert j.E == pz
    assert S.jacobi_check(j).passed


def test_graph_of_jacobi_pair_is_graph_of_minus_eta():
    # with these conventions the graph of (pi, E) is L_(-eta), and (-pi, -E) gives L_eta
    for chart, eta in ((C, eta0), (R5, R5.form("d(z) - y1*d(x1) - y2*d(x2)"))):
        j = S.jacobi_from_contact(eta)
        assert same_span(S.graph_jacobi(j), S.graph_form(-eta)).passed
        flipped = S.JacobiPair(-j.pi, -j.E)
        assert S.jacobi_check(flipped).passed
        assert same_span(S.graph_jacobi(flipped), S.graph_form(eta)).passed
        assert S.jacobi_from_contact(-eta) == flipped


def test_transversality_and_kernel_line():
    L = S.graph_form(eta0)
    t = S.transversality_check(L)
    assert t.verdict == "pass"
    k = S.kernel_line(L)
    assert k.passed
    assert k.details["generator"] == sec(pz, 0, None, -1)
    # the cotangent graph of a closed 2-form is not transversal to T*M x R
    L2 = SubBundle([sec(px, 0, dy, 0), sec(py, 0, -dx, 0), sec(pz), sec(f=1)])
    assert S.transversality_check(L2).verdict == "fail"


def test_iff_graph_omega_eta():
    assert integrability_check(S.graph_omega_eta(d_form(eta0), eta0)).verdict == "pass"
    cert = integrability_check(S.graph_omega_eta(wedge(dx, dy), dz))
    assert cert.verdict == "fail" and cert.witness


def test_iff_graph_jacobi():
    pi = wedge(px + pz * y, py)
    good, bad = S.JacobiPair(pi, pz), S.JacobiPair(pi, MultiVector(C, 1))
    assert S.jacobi_check(good).passed and integrability_check(S.graph_jacobi(good)).passed
    assert not S.jacobi_check(bad).passed and not integrability_check(S.graph_jacobi(bad)).passed


def almost(images, xi, eta, validate=True):
    return S.AlmostContact(Tensor11.from_images(C, images), xi, eta, validate=validate)


NORMAL = [
    ("constant", lambda: almost({"x": py, "y": -px}, pz, dz)),
    ("eta0", lambda: almost({"x": py, "y": -px - pz * y}, pz, eta0)),
]
NONNORMAL = lambda: almost({"x": py * (1 + z), "y": px * (-1 / (1 + z))}, pz, dz)


@pytest.mark.parametrize("name,make", NORMAL)
def test_normal_examples(name, make):
    a = make()
    assert S.normality_check(a).verdict == "pass"
    assert S.lemma_identities(a).verdict == "pass"
    J, E = S.gac_from_almost_contact(a)
    assert endo_check(J).verdict == "pass"
    assert isotropy_check(E).passed and integrability_check(E).passed
    assert same_span(E, eigenbundle(J)).passed


def test_nonnormal_example_witness():
    a = NONNORMAL()
    cert = S.normality_check(a)
    assert cert.verdict == "fail"
    i, j, res = cert.details["failures"][0]
    assert (i, j) == (0, 2)
    assert res == px * (-1 / (1 + z))
    assert "(@x, @z): (-1/(z + 1))*@x" in cert.witness
    _, E = S.gac_from_almost_contact(a)
    assert integrability_check(E).verdict == "fail"


def test_almost_contact_validation():
    with pytest.raises(NotAlmostContact):
        almost({"x": py, "y": px}, pz, dz)
    bad = almost({"x": py, "y": px}, pz, dz, validate=False)
    assert S.almost_contact_check(bad).verdict == "fail"


def test_cosymplectic_oracles():
    c = S.CosymplecticPair(wedge(dx, dy), dz)
    assert S.cosymplectic_check(c).verdict == "pass"
    assert S.cosymplectic_reeb(c) == pz
    J = S.endo_from_cosymplectic(c)
    assert endo_check(J).verdict == "pass"
    E = S.cosymplectic_bundle(c)
    assert same_span(E, eigenbundle(J, +1)).passed
    assert integrability_check(E).verdict == "fail"
    exact = S.cosymplectic_bundle(S.CosymplecticPair(d_form(eta0), eta0))
    assert integrability_check(exact).verdict == "pass"
    assert same_span(conjugate(E), eigenbundle(J, -1)).passed
    assert direct_sum_check(E).passed


def _sympy_positive_definite(gram, point):
    """Independent oracle: sympy eigenvalues of the Gram matrix at a rational point."""
    subs = dict(zip(sympy.symbols("x y z"), [sympy.Rational(p.numerator, p.denominator) for p in point]))
    M = sympy.Matrix([[sympy.sympify(str(e).replace("^", "**")).subs(subs) for e in row] for row in gram])
    return all(ev > 0 for ev in M.eigenvals())


def test_gen_sasakian_against_independent_oracle():
    c = S.CosymplecticPair(wedge(dy, dx), -dz)
    a = almost({"x": -py, "y": px}, pz, dz)
    J1, J2 = S.endo_from_cosymplectic(c), S.endo_from_almost_contact(a)
    pts = S.sample_points(C, 3, random.Random(7))
    cert = S.gen_sasakian_check(J1, J2, pts)
    assert cert.verdict == "pass"
    gram = cert.details["gram"]
    assert all(_sympy_positive_definite(gram, p) for p in pts)
    cert = S.gen_sasakian_check(J1, J1, pts)
    assert cert.verdict == "fail"
    assert not any(_sympy_positive_definite(cert.details["gram"], p) for p in pts)
    assert "+i eigenbundle of J2: integrable (advisory)" in S.gen_sasakian_check(J1, J2, pts).certificate


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False))
def test_leading_minors_match_sympy(rng):
    n = rng.randint(1, 4)
    A = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
    M = [[sum(A[k][i] * A[k][j] for k in range(n)) + (Fraction(rng.randint(-1, 2)) if i == j else 0)
          for j in range(n)] for i in range(n)]
    ok, _ = S._leading_minors_positive(M)
    sm = sympy.Matrix(n, n, lambda i, j: sympy.Rational(M[i][j].numerator, M[i][j].denominator))
    assert ok == sm.is_positive_definite
