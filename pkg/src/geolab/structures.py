"""Contact, Jacobi, cosymplectic and almost contact structures as E1 objects.

Every checker returns a :class:`~geolab.certificate.Certificate`.  Tensor
identities are verified on coordinate frame pairs; each expression involved
is C-infinity-linear in its arguments, so the frame suffices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .certificate import FAIL, GENERIC, PASS, Certificate, determinant_lines
from .e1 import (E1Section, EndoJ, SubBundle, annihilator, eigenbundle, endo_check,
                 integrability_check,
                 maximal_rank, span_membership)
from .errors import (EvenDimension, NotAlmostComplex, NotAlmostContact,
                     PoleAtPoint, SingularFlat, SingularMatrix, SingularTheta)
from .extcalc import (DiffForm, MultiVector, Tensor11, contract_covector,
                      d_form, interior, lie_bracket, nijenhuis, pair, schouten,
                      wedge, wedge_power)
from .symcore import Chart, Scalar


def _half_dim(chart: Chart) -> int:
    if chart.dim % 2 == 0:
        raise EvenDimension(f"chart dimension {chart.dim} is even")
    return (chart.dim - 1) // 2


def _frame(chart: Chart) -> list[MultiVector]:
    return [MultiVector.basis(chart, k) for k in range(chart.dim)]


def _coframe(chart: Chart) -> list[DiffForm]:
    return [DiffForm.basis(chart, k) for k in range(chart.dim)]


def _top(form: DiffForm) -> Scalar:
    return form[tuple(range(form.chart.dim))]


def _volume_check(name: str, top: DiffForm) -> Certificate:
    c = _top(top)
    verdict, lines = determinant_lines(c, "top coefficient")
    wit = [] if verdict != FAIL else ["top form vanishes identically"]
    return Certificate(name, verdict, wit, lines, details={"coefficient": c})


# -- contact forms -------------------------------------------------------------

def contact_check(eta: DiffForm) -> Certificate:
    """eta ^ (d eta)^n on a (2n+1)-dimensional chart."""
    n = _half_dim(eta.chart)
    return _volume_check("contact", wedge(eta, wedge_power(d_form(eta), n)))


def flat_matrix(omega: DiffForm, eta: DiffForm) -> linalg.Matrix:
    """Matrix of X -> i_X omega + eta(X) eta; column j is the image of d/dx_j."""
    chart = eta.chart
    cols = []
    for X in _frame(chart):
        img = interior(X, omega) + eta * pair(eta, X)
        cols.append(img.components())
    return linalg.transpose(cols)


def flat_eta(eta: DiffForm, X: MultiVector) -> DiffForm:
    return interior(X, d_form(eta)) + eta * pair(eta, X)


def _flat_inverse(omega: DiffForm, eta: DiffForm, alpha: DiffForm, err) -> MultiVector:
    chart = eta.chart
    m = flat_matrix(omega, eta)
    try:
        inv = linalg.inverse(m, chart)
    except SingularMatrix:
        det = linalg.det(m, chart)
        raise err(f"flat map is singular (determinant {det})") from None
    return MultiVector.from_components(chart, linalg.matvec(inv, alpha.components()))


def flat_eta_inv(eta: DiffForm, alpha: DiffForm) -> MultiVector:
    return _flat_inverse(d_form(eta), eta, alpha, SingularFlat)


def reeb(eta: DiffForm) -> MultiVector:
    """Reeb field: i_xi d eta = 0 and eta(xi) = 1."""
    xi = flat_eta_inv(eta, eta)
    if interior(xi, d_form(eta)) or pair(eta, xi) != 1:
        raise AssertionError("Reeb field fails its defining equations")
    return xi


# -- Jacobi pairs --------------------------------------------------------------

@dataclass(frozen=True)
class JacobiPair:
    pi: MultiVector
    E: MultiVector

    def __post_init__(self):
        if self.pi.degree != 2 or self.E.degree != 1:
            raise ValueError("a Jacobi pair is (bivector, vector field)")
        if self.pi.chart != self.E.chart:
            raise ValueError("pi and E live on different charts")

    @property
    def chart(self) -> Chart:
        return self.pi.chart


def sharp_pi_E(j: JacobiPair, alpha: DiffForm, g) -> tuple[MultiVector, Scalar]:
    """(pi, E)^#(alpha, g) = (pi^#(alpha) + g E, -i_E alpha)."""
    g = Scalar.const(j.chart, g)
    return contract_covector(alpha, j.pi) + j.E * g, -pair(alpha, j.E)


def jacobi_check(j: JacobiPair) -> Certificate:
    """[E, pi] = 0 and [pi, pi] = 2 E ^ pi."""
    r1 = schouten(j.E, j.pi)
    r2 = schouten(j.pi, j.pi) - wedge(j.E, j.pi) * 2
    wit = []
    if r1:
        wit.append(f"[E, pi] = {r1}")
    if r2:
        wit.append(f"[pi, pi] - 2 E^pi = {r2}")
    return Certificate("jacobi", FAIL if wit else PASS, wit, [])


def _inverse_sharp_matrix(eta: DiffForm) -> linalg.Matrix:
    """Matrix of (X, f) -> (-i_X d eta - f eta, eta(X))."""
    chart = eta.chart
    deta = d_form(eta)
    cols = []
    for X in _frame(chart):
        cols.append((-interior(X, deta)).components() + [pair(eta, X)])
    cols.append((-eta).components() + [chart.zero()])
    return linalg.transpose(cols)


def jacobi_from_contact(eta: DiffForm) -> JacobiPair:
    """Jacobi pair of a contact form, solved from the inverse of (pi, E)^#."""
    chart = eta.chart
    n = chart.dim
    try:
        S = linalg.inverse(_inverse_sharp_matrix(eta), chart)
    except SingularMatrix:
        raise SingularFlat("(pi, E)^# is not invertible: eta is not contact") from None
    # column i of S is (pi, E)^#(dx_i, 0) = (pi^#(dx_i), -E^i); last column is (E, 0)
    table = {}
    for i in range(n):
        for k in range(i + 1, n):
            table[(i, k)] = S[k][i]
    pi = MultiVector(chart, 2, table)
    E = MultiVector.from_components(chart, [S[k][n] for k in range(n)])
    if any(S[k][i] != -S[i][k] for i in range(n) for k in range(n)):
        raise AssertionError("solved (pi, E)^# is not skew on the cotangent block")
    if any(S[n][i] != -E[(i,)] for i in range(n)) or S[n][n]:
        raise AssertionError("solved (pi, E)^# has an inconsistent function row")
    # cross-check against pi(a, b) = d eta(flat^-1 a, flat^-1 b)
    deta = d_form(eta)
    pre = [flat_eta_inv(eta, a) for a in _coframe(chart)]
    for i in range(n):
        for k in range(i + 1, n):
            if deta.evaluate(pre[i], pre[k]) != table.get((i, k), chart.zero()):
                raise AssertionError("pi from the inverse identity disagrees with d eta(flat^-1, flat^-1)")
    if E != flat_eta_inv(eta, eta):
        raise AssertionError("E differs from flat^-1(eta)")
    return JacobiPair(pi, E)


def graph_jacobi(j: JacobiPair) -> SubBundle:
    """L_(pi,E): sections (pi,E)^#(alpha, g) + (alpha, g)."""
    chart = j.chart
    gens = []
    for a in _coframe(chart):
        X, f = sharp_pi_E(j, a, 0)
        gens.append(E1Section(X, f, a, chart.zero()))
    X, f = sharp_pi_E(j, DiffForm(chart, 1), 1)
    gens.append(E1Section(X, f, DiffForm(chart, 1), chart.one()))
    return SubBundle(gens)


def graph_omega_eta(omega: DiffForm, eta: DiffForm) -> SubBundle:
    """L_(omega,eta): sections (X, f) + (i_X omega + f eta, -i_X eta)."""
    chart = eta.chart
    gens = [E1Section(X, chart.zero(), interior(X, omega), -pair(eta, X)) for X in _frame(chart)]
    gens.append(E1Section(MultiVector(chart, 1), chart.one(), eta, chart.zero()))
    return SubBundle(gens)


def graph_form(eta: DiffForm) -> SubBundle:
    """L_eta = L_(d eta, eta)."""
    return graph_omega_eta(d_form(eta), eta)


def transversality_check(L: SubBundle) -> Certificate:
    """L meets neither (TMxR) + 0 nor 0 + (T*MxR)."""
    chart = L.chart
    target = maximal_rank(chart)
    verdicts, lines, wit = [], [], []
    details = {}
    for label, part in (("L /\\ (TMxR) = 0", E1Section.form_part),
                        ("L /\\ (T*MxR) = 0", E1Section.anchor_part)):
        rows = [part(g) for g in L.generators]
        cert = linalg.rank_certificate(rows, chart)
        if cert.rank < target:
            verdicts.append(FAIL)
            wit.append(f"{label}: block rank {cert.rank} < {target}")
            details[label] = FAIL
            continue
        v, ls = determinant_lines(cert.minor, "block determinant")
        verdicts.append(v)
        details[label] = v
        lines += [f"{label}: {x}" for x in ls]
    from .certificate import combine
    return Certificate("transversality", combine(verdicts), wit, lines, details=details)


def _recover_eta(L: SubBundle) -> DiffForm | None:
    """alpha part of the element of L lying over (0, 1), if unique."""
    chart = L.chart
    n = chart.dim
    rows = [g.anchor_part() for g in L.generators]
    target = [chart.zero()] * n + [chart.one()]
    sub = SubBundle([E1Section.from_components(chart, r + [chart.zero()] * (n + 1)) for r in rows])
    m = span_membership(sub, E1Section.from_components(chart, target + [chart.zero()] * (n + 1)))
    if not m:
        return None
    elem = E1Section.zero(chart)
    for c, g in zip(m.coefficients, L.generators):
        if c:
            elem = elem + g * c
    return elem.alpha


def kernel_line(L: SubBundle, eta: DiffForm | None = None) -> Certificate:
    """L /\\ ((TM x 0) + (0 x R)) must be a line spanned by (xi,0)+(0,-1)."""
    chart = L.chart
    n = chart.dim
    gens = L.generators
    # columns f, alpha must vanish
    rows = [[g.f] + g.alpha.components() for g in gens]
    combos = linalg.left_nullspace(rows, chart)
    elems = []
    for c in combos:
        e = E1Section.zero(chart)
        for coef, g in zip(c, gens):
            if coef:
                e = e + g * coef
        elems.append(e)
    cert = linalg.rank_certificate([e.components() for e in elems], chart, 2 * (n + 1)) if elems else None
    r = cert.rank if cert else 0
    if r != 1:
        return Certificate("kernel_line", FAIL, [f"intersection has rank {r}, expected 1"],
                           [], details={"rank": r})
    e = next(e for e in elems if not e.is_zero())
    if not e.g:
        return Certificate("kernel_line", FAIL, ["generator has g = 0; cannot normalize to (xi,0)+(0,-1)"],
                           [f"generator {e}"], details={"rank": 1})
    e = e * (-e.g.inverse())
    xi = e.X
    if eta is None:
        eta = _recover_eta(L)
    wit = []
    if eta is not None and pair(eta, xi) != 1:
        wit.append(f"eta(xi) = {pair(eta, xi)} != 1")
    lines = [f"generator {e}"]
    return Certificate("kernel_line", FAIL if wit else PASS, wit, lines,
                       details={"rank": 1, "xi": xi, "generator": e})


# -- almost contact structures -------------------------------------------------

class AlmostContact:
    """Triple (phi, xi, eta).  ``validate`` checks the axioms at construction."""

    def __init__(self, phi: Tensor11, xi: MultiVector, eta: DiffForm, *, validate: bool = True):
        self.phi, self.xi, self.eta = phi, xi, eta
        if validate and not almost_contact_check(self).passed:
            raise NotAlmostContact("eta(xi) = 1 or phi^2 = -id + eta (x) xi fails")

    @property
    def chart(self) -> Chart:
        return self.eta.chart

    def __eq__(self, other):
        if not isinstance(other, AlmostContact):
            return NotImplemented
        return (self.phi, self.xi, self.eta) == (other.phi, other.xi, other.eta)

    def __hash__(self):
        return hash((self.phi, self.xi, self.eta))


def almost_contact_check(a: AlmostContact) -> Certificate:
    chart = a.chart
    wit = []
    exi = pair(a.eta, a.xi)
    if exi != 1:
        wit.append(f"eta(xi) = {exi}")
    for X, name in zip(_frame(chart), chart.coords):
        res = a.phi(a.phi(X)) + X - a.xi * pair(a.eta, X)
        if res:
            wit.append(f"phi^2(@{name}) + @{name} - eta(@{name}) xi = {res}")
    if wit:
        return Certificate("almost_contact", FAIL, wit, [])
    # consequences of the axioms; a failure here is an engine bug
    if a.phi(a.xi) or a.phi.transpose_on(a.eta):
        raise AssertionError("phi(xi) = 0 or eta o phi = 0 fails although the axioms hold")
    return Certificate("almost_contact", PASS, [], ["phi(xi) = 0", "eta o phi = 0"])


def _require_almost_contact(a: AlmostContact):
    if not almost_contact_check(a).passed:
        raise NotAlmostContact("the triple is not an almost contact structure")


def j_matrix(a: AlmostContact) -> linalg.Matrix:
    """Matrix of J(X, f) = (phi X - f xi, eta(X)) on TM x R."""
    chart = a.chart
    n = chart.dim
    cols = []
    for k, X in enumerate(_frame(chart)):
        cols.append(a.phi.image(k).components() + [pair(a.eta, X)])
    cols.append((-a.xi).components() + [chart.zero()])
    return linalg.transpose(cols)


def endo_from_almost_contact(a: AlmostContact) -> EndoJ:
    """J(X,f) - J*(alpha,g) as a block-diagonal endomorphism."""
    _require_almost_contact(a)
    chart = a.chart
    A = j_matrix(a)
    D = linalg.scale(linalg.transpose(A), -1)
    Z = linalg.zeros(chart, chart.dim + 1, chart.dim + 1)
    return EndoJ.from_blocks(chart, A, Z, Z, D)


def _i(chart: Chart) -> Scalar:
    from sympy.polys.domains import QQ_I
    return Scalar.const(chart, QQ_I(0, 1))


def f_bundle(a: AlmostContact) -> list[E1Section]:
    """Generators J u + i u of F for u running over the frame of TM x R."""
    chart = a.chart
    A = j_matrix(a)
    i = _i(chart)
    n1 = chart.dim + 1
    z = [chart.zero()] * n1
    gens = []
    for k in range(n1):
        u = [chart.one() if r == k else chart.zero() for r in range(n1)]
        Ju = [row[k] for row in A]
        gens.append(E1Section.from_components(chart, [p + i * q for p, q in zip(Ju, u)] + z))
    # keep a basis only
    ech = linalg.echelon([g.components() for g in gens], chart)
    return [gens[k] for k in sorted(ech.pivot_rows)]


def gac_from_almost_contact(a: AlmostContact) -> tuple[EndoJ, SubBundle]:
    """Endomorphism and the bundle E = F + Ann(F)."""
    J = endo_from_almost_contact(a)
    F = f_bundle(a)
    ann = [g for g in annihilator(F).generators if not g.is_zero()]
    return J, SubBundle(F + ann, complexified=True)


def normality_check(a: AlmostContact) -> Certificate:
    """N_phi(X,Y) + d eta(X,Y) xi = 0 on all frame pairs."""
    _require_almost_contact(a)
    chart = a.chart
    deta = d_form(a.eta)
    frame = _frame(chart)
    wit = []
    failures = []
    for i in range(chart.dim):
        for j in range(i + 1, chart.dim):
            X, Y = frame[i], frame[j]
            res = nijenhuis(a.phi, X, Y) + a.xi * deta.evaluate(X, Y)
            if res:
                failures.append((i, j, res))
                wit.append(f"(@{chart.coords[i]}, @{chart.coords[j]}): {res}")
    if failures:
        return Certificate("normality", FAIL, wit, [], details={"failures": failures})
    lemma = lemma_identities(a)
    if not lemma.passed:
        raise AssertionError("normal structure violates a consequence identity: " + "; ".join(lemma.witness))
    return Certificate("normality", PASS, [], lemma.certificate, details={"lemma": lemma})


def lemma_identities(a: AlmostContact) -> Certificate:
    """d eta(X, xi) = 0, eta[phi X, xi] = 0, [phi X, xi] = phi[X, xi],
    d eta(phi X, Y) = d eta(phi Y, X), over the coordinate frame."""
    chart = a.chart
    deta = d_form(a.eta)
    frame = _frame(chart)
    xi, phi, eta = a.xi, a.phi, a.eta
    wit = []
    counts = [0, 0, 0, 0]
    for k, X in enumerate(frame):
        name = chart.coords[k]
        v = deta.evaluate(X, xi)
        if v:
            wit.append(f"d eta(@{name}, xi) = {v}")
            counts[0] += 1
        b = lie_bracket(phi(X), xi)
        v = pair(eta, b)
        if v:
            wit.append(f"eta[phi @{name}, xi] = {v}")
            counts[1] += 1
        r = b - phi(lie_bracket(X, xi))
        if r:
            wit.append(f"[phi @{name}, xi] - phi[@{name}, xi] = {r}")
            counts[2] += 1
        for m, Y in enumerate(frame):
            v = deta.evaluate(phi(X), Y) - deta.evaluate(phi(Y), X)
            if v:
                wit.append(f"d eta(phi @{name}, @{chart.coords[m]}) - d eta(phi @{chart.coords[m]}, @{name}) = {v}")
                counts[3] += 1
    names = ["d eta(X, xi) = 0", "eta[phi X, xi] = 0", "[phi X, xi] = phi[X, xi]",
             "d eta(phi X, Y) = d eta(phi Y, X)"]
    lines = [f"{n}: {'holds' if c == 0 else 'fails'}" for n, c in zip(names, counts)]
    return Certificate("lemma", FAIL if wit else PASS, wit, lines,
                       details={"identities": dict(zip(names, [c == 0 for c in counts]))})


# -- almost cosymplectic pairs -------------------------------------------------

class CosymplecticPair:
    """Pair (omega, eta) with eta ^ omega^n nowhere zero."""

    def __init__(self, omega: DiffForm, eta: DiffForm, *, validate: bool = True):
        if omega.degree != 2 or eta.degree != 1:
            raise ValueError("a cosymplectic pair is (2-form, 1-form)")
        self.omega, self.eta = omega, eta
        if validate and not cosymplectic_check(self).passed:
            raise SingularTheta("eta ^ omega^n vanishes identically")

    @property
    def chart(self) -> Chart:
        return self.eta.chart

    def __eq__(self, other):
        if not isinstance(other, CosymplecticPair):
            return NotImplemented
        return (self.omega, self.eta) == (other.omega, other.eta)

    def __hash__(self):
        return hash((self.omega, self.eta))


def cosymplectic_check(c: CosymplecticPair) -> Certificate:
    n = _half_dim(c.chart)
    cert = _volume_check("cosymplectic", wedge(c.eta, wedge_power(c.omega, n)))
    if cert.passed:
        xi = cosymplectic_reeb(c)
        cert.details["reeb"] = xi
        cert.certificate.append(f"Reeb field {xi}")
    return cert


def cosymplectic_reeb(c: CosymplecticPair) -> MultiVector:
    """xi = flat^-1(eta): i_xi omega = 0 and eta(xi) = 1."""
    xi = _flat_inverse(c.omega, c.eta, c.eta, SingularTheta)
    if interior(xi, c.omega) or pair(c.eta, xi) != 1:
        raise AssertionError("cosymplectic Reeb field fails its defining equations")
    return xi


def theta_matrix(c: CosymplecticPair) -> linalg.Matrix:
    """Matrix of Theta(X, f) = (i_X omega + f eta, -eta(X))."""
    chart = c.chart
    cols = []
    for X in _frame(chart):
        cols.append(interior(X, c.omega).components() + [-pair(c.eta, X)])
    cols.append(c.eta.components() + [chart.zero()])
    return linalg.transpose(cols)


def theta(c: CosymplecticPair, X: MultiVector, f) -> tuple[DiffForm, Scalar]:
    f = Scalar.const(c.chart, f)
    return interior(X, c.omega) + c.eta * f, -pair(c.eta, X)


def endo_from_cosymplectic(c: CosymplecticPair) -> EndoJ:
    """J((X,f)+(alpha,g)) = -Theta^-1(alpha,g) + Theta(X,f)."""
    _half_dim(c.chart)
    chart = c.chart
    T = theta_matrix(c)
    try:
        Tinv = linalg.inverse(T, chart)
    except SingularMatrix:
        raise SingularTheta("Theta is not invertible") from None
    Z = linalg.zeros(chart, chart.dim + 1, chart.dim + 1)
    return EndoJ.from_blocks(chart, Z, linalg.scale(Tinv, -1), T, Z)


def cosymplectic_bundle(c: CosymplecticPair) -> SubBundle:
    """E = {(X, f) - i Theta(X, f)} over the frame of TM x R."""
    chart = c.chart
    T = theta_matrix(c)
    i = _i(chart)
    n1 = chart.dim + 1
    gens = []
    for k in range(n1):
        u = [chart.one() if r == k else chart.zero() for r in range(n1)]
        gens.append(E1Section.from_components(chart, u + [-i * row[k] for row in T]))
    return SubBundle(gens, complexified=True)


def gac_from_cosymplectic(c: CosymplecticPair) -> tuple[EndoJ, SubBundle]:
    return endo_from_cosymplectic(c), cosymplectic_bundle(c)


# -- generalized Sasakian conditions ----------------------------------------

def _leading_minors_positive(m) -> tuple[bool, list]:
    from fractions import Fraction as F
    n = len(m)
    a = [[F(int(x.numerator), int(x.denominator)) for x in row] for row in m]
    minors = []
    # exact Gaussian elimination without pivoting: minors are products of pivots
    prod = F(1)
    for k in range(n):
        piv = a[k][k]
        prod *= piv
        minors.append(prod)
        if piv <= 0:
            return False, minors
        for r in range(k + 1, n):
            f = a[r][k] / piv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[k])]
    return True, minors


def sample_points(chart: Chart, count: int, rng) -> list[tuple[Fraction, ...]]:
    """Small random rational points drawn from ``rng`` (a random.Random)."""
    return [tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(chart.dim))
            for _ in range(count)]


def gen_sasakian_check(J1: EndoJ, J2: EndoJ, points: Sequence[Sequence],
                       limit: int | None = None) -> Certificate:
    """Commutation, symmetry of <G., .> and per-point positivity, G = -J1 J2.

    ``points`` are candidate sample points; points at poles of the Gram
    matrix are skipped, and at most ``limit`` pole-free points are used.
    """
    for J in (J1, J2):
        if not endo_check(J).passed:
            raise NotAlmostComplex("both endomorphisms must satisfy J^2 = -id and orthogonality")
    from .e1 import pairing_matrix
    chart = J1.chart
    wit, lines = [], []
    comm = linalg.add(linalg.matmul(J1.matrix, J2.matrix), linalg.scale(linalg.matmul(J2.matrix, J1.matrix), -1))
    commute = linalg.is_zero(comm)
    if not commute:
        wit.append("J1 J2 != J2 J1")
    G = linalg.scale(linalg.matmul(J1.matrix, J2.matrix), -1)
    gram = linalg.matmul(linalg.transpose(G), pairing_matrix(chart))
    symmetric = gram == linalg.transpose(gram)
    if not symmetric:
        wit.append("<G e1, e2> is not symmetric")
    per_point = []
    if commute and symmetric:
        for p in points:
            if limit is not None and len(per_point) >= limit:
                break
            try:
                vals = [[x.eval(p) for x in row] for row in gram]
            except PoleAtPoint:
                continue
            if any(v.y != 0 for row in vals for v in row):
                per_point.append((tuple(p), False))
                wit.append(f"Gram matrix is not real at {tuple(map(str, p))}")
                continue
            ok, minors = _leading_minors_positive([[v.x for v in row] for row in vals])
            per_point.append((tuple(p), ok))
            pt = "(" + ", ".join(map(str, p)) + ")"
            lines.append(f"{pt}: {'positive definite' if ok else 'not positive definite'}")
            if not ok:
                wit.append(f"leading minor {len(minors)} = {minors[-1]} at {pt}")
    constant = all(x.is_constant() for row in gram for x in row)
    # reported only; integrability does not enter the verdict
    integrable = {}
    for label, J in (("J1", J1), ("J2", J2)):
        ok = integrability_check(eigenbundle(J, +1, checked=True)).passed
        integrable[label] = ok
        lines.append(f"+i eigenbundle of {label}: {'integrable' if ok else 'not integrable'} (advisory)")
    if wit or not per_point:
        verdict = FAIL
        if not per_point and not wit:
            wit.append("no pole-free sample point")
    else:
        verdict = PASS if constant else GENERIC
    return Certificate("gen_sasakian", verdict, wit, lines,
                       details={"commute": commute, "symmetric": symmetric, "points": per_point,
                                "integrable": integrable,
                                "gram": gram})
