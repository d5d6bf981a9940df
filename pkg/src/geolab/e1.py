"""The algebroid E1(M) = (TM x R) + (T*M x R) on a chart.

Sections are quadruples (X, f) + (alpha, g).  The fiber frame used for
matrices is (d/dx_1 .. d/dx_n, 1; dx_1 .. dx_n, 1), so a section has
2(n+1) components laid out as [X, f, alpha, g].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .certificate import Certificate, determinant_lines
from .errors import (BadInput, ChartMismatch, DegreeError, NotAlmostComplex,
                     NotComplex)
from .extcalc import (DiffForm, MultiVector, as_form, d_form, interior,
                      lie_bracket)
from .symcore import Chart, Scalar


class E1Section:
    __slots__ = ("X", "f", "alpha", "g")

    def __init__(self, X: MultiVector, f: Scalar, alpha: DiffForm, g: Scalar):
        chart = X.chart
        if X.degree != 1 or alpha.degree != 1:
            raise DegreeError("a section needs a vector field and a 1-form")
        if any(o.chart != chart for o in (f, alpha, g)):
            raise ChartMismatch("section components live on different charts")
        self.X, self.f, self.alpha, self.g = X, f, alpha, g

    @property
    def chart(self) -> Chart:
        return self.X.chart

    @classmethod
    def zero(cls, chart: Chart) -> "E1Section":
        z = chart.zero()
        return cls(MultiVector(chart, 1), z, DiffForm(chart, 1), z)

    @classmethod
    def make(cls, chart: Chart, X=None, f=0, alpha=None, g=0) -> "E1Section":
        return cls(X if X is not None else MultiVector(chart, 1), Scalar.const(chart, f),
                   alpha if alpha is not None else DiffForm(chart, 1), Scalar.const(chart, g))

    @classmethod
    def from_components(cls, chart: Chart, comps: Sequence[Scalar]) -> "E1Section":
        n = chart.dim
        if len(comps) != 2 * (n + 1):
            raise ValueError(f"expected {2 * (n + 1)} components, got {len(comps)}")
        return cls(MultiVector.from_components(chart, comps[:n]), comps[n],
                   DiffForm.from_components(chart, comps[n + 1:2 * n + 1]), comps[2 * n + 1])

    def components(self) -> list[Scalar]:
        return self.X.components() + [self.f] + self.alpha.components() + [self.g]

    def anchor_part(self) -> list[Scalar]:
        return self.X.components() + [self.f]

    def form_part(self) -> list[Scalar]:
        return self.alpha.components() + [self.g]

    def __add__(self, other: "E1Section") -> "E1Section":
        return E1Section(self.X + other.X, self.f + other.f, self.alpha + other.alpha, self.g + other.g)

    def __neg__(self):
        return E1Section(-self.X, -self.f, -self.alpha, -self.g)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        s = Scalar.const(self.chart, s)
        return E1Section(self.X * s, self.f * s, self.alpha * s, self.g * s)

    __rmul__ = __mul__

    def conjugate(self) -> "E1Section":
        return E1Section(self.X.conjugate(), self.f.conjugate(), self.alpha.conjugate(), self.g.conjugate())

    def is_zero(self) -> bool:
        return not (self.X or self.f or self.alpha or self.g)

    def __eq__(self, other):
        if not isinstance(other, E1Section):
            return NotImplemented
        return (self.X == other.X and self.f == other.f
                and self.alpha == other.alpha and self.g == other.g)

    def __hash__(self):
        return hash((self.X, self.f, self.alpha, self.g))

    def __str__(self):
        def vec(v):
            return "0" if not v else str(v)
        return f"({vec(self.X)}, {self.f}) + ({vec(self.alpha)}, {self.g})"

    __repr__ = __str__


def slot_names(chart: Chart) -> list[str]:
    """Human-readable labels of the 2(n+1) fiber components."""
    return ([f"@{c}" for c in chart.coords] + ["f"]
            + [f"d({c})" for c in chart.coords] + ["g"])


# -- pairing -----------------------------------------------------------------

def pairing(e1: E1Section, e2: E1Section) -> Scalar:
    """<e1, e2> = 1/2 (i_X2 alpha1 + i_X1 alpha2 + f1 g2 + f2 g1)."""
    if e1.chart != e2.chart:
        raise ChartMismatch("sections on different charts")
    total = (interior(e2.X, e1.alpha).scalar() + interior(e1.X, e2.alpha).scalar()
             + e1.f * e2.g + e2.f * e1.g)
    return total / 2


def pairing_matrix(chart: Chart) -> linalg.Matrix:
    """Gram matrix of the pairing on the standard fiber frame."""
    n = chart.dim + 1
    half = chart.const(1) / 2
    m = linalg.zeros(chart, 2 * n, 2 * n)
    for k in range(n):
        m[k][n + k] = half
        m[n + k][k] = half
    return m


# -- tilde calculus ------------------------------------------------------------

@dataclass(frozen=True)
class FormPair:
    """(alpha, beta) in Omega^k x Omega^(k-1); beta is None when k = 0."""

    k: int
    alpha: DiffForm
    beta: DiffForm | None = None

    def __post_init__(self):
        alpha = as_form(self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if alpha.degree != self.k:
            raise DegreeError(f"alpha has degree {alpha.degree}, expected {self.k}")
        if self.k == 0:
            if self.beta is not None and self.beta:
                raise DegreeError("a degree-0 pair has no second component")
            object.__setattr__(self, "beta", None)
        else:
            beta = as_form(self.beta) if self.beta is not None else DiffForm(alpha.chart, self.k - 1)
            if beta.degree != self.k - 1:
                raise DegreeError(f"beta has degree {beta.degree}, expected {self.k - 1}")
            object.__setattr__(self, "beta", beta)

    @property
    def chart(self) -> Chart:
        return self.alpha.chart

    @classmethod
    def zero(cls, chart: Chart, k: int) -> "FormPair":
        return cls(k, DiffForm(chart, k), DiffForm(chart, k - 1) if k else None)

    def __add__(self, other: "FormPair") -> "FormPair":
        if other.k != self.k:
            raise DegreeError("cannot add pairs of different degree")
        beta = None if self.k == 0 else self.beta + other.beta
        return FormPair(self.k, self.alpha + other.alpha, beta)

    def __neg__(self):
        return FormPair(self.k, -self.alpha, None if self.k == 0 else -self.beta)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.alpha and (self.beta is None or not self.beta)

    def __str__(self):
        if self.k == 0:
            return f"({self.alpha.scalar()}, -)"
        return f"({self.alpha}, {self.beta})"


def tilde_d(p: FormPair) -> FormPair:
    """d~(alpha, beta) = (d alpha, (-1)^k alpha + d beta); d~h = (dh, h) for k = 0."""
    if p.k == 0:
        return FormPair(1, d_form(p.alpha), p.alpha)
    second = d_form(p.beta)
    second = second - p.alpha if p.k % 2 else second + p.alpha
    return FormPair(p.k + 1, d_form(p.alpha), second)


def tilde_i(X: MultiVector, f: Scalar, p: FormPair) -> FormPair:
    """i_(X,f)(alpha, beta) = (i_X alpha + (-1)^(k+1) f beta, i_X beta)."""
    if p.k == 0:
        raise DegreeError("contraction of a degree-0 pair is undefined")
    first = interior(X, p.alpha)
    fb = p.beta * f
    first = first + fb if (p.k + 1) % 2 == 0 else first - fb
    if p.k == 1:
        return FormPair(0, first)
    return FormPair(p.k - 1, first, interior(X, p.beta))


def tilde_lie(X: MultiVector, f: Scalar, p: FormPair) -> FormPair:
    """L~_(X,f) = i_(X,f) d~ + d~ i_(X,f)."""
    out = tilde_i(X, f, tilde_d(p))
    if p.k > 0:
        out = out + tilde_d(tilde_i(X, f, p))
    return out


def dorfman(e1: E1Section, e2: E1Section) -> E1Section:
    """Extended Courant bracket of two sections (non-skew, Dorfman type)."""
    if e1.chart != e2.chart:
        raise ChartMismatch("sections on different charts")
    X = lie_bracket(e1.X, e2.X)
    f = e1.X.apply(e2.f) - e2.X.apply(e1.f)
    p2 = FormPair(1, e2.alpha, e2.g)
    p1 = FormPair(1, e1.alpha, e1.g)
    form = tilde_lie(e1.X, e1.f, p2) - tilde_i(e2.X, e2.f, tilde_d(p1))
    return E1Section(X, f, form.alpha, form.beta.scalar())


# -- sub-bundles -------------------------------------------------------------

class SubBundle:
    """Span of finitely many sections over the (complex) fraction field."""

    def __init__(self, generators: Sequence[E1Section], complexified: bool = False):
        gens = list(generators)
        if not gens:
            raise BadInput("a sub-bundle needs at least one generator")
        chart = gens[0].chart
        if any(g.chart != chart for g in gens):
            raise ChartMismatch("generators live on different charts")
        self.generators = gens
        self.complexified = complexified
        self._echelon = None
        self._cert = None

    @property
    def chart(self) -> Chart:
        return self.generators[0].chart

    def matrix(self) -> linalg.Matrix:
        return [g.components() for g in self.generators]

    def echelon(self) -> linalg.Echelon:
        if self._echelon is None:
            self._echelon = linalg.echelon(self.matrix(), self.chart)
        return self._echelon

    def rank_certificate(self) -> linalg.RankCertificate:
        if self._cert is None:
            self._cert = linalg.rank_certificate(self.matrix(), self.chart)
        return self._cert

    @property
    def rank(self) -> int:
        return self.echelon().rank

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __eq__(self, other):
        if not isinstance(other, SubBundle):
            return NotImplemented
        return self.generators == other.generators and self.complexified == other.complexified

    def __hash__(self):
        return hash((tuple(self.generators), self.complexified))

    def __repr__(self):
        kind = "complex " if self.complexified else ""
        return f"SubBundle({kind}{'; '.join(map(str, self.generators))})"


@dataclass
class Membership:
    member: bool
    coefficients: list[Scalar] | None = None
    slot: int | None = None
    residual: Scalar | None = None
    residual_section: E1Section | None = None
    slot_name: str = ""

    def __bool__(self):
        return self.member


def span_membership(L: SubBundle, e: E1Section) -> Membership:
    """Decide e in span(L); coefficients on success, residual witness otherwise."""
    chart = L.chart
    red = linalg.reduce_against(L.echelon(), e.components(), chart, len(L.generators))
    if red.member:
        return Membership(True, red.coefficients)
    slot = next(k for k, v in enumerate(red.residual) if v)
    return Membership(False, None, slot, red.residual[slot],
                      E1Section.from_components(chart, red.residual), slot_names(chart)[slot])


def same_span(L1: SubBundle, L2: SubBundle) -> Certificate:
    """Mutual span membership of all generators."""
    wit = []
    for name, A, B in (("first in second", L1, L2), ("second in first", L2, L1)):
        for k, g in enumerate(A.generators):
            m = span_membership(B, g)
            if not m:
                wit.append(f"{name}: generator {k} leaves a residual {m.residual} in slot {m.slot_name}")
    return Certificate("same_span", "fail" if wit else "pass", wit,
                       [f"rank {L1.rank} / {L2.rank}"])


def maximal_rank(chart: Chart) -> int:
    return chart.dim + 1


def isotropy_check(L: SubBundle) -> Certificate:
    wit = []
    gens = L.generators
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            p = pairing(gens[i], gens[j])
            if p:
                wit.append(f"<g{i}, g{j}> = {p}")
    isotropic = not wit
    cert = L.rank_certificate()
    target = maximal_rank(L.chart)
    lines = [f"rank {cert.rank} (maximal {target})"]
    if cert.rank != target:
        wit.append(f"rank defect {target - cert.rank}")
    verdict = "pass" if isotropic and cert.rank == target else "fail"
    return Certificate("isotropy", verdict, wit, lines,
                       details={"isotropic": isotropic, "rank": cert.rank, "maximal": cert.rank == target})


def integrability_check(L: SubBundle) -> Certificate:
    """Closure of the generator set under the extended Courant bracket."""
    iso = isotropy_check(L)
    gens = L.generators
    wit = []
    failures = []
    for i, a in enumerate(gens):
        for j, b in enumerate(gens):
            br = dorfman(a, b)
            m = span_membership(L, br)
            if not m:
                failures.append((i, j, m))
                wit.append(f"[g{i}, g{j}] leaves residual {m.residual} in slot {m.slot_name}")
    lines = [f"{len(gens) ** 2} generator brackets checked"]
    if not iso.passed:
        lines.append("advisory: sub-bundle is not maximally isotropic")
    verdict = "fail" if failures else "pass"
    return Certificate("integrability", verdict, wit, lines,
                       details={"failures": failures, "advisory": not iso.passed})


def conjugate(L: SubBundle) -> SubBundle:
    if not L.complexified:
        raise NotComplex("conjugation needs a complexified sub-bundle")
    return SubBundle([g.conjugate() for g in L.generators], complexified=True)


def direct_sum_check(E: SubBundle) -> Certificate:
    """E1 (x) C = E + conj(E)."""
    if not E.complexified:
        raise NotComplex("direct-sum check needs a complexified sub-bundle")
    chart = E.chart
    n1 = maximal_rank(chart)
    rank_e = E.rank
    both = E.matrix() + conjugate(E).matrix()
    cert = linalg.rank_certificate(both, chart)
    wit = []
    if rank_e != n1:
        wit.append(f"rank(E) = {rank_e}, expected {n1}")
    if cert.rank != 2 * n1:
        wit.append(f"rank(E + conj E) = {cert.rank}, defect {2 * n1 - cert.rank}")
    if wit:
        return Certificate("direct_sum", "fail", wit, [f"rank {cert.rank}"],
                           details={"rank": cert.rank})
    verdict, lines = determinant_lines(cert.minor)
    return Certificate("direct_sum", verdict, [], lines,
                       details={"rank": cert.rank, "determinant": cert.minor})


# -- endomorphisms -------------------------------------------------------------

class EndoJ:
    """Endomorphism of the E1 fiber as a block matrix [[A, B], [C, D]].

    A: TMxR -> TMxR, B: T*MxR -> TMxR, C: TMxR -> T*MxR, D: T*MxR -> T*MxR.
    """

    def __init__(self, chart: Chart, matrix: linalg.Matrix):
        n = 2 * (chart.dim + 1)
        if len(matrix) != n or any(len(r) != n for r in matrix):
            raise ValueError(f"EndoJ needs a {n}x{n} matrix")
        self.chart = chart
        self.matrix = [[Scalar.const(chart, x) for x in row] for row in matrix]

    @classmethod
    def from_blocks(cls, chart: Chart, A, B, C, D) -> "EndoJ":
        top = [ra + rb for ra, rb in zip(A, B)]
        bottom = [rc + rd for rc, rd in zip(C, D)]
        return cls(chart, top + bottom)

    def _block(self, r, c):
        n = self.chart.dim + 1
        return [row[c * n:(c + 1) * n] for row in self.matrix[r * n:(r + 1) * n]]

    A = property(lambda self: self._block(0, 0))
    B = property(lambda self: self._block(0, 1))
    C = property(lambda self: self._block(1, 0))
    D = property(lambda self: self._block(1, 1))

    def __call__(self, e: E1Section) -> E1Section:
        return E1Section.from_components(self.chart, linalg.matvec(self.matrix, e.components()))

    def __matmul__(self, other: "EndoJ") -> "EndoJ":
        return EndoJ(self.chart, linalg.matmul(self.matrix, other.matrix))

    def __neg__(self):
        return EndoJ(self.chart, linalg.scale(self.matrix, -1))

    def __eq__(self, other):
        if not isinstance(other, EndoJ):
            return NotImplemented
        return self.chart == other.chart and self.matrix == other.matrix

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.matrix))

    def __repr__(self):
        return "EndoJ(" + "; ".join(", ".join(map(str, r)) for r in self.matrix) + ")"


def endo_check(J: EndoJ) -> Certificate:
    chart = J.chart
    N = len(J.matrix)
    P = pairing_matrix(chart)
    wit = []
    sq = linalg.add(linalg.matmul(J.matrix, J.matrix), linalg.identity(chart, N))
    square_ok = linalg.is_zero(sq)
    if not square_ok:
        r, c = next((r, c) for r in range(N) for c in range(N) if sq[r][c])
        wit.append(f"J^2 + id has entry ({r},{c}) = {sq[r][c]}")
    Jt = linalg.transpose(J.matrix)
    orth = linalg.add(linalg.matmul(linalg.matmul(Jt, P), J.matrix), linalg.scale(P, -1))
    orth_ok = linalg.is_zero(orth)
    skew = linalg.add(linalg.matmul(P, J.matrix), linalg.matmul(Jt, P))
    skew_ok = linalg.is_zero(skew)
    if not orth_ok:
        wit.append("<Je_a, Je_b> != <e_a, e_b> on the frame")
    if not skew_ok:
        wit.append("J* != -J")
    verdict = "pass" if square_ok and orth_ok and skew_ok else "fail"
    if square_ok and orth_ok != skew_ok:
        raise AssertionError("orthogonality and skewness disagree although J^2 = -id")
    return Certificate("endo", verdict, wit, [],
                       details={"square": square_ok, "orthogonal": orth_ok, "skew": skew_ok})


def _i(chart: Chart) -> Scalar:
    from sympy.polys.domains import QQ_I
    return Scalar.const(chart, QQ_I(0, 1))


def eigenbundle(J: EndoJ, sign: int = +1, *, checked: bool = False) -> SubBundle:
    """ker(J - sign*i*id) over the complex fraction field."""
    if not checked and not endo_check(J).passed:
        raise NotAlmostComplex("endomorphism fails J^2 = -id or orthogonality")
    chart = J.chart
    N = len(J.matrix)
    lam = _i(chart) if sign > 0 else -_i(chart)
    shifted = [[x - lam if r == c else x for c, x in enumerate(row)] for r, row in enumerate(J.matrix)]
    basis = linalg.nullspace(shifted, chart, N)
    return SubBundle([E1Section.from_components(chart, v) for v in basis], complexified=True)


def annihilator(F: Sequence[E1Section]) -> SubBundle:
    """Sections (0,0)+(alpha,g) killing every element of F (which lies in TMxR)."""
    F = list(F)
    if not F:
        raise BadInput("empty generator list")
    chart = F[0].chart
    n1 = chart.dim + 1
    for e in F:
        if e.alpha or e.g:
            raise BadInput(f"generator {e} has a nonzero form part")
    rows = [e.anchor_part() for e in F]
    basis = linalg.nullspace(rows, chart, n1)
    z = [chart.zero()] * n1
    return SubBundle([E1Section.from_components(chart, z + v) for v in basis] or
                     [E1Section.zero(chart)], complexified=True)
