"""Differential forms, multivector fields and (1,1)-tensors on a chart.

Both graded kinds share one sparse layout: a map from strictly increasing
coordinate-index tuples to nonzero :class:`Scalar` coefficients.  Tables of
degree above the chart dimension are always empty.
"""
from __future__ import annotations

from typing import Iterable, Mapping

from .errors import ChartMismatch, DegreeError, KindMismatch
from .symcore import Chart, Scalar


def sort_sign(idx: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted tuple; sign 0 on repeats."""
    items = list(idx)
    if len(set(items)) != len(items):
        return 0, ()
    sign = 1
    # insertion sort counting transpositions
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(items)


class _Graded:
    __slots__ = ("chart", "degree", "coeffs")

    def __init__(self, chart: Chart, degree: int, coeffs: Mapping[tuple[int, ...], Scalar] | None = None):
        if degree < 0:
            raise DegreeError(f"negative degree {degree}")
        self.chart = chart
        self.degree = degree
        table = {}
        if coeffs and degree <= chart.dim:
            for key, value in coeffs.items():
                key = tuple(key)
                if len(key) != degree:
                    raise DegreeError(f"index {key} does not have length {degree}")
                if value:
                    sign, skey = sort_sign(key)
                    if sign == 0:
                        continue
                    if value.chart != chart:
                        raise ChartMismatch("coefficient lives on another chart")
                    if sign < 0:
                        value = -value
                    prev = table.get(skey)
                    value = value if prev is None else prev + value
                    if value:
                        table[skey] = value
                    else:
                        table.pop(skey, None)
        self.coeffs: dict[tuple[int, ...], Scalar] = table

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls, chart: Chart, degree: int):
        return cls(chart, degree)

    @classmethod
    def from_scalar(cls, s: Scalar):
        return cls(s.chart, 0, {(): s})

    @classmethod
    def basis(cls, chart: Chart, *names: str | int):
        idx = tuple(chart.index(n) if isinstance(n, str) else n for n in names)
        return cls(chart, len(idx), {idx: chart.one()})

    def _new(self, degree, coeffs):
        return type(self)(self.chart, degree, coeffs)

    # -- access -------------------------------------------------------
    def __getitem__(self, key) -> Scalar:
        if isinstance(key, int):
            key = (key,)
        sign, skey = sort_sign(key)
        if sign == 0:
            return self.chart.zero()
        value = self.coeffs.get(skey)
        if value is None:
            return self.chart.zero()
        return value if sign > 0 else -value

    def scalar(self) -> Scalar:
        """Coefficient of a degree-0 element."""
        if self.degree != 0:
            raise DegreeError(f"degree {self.degree} element is not a scalar")
        return self.coeffs.get((), self.chart.zero())

    def components(self) -> list[Scalar]:
        """Coefficients of a degree-1 element in coordinate order."""
        if self.degree != 1:
            raise DegreeError("components() is only defined in degree 1")
        return [self[(k,)] for k in range(self.chart.dim)]

    @classmethod
    def from_components(cls, chart: Chart, comps):
        return cls(chart, 1, {(k,): c for k, c in enumerate(comps)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    # -- linear structure ---------------------------------------------
    def _check(self, other):
        if type(other) is not type(self):
            raise KindMismatch(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.chart != self.chart:
            raise ChartMismatch(f"{self.chart.coords} vs {other.chart.coords}")

    def __add__(self, other):
        if isinstance(other, Scalar) and self.degree == 0:
            other = self.from_scalar(other)
        self._check(other)
        if other.degree != self.degree:
            raise DegreeError(f"cannot add degrees {self.degree} and {other.degree}")
        table = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = table[k] + v if k in table else v
            if s:
                table[k] = s
            else:
                table.pop(k, None)
        out = self._new(self.degree, {})
        out.coeffs = table
        return out

    def __neg__(self):
        out = self._new(self.degree, {})
        out.coeffs = {k: -v for k, v in self.coeffs.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        if isinstance(s, _Graded):
            raise KindMismatch("use wedge() to multiply graded elements")
        if not isinstance(s, Scalar):
            s = Scalar.const(self.chart, s)
        out = self._new(self.degree, {})
        if s:
            out.coeffs = {k: v * s for k, v in self.coeffs.items()}
        return out

    __rmul__ = __mul__

    def __truediv__(self, s):
        if not isinstance(s, Scalar):
            s = Scalar.const(self.chart, s)
        return self * s.inverse()

    def map_coeffs(self, fn):
        return self._new(self.degree, {k: fn(v) for k, v in self.coeffs.items()})

    def conjugate(self):
        return self.map_coeffs(Scalar.conjugate)

    def diff(self, coord: int):
        """Coefficientwise partial derivative."""
        return self._new(self.degree, {k: v.diff(coord) for k, v in self.coeffs.items()})

    def wedge(self, other):
        return wedge(self, other)

    # -- identity -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Scalar) and self.degree == 0:
            return self.scalar() == other
        if type(other) is not type(self):
            return NotImplemented
        return self.chart == other.chart and self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((type(self).__name__, self.chart.coords, self.degree,
                     frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def basis_text(self, key: tuple[int, ...]) -> str:
        raise NotImplementedError

    def __str__(self):
        if self.degree == 0:
            return f"({self.scalar()})"
        if not self.coeffs:
            first = self.basis_text((0,))
            return "0*" + "^".join([first] * self.degree)
        terms = [f"({v})*{self.basis_text(k)}" for k, v in sorted(self.coeffs.items())]
        return " + ".join(terms)


class DiffForm(_Graded):
    """Differential k-form with coefficients on increasing index tuples."""

    __slots__ = ()

    def basis_text(self, key):
        return "^".join(f"d({self.chart.coords[k]})" for k in key)

    def evaluate(self, *vectors: "MultiVector") -> Scalar:
        """alpha(X_1, ..., X_k) with the determinant convention."""
        if len(vectors) != self.degree:
            raise DegreeError(f"{self.degree}-form needs {self.degree} arguments")
        out = self
        for v in vectors:
            out = interior(v, out)
        return out.scalar()


class MultiVector(_Graded):
    """Multivector field (degree 1: vector field, degree 2: bivector, ...)."""

    __slots__ = ()

    def basis_text(self, key):
        return "^".join(f"@{self.chart.coords[k]}" for k in key)

    def apply(self, f: Scalar) -> Scalar:
        """Directional derivative X.f for a vector field."""
        if self.degree != 1:
            raise DegreeError("only vector fields act on functions")
        out = self.chart.zero()
        for (k,), c in self.coeffs.items():
            dk = f.diff(k)
            if dk:
                out = out + c * dk
        return out


def _same(a: _Graded, b: _Graded):
    if type(a) is not type(b):
        raise KindMismatch(f"cannot combine {type(a).__name__} with {type(b).__name__}")
    if a.chart != b.chart:
        raise ChartMismatch(f"{a.chart.coords} vs {b.chart.coords}")


def wedge(a: _Graded, b: _Graded):
    _same(a, b)
    deg = a.degree + b.degree
    table: dict[tuple[int, ...], Scalar] = {}
    if deg <= a.chart.dim:
        for ka, va in a.coeffs.items():
            for kb, vb in b.coeffs.items():
                sign, key = sort_sign(ka + kb)
                if sign == 0:
                    continue
                term = va * vb
                if sign < 0:
                    term = -term
                prev = table.get(key)
                table[key] = term if prev is None else prev + term
    out = type(a)(a.chart, deg, {})
    out.coeffs = {k: v for k, v in table.items() if v}
    return out


def wedge_power(a: _Graded, n: int):
    out = type(a).from_scalar(a.chart.one())
    for _ in range(n):
        out = wedge(out, a)
    return out


def as_form(a) -> DiffForm:
    if isinstance(a, Scalar):
        return DiffForm.from_scalar(a)
    if not isinstance(a, DiffForm):
        raise KindMismatch(f"expected a differential form, got {type(a).__name__}")
    return a


def d_form(a) -> DiffForm:
    """Exterior derivative."""
    a = as_form(a)
    table: dict[tuple[int, ...], Scalar] = {}
    for key, c in a.coeffs.items():
        for j in range(a.chart.dim):
            if j in key:
                continue
            dc = c.diff(j)
            if not dc:
                continue
            sign, skey = sort_sign((j,) + key)
            term = dc if sign > 0 else -dc
            prev = table.get(skey)
            table[skey] = term if prev is None else prev + term
    out = DiffForm(a.chart, a.degree + 1, {})
    if a.degree + 1 <= a.chart.dim:
        out.coeffs = {k: v for k, v in table.items() if v}
    return out


def _contract(v: _Graded, a: _Graded, out_cls):
    """Insert the degree-1 element ``v`` into the first slot of ``a``."""
    if a.degree == 0:
        raise DegreeError("cannot contract into a degree-0 element")
    if v.chart != a.chart:
        raise ChartMismatch(f"{v.chart.coords} vs {a.chart.coords}")
    table: dict[tuple[int, ...], Scalar] = {}
    for key, c in a.coeffs.items():
        for pos, idx in enumerate(key):
            vi = v.coeffs.get((idx,))
            if vi is None:
                continue
            rest = key[:pos] + key[pos + 1:]
            term = vi * c
            if pos % 2:
                term = -term
            prev = table.get(rest)
            table[rest] = term if prev is None else prev + term
    out = out_cls(a.chart, a.degree - 1, {})
    out.coeffs = {k: t for k, t in table.items() if t}
    return out


def interior(X: MultiVector, a: DiffForm) -> DiffForm:
    """Contraction i_X a of a vector field into a form."""
    if not isinstance(X, MultiVector) or X.degree != 1:
        raise DegreeError("interior product needs a vector field")
    a = as_form(a)
    return _contract(X, a, DiffForm)


def contract_covector(alpha: DiffForm, P: MultiVector) -> MultiVector:
    """i_alpha P: insert a 1-form into the first slot of a multivector."""
    if not isinstance(alpha, DiffForm) or alpha.degree != 1:
        raise DegreeError("covector contraction needs a 1-form")
    return _contract(alpha, P, MultiVector)


def pair(alpha: DiffForm, X: MultiVector) -> Scalar:
    """alpha(X) for a 1-form and a vector field."""
    return interior(X, alpha).scalar()


def lie_bracket(X: MultiVector, Y: MultiVector) -> MultiVector:
    if X.degree != 1 or Y.degree != 1:
        raise DegreeError("Lie bracket needs two vector fields")
    _same(X, Y)
    comps = []
    for j in range(X.chart.dim):
        comps.append(X.apply(Y[(j,)]) - Y.apply(X[(j,)]))
    return MultiVector.from_components(X.chart, comps)


def lie_derivative(X: MultiVector, a) -> DiffForm:
    """Cartan formula L_X a = i_X da + d i_X a."""
    a = as_form(a)
    out = interior(X, d_form(a))
    if a.degree > 0:
        out = out + d_form(interior(X, a))
    return out


def _theta_derivative(P: MultiVector, k: int, side: str) -> MultiVector:
    """Odd derivative d/d(theta_k) acting from the right or the left."""
    table = {}
    deg = P.degree
    for key, c in P.coeffs.items():
        if k not in key:
            continue
        pos = key.index(k)
        rest = key[:pos] + key[pos + 1:]
        moves = (deg - 1 - pos) if side == "right" else pos
        table[rest] = -c if moves % 2 else c
    return MultiVector(P.chart, max(deg - 1, 0), table) if deg else MultiVector(P.chart, 0)


def schouten(P: MultiVector, Q: MultiVector) -> MultiVector:
    """Schouten-Nijenhuis bracket.

    Coordinate form on superfunctions (theta_k standing for the coordinate
    vector fields), rescaled by (-1)^((p-1)(q-1)) so that the Jacobi
    condition reads [pi, pi] = 2 E ^ pi.  Degree 0 elements are functions:
    [X, f] = X.f and [f, X] = -X.f.
    """
    _same(P, Q)
    p, q = P.degree, Q.degree
    deg = p + q - 1
    if deg < 0:
        return MultiVector(P.chart, 0)
    out = MultiVector(P.chart, deg)
    for k in range(P.chart.dim):
        if p:
            rp = _theta_derivative(P, k, "right")
            dq = Q.diff(k)
            if rp and dq:
                out = out + wedge(rp, dq)
        if q:
            lq = _theta_derivative(Q, k, "left")
            dp = P.diff(k)
            if lq and dp:
                out = out - wedge(dp, lq)
    if ((p - 1) * (q - 1)) % 2:
        out = -out
    return out


class Tensor11:
    """(1,1)-tensor; column j of ``matrix`` is the image of the j-th coordinate field."""

    __slots__ = ("chart", "matrix")

    def __init__(self, chart: Chart, matrix):
        n = chart.dim
        if len(matrix) != n or any(len(r) != n for r in matrix):
            raise DegreeError(f"Tensor11 needs a {n}x{n} matrix")
        self.chart = chart
        self.matrix = [[Scalar.const(chart, x) for x in row] for row in matrix]

    @classmethod
    def from_images(cls, chart: Chart, images: Mapping[str | int, MultiVector]):
        n = chart.dim
        m = [[chart.zero()] * n for _ in range(n)]
        for key, vec in images.items():
            j = chart.index(key) if isinstance(key, str) else key
            for i, c in enumerate(vec.components()):
                m[i][j] = c
        return cls(chart, m)

    @classmethod
    def identity(cls, chart: Chart):
        n = chart.dim
        return cls(chart, [[chart.one() if i == j else chart.zero() for j in range(n)] for i in range(n)])

    def image(self, j: int) -> MultiVector:
        return MultiVector.from_components(self.chart, [row[j] for row in self.matrix])

    def __call__(self, X: MultiVector) -> MultiVector:
        if X.degree != 1:
            raise DegreeError("a (1,1)-tensor acts on vector fields")
        comps = []
        for row in self.matrix:
            acc = self.chart.zero()
            for (j,), c in X.coeffs.items():
                if row[j]:
                    acc = acc + row[j] * c
            comps.append(acc)
        return MultiVector.from_components(self.chart, comps)

    def compose(self, other: "Tensor11") -> "Tensor11":
        from .linalg import matmul
        return Tensor11(self.chart, matmul(self.matrix, other.matrix))

    def transpose_on(self, alpha: DiffForm) -> DiffForm:
        """Pullback alpha o phi."""
        return DiffForm.from_components(
            self.chart, [pair(alpha, self.image(j)) for j in range(self.chart.dim)])

    def conjugate(self):
        return Tensor11(self.chart, [[x.conjugate() for x in row] for row in self.matrix])

    def __eq__(self, other):
        if not isinstance(other, Tensor11):
            return NotImplemented
        return self.chart == other.chart and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.chart.coords, tuple(tuple(r) for r in self.matrix)))

    def __repr__(self):
        return f"Tensor11({self.matrix})"


def nijenhuis(phi: Tensor11, X: MultiVector, Y: MultiVector) -> MultiVector:
    """N_phi(X,Y) = [phiX,phiY] + phi^2[X,Y] - phi[phiX,Y] - phi[X,phiY]."""
    pX, pY = phi(X), phi(Y)
    XY = lie_bracket(X, Y)
    return (lie_bracket(pX, pY) + phi(phi(XY))
            - phi(lie_bracket(pX, Y)) - phi(lie_bracket(X, pY)))
