"""Seeded random generators for charts, scalars, forms and sections."""
import random
from fractions import Fraction
from itertools import combinations

from geolab import Chart
from geolab.e1 import E1Section, FormPair
from geolab.extcalc import DiffForm, MultiVector

R3 = Chart(("x", "y", "z"))
R5 = Chart(("x1", "y1", "x2", "y2", "z"))


def rand_scalar(rng: random.Random, chart, degree=2, terms=3, rational=False):
    out = chart.zero()
    for _ in range(rng.randint(0, terms)):
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        mono = chart.const(c)
        for _ in range(rng.randint(0, degree)):
            mono = mono * chart.coord(rng.choice(chart.coords))
        out = out + mono
    if rational and rng.random() < 0.3:
        out = out / (chart.coord(rng.choice(chart.coords)) + rng.randint(1, 3))
    return out


def _graded(cls, rng, chart, k, **kw):
    out = cls(chart, k)
    keys = list(combinations(range(chart.dim), k))
    for key in rng.sample(keys, min(len(keys), rng.randint(0, 3))):
        out = out + cls.basis(chart, *key) * rand_scalar(rng, chart, **kw)
    return out


def rand_form(rng, chart, k, **kw) -> DiffForm:
    if k == 0:
        return DiffForm.from_scalar(rand_scalar(rng, chart, **kw))
    return _graded(DiffForm, rng, chart, k, **kw)


def rand_vector(rng, chart, k=1, **kw) -> MultiVector:
    return _graded(MultiVector, rng, chart, k, **kw)


def rand_section(rng, chart, **kw) -> E1Section:
    return E1Section(rand_vector(rng, chart, **kw), rand_scalar(rng, chart, **kw),
                     rand_form(rng, chart, 1, **kw), rand_scalar(rng, chart, **kw))


def rand_pair(rng, chart, k, **kw) -> FormPair:
    if k == 0:
        return FormPair(0, rand_form(rng, chart, 0, **kw))
    return FormPair(k, rand_form(rng, chart, k, **kw), rand_form(rng, chart, k - 1, **kw))
