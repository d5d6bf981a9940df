"""Registry of scene checks: name -> argument signature and checker."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import e1, structures as st
from .certificate import FAIL, PASS, Certificate


@dataclass(frozen=True)
class CheckSpec:
    name: str
    signature: tuple[str, ...]
    run: Callable[..., Certificate]
    options: frozenset[str] = field(default_factory=frozenset)


def _reeb(eta):
    xi = st.reeb(eta)
    return Certificate("reeb", PASS, [], [f"xi = {xi}", "i_xi d eta = 0", "eta(xi) = 1"],
                       details={"xi": xi})


def _jacobi_from_contact(eta):
    j = st.jacobi_from_contact(eta)
    cert = st.jacobi_check(j)
    cert.check = "jacobi_from_contact"
    cert.certificate = [f"pi = {j.pi}", f"E = {j.E}"] + cert.certificate
    cert.details["pair"] = j
    return cert


def _endo(J):
    return e1.endo_check(J)


def _gen_sasakian(J1, J2, *, points=(), samples=4):
    return st.gen_sasakian_check(J1, J2, points, limit=samples)


def _same_span(L1, L2):
    return e1.same_span(L1, L2)


REGISTRY: dict[str, CheckSpec] = {spec.name: spec for spec in [
    CheckSpec("contact", ("form1",), st.contact_check),
    CheckSpec("reeb", ("form1",), _reeb),
    CheckSpec("jacobi", ("jacobi",), st.jacobi_check),
    CheckSpec("jacobi_from_contact", ("form1",), _jacobi_from_contact),
    CheckSpec("isotropy", ("subbundle",), e1.isotropy_check),
    CheckSpec("integrability", ("subbundle",), e1.integrability_check),
    CheckSpec("transversality", ("subbundle",), st.transversality_check),
    CheckSpec("kernel_line", ("subbundle",), st.kernel_line),
    CheckSpec("direct_sum", ("subbundle",), e1.direct_sum_check),
    CheckSpec("same_span", ("subbundle", "subbundle"), _same_span),
    CheckSpec("endo", ("endo",), _endo),
    CheckSpec("almost_contact", ("almost_contact",), st.almost_contact_check),
    CheckSpec("normality", ("almost_contact",), st.normality_check),
    CheckSpec("lemma", ("almost_contact",), st.lemma_identities),
    CheckSpec("cosymplectic", ("cosymplectic",), st.cosymplectic_check),
    CheckSpec("gen_sasakian", ("endo", "endo"), _gen_sasakian, frozenset({"samples"})),
]}

# checks that consume random sample points
SAMPLED = frozenset({"gen_sasakian"})
