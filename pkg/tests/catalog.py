"""Named structures shared by the acceptance and property suites."""
from geolab import structures as S
from geolab.extcalc import DiffForm, MultiVector, Tensor11, d_form, wedge
from gen import R3, R5

x, y, z = (R3.coord(n) for n in "xyz")
dx, dy, dz = (DiffForm.basis(R3, n) for n in "xyz")
px, py, pz = (MultiVector.basis(R3, n) for n in "xyz")
eta0 = dz - dx * y
eta5 = R5.form("d(z) - y1*d(x1) - y2*d(x2)")


def almost(chart, images, xi, eta):
    return S.AlmostContact(Tensor11.from_images(chart, images), xi, eta)


def normal_examples():
    return {
        "constant phi, eta = dz": almost(R3, {"x": py, "y": -px}, pz, dz),
        "phi(@y) = -@x - y@z, eta = eta0": almost(R3, {"x": py, "y": -px - pz * y}, pz, eta0),
    }


def nonnormal_example():
    return almost(R3, {"x": py * (1 + z), "y": px * (-1 / (1 + z))}, pz, dz)


def almost_contact_r5():
    b = {n: MultiVector.basis(R5, n) for n in R5.coords}
    return almost(R5, {"x1": b["y1"], "y1": -b["x1"], "x2": b["y2"], "y2": -b["x2"]}, b["z"],
                  DiffForm.basis(R5, "z"))


def cosymplectic_pairs():
    w5 = R5.form("d(x1)^d(y1) + d(x2)^d(y2)")
    return {
        "(dx^dy, dz)": S.CosymplecticPair(wedge(dx, dy), dz),
        "(d eta0, eta0)": S.CosymplecticPair(d_form(eta0), eta0),
        "R5 (dx1^dy1 + dx2^dy2, dz)": S.CosymplecticPair(w5, DiffForm.basis(R5, "z")),
    }


def constructed_endos():
    """Every generalized almost contact endomorphism built by the suites."""
    out = {}
    for name, a in normal_examples().items():
        out[f"almost contact {name}"] = S.endo_from_almost_contact(a)
    out["almost contact non-normal"] = S.endo_from_almost_contact(nonnormal_example())
    out["almost contact R5"] = S.endo_from_almost_contact(almost_contact_r5())
    for name, c in cosymplectic_pairs().items():
        out[f"cosymplectic {name}"] = S.endo_from_cosymplectic(c)
    return out
