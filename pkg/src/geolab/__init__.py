"""geolab: exact chart-local computations on E1(M) = (TM x R) + (T*M x R)."""
__version__ = "0.1.0"

from .symcore import Chart, Scalar  # noqa: E402
from .extcalc import DiffForm, MultiVector, Tensor11, d_form, wedge, schouten  # noqa: E402
from .e1 import E1Section, EndoJ, SubBundle, dorfman, pairing  # noqa: E402
from .dsl import parse_scene, print_scene  # noqa: E402
from .runner import emit_report, run_checks  # noqa: E402

__all__ = ["Chart", "Scalar", "DiffForm", "MultiVector", "Tensor11", "d_form", "wedge", "schouten",
           "E1Section", "EndoJ", "SubBundle", "dorfman", "pairing", "parse_scene", "print_scene",
           "emit_report", "run_checks", "__version__"]
