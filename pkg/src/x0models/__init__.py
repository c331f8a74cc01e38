"""Plane models C(f, g, h) of X_0(N) and the degrees attached to them."""

from .arith import cusp_classes, divisors, index_mu, sturm_bound
from .degrees import DegreeReport, degree_report
from .forms import EisensteinFactor, EtaQuotient, Form, FormError, independent
from .qseries import QSeries
from .relation import HomogPoly3, find_min_relation, verify_relation

__all__ = [
    "DegreeReport",
    "EisensteinFactor",
    "EtaQuotient",
    "Form",
    "FormError",
    "HomogPoly3",
    "QSeries",
    "cusp_classes",
    "degree_report",
    "divisors",
    "find_min_relation",
    "independent",
    "index_mu",
    "sturm_bound",
    "verify_relation",
]
__version__ = "0.1.0"
