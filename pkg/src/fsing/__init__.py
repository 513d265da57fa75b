"""Frobenius singularity verdicts for standard-graded and weighted rings A/I over F_p."""

from .cartier import cartier_theta, comparison_delta, hsl_iterate, materialize_H, theta_image
from .classify import (
    ClassificationReport,
    Verdict,
    classify,
    coherence_violations,
    fedder_test,
    regular_element,
    strictly_filter_regular,
    surjective_element,
    twisted_injectivity,
)
from .deform import consistency_crosscheck, deform_certify
from .errors import *  # noqa: F401,F403
from .fields import GF, PrimeField, RationalFunctionField
from .finlen import (
    FinLenFrobeniusModule,
    fstable_closure,
    intersect_xL,
    is_anti_nilpotent,
    lemma52_check,
    nilpotent_part,
    r_span_of_F,
)
from .groebner import IdealPresentation, bracket_colon, bracket_power, colon, reduced_groebner
from .homological import (
    GradedModulePresentation,
    ext_modules,
    minimal_free_resolution,
    resolution_of,
)
from .koszul import koszul_oracle
from .polynomials import PolyRingSpec, Polynomial
from .ringfile import format_input, parse_input, read_input

__version__ = "0.1.0"
