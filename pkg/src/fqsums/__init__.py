"""Exact additive character sums over finite fields and the bounds built on them."""

from .artin_schreier import (
    ASInstance,
    as_binomial_report,
    as_count_charsum,
    as_count_direct,
    as_count_pairs,
    as_report,
    make_instance,
)
from .bounds import (
    BoundReport,
    binomial_report,
    cyclo_report,
    index_report,
    weil_report,
)
from .charsum import char_sum_full, char_sum_nonzero, char_sum_via_cosets
from .codes import (
    CodeSpec,
    CodewordRecord,
    code_weight_report,
    make_code,
    min_weight_floor,
    min_weight_search,
    trace_codeword,
    weight_via_Ek,
)
from .cyclotomic import CyclotomicValue, cv_abs, cv_add, cv_char, cv_scale
from .errors import FqSumsError
from .field import FieldSpec, arith, dlog, make_field, parse_field, roots_of_unity, trace
from .index import (
    CyclotomicMapping,
    IndexForm,
    index_form,
    mapping_eval,
    mapping_from_index,
    poly_from_mapping,
)
from .kernels import BACKEND
from .poly import SparsePoly, format_poly, make_poly, parse_poly
from .sweep import CampaignConfig, run_campaign

__version__ = "0.1.0"
