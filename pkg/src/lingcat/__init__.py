"""Hilbert series of representations of combinatorial categories via ordered languages."""

from .automata import Dfa, NormedAlphabet, enumerate_dfa, is_ordered
from .categories import (
    CategoryId,
    compose_words,
    decode,
    divides,
    encode,
    fa_polynomiality_certificate,
    hom_count,
    oi_monomial_bijection,
    parse_category,
    principal_projective_series,
)
from .config import Limits
from .counting import cfg_count, multinomial_series
from .egf import EgfForm, egf_convert
from .errors import BoundsError, DomainError, LingcatError, ParseError
from .expr import (
    compile_expr,
    dfa_to_expr,
    enumerate_expr,
    enumerate_language,
    ideal_to_expr,
    parse_expr,
)
from .grobner import (
    ModuleElement,
    TruncatedModule,
    initial_module,
    is_groebner_up_to,
    module_series,
    parse_element,
    quotient_series,
    span_generators,
)
from .posets import PosetIdeal, WordOrder, higman_leq, ideal_member, oi_leq, os_leq
from .series import CoeffTable, RationalSeries, dfa_series, expand, fit_rational

__version__ = "0.1.0"
