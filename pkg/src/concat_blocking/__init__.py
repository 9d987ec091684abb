"""Minimal linear codes, concatenation and strong blocking sets over finite fields."""
from .code import LinearCode, WeightDistribution, weight_distribution
from .concat import ConcatSpec, certify_minimal_concat, concatenate
from .errors import ConcatBlockingError
from .gf import FieldSpec, find_field, parse_field
from .geometry import ProjectiveSystem, is_strong_blocking, system_from_code
from .minimal import Certificate, Method, Verdict, is_minimal_code

__version__ = "0.1.0"
