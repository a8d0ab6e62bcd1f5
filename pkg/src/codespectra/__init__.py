"""Matrices from linear codes and their spectral statistics."""

from .codes import (
    CodeReport,
    DualDistanceStatus,
    LinearCode,
    code_report,
    dual_distance_status,
    encode,
    load_generator,
    make_even_weight,
    make_gold,
    make_rm1,
    parse_generator,
)
from .errors import (
    ContractViolationError,
    ConvergenceError,
    ParameterError,
    ResourceError,
)
from .fields import Gf2m, Gf2mElement, default_field, ff_mul, is_primitive_poly, trace
from .laws import LawSpec, mp_cdf, mp_moment, mp_pdf, sc_cdf, sc_moment, sc_pdf
from .paths import (
    ClosedPath,
    PathPair,
    closed_path,
    count_double_tree_classes,
    count_W,
    count_W_pair,
    enumerate_closed_classes,
    enumerate_pair_classes,
    expect_omega,
    is_double_tree,
    path_pair,
    paths_audit,
)
from .rng import SeedContract, XorShift64Star
from .signal import SignalMatrix, char_map, sample_codewords
from .spectra import (
    SpectralSummary,
    center_scale,
    eig_hermitian,
    esd,
    gram,
    ks_statistic,
    summarize,
    trace_moments,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
