"""Exact power-map dynamics of finite rings."""

from .analysis import (
    MuProfile,
    Mu1TooLarge,
    NotCentralError,
    OrbitInfo,
    StructuralFlags,
    is_period,
    mu_profile,
    nil_index,
    nilpotent_period_exponent,
    nilpotents,
    orbit,
    periods_of,
    potents,
    quasiperiodic_check,
    structural_flags,
)
from .constructions import (
    NotPrimeError,
    corbas_pow_closed_form,
    find_irreducible,
    make_bell_klein,
    make_corbas,
    make_galois_field,
    make_galois_ring,
    make_matrix_ring,
    make_nil_zero,
    make_zmod,
)
from .core import (
    FiniteRing,
    OpTables,
    RingLawError,
    RingSizeError,
    additive_order,
    characteristic,
    check_ring_laws,
    direct_product,
    elem_pow,
    power_map,
)
from .estimator import PowerMapProfiler
from .harness import Config, RingReport, analyze, conjecture_scan, oeis_check, reproduce_tables
from .specparse import RingSpecSyntaxError, parse_ring_spec

__version__ = "0.1.0"
