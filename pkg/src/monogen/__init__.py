"""Monogenicity of pure power fields t^q - p: verdicts, certificates and
prime-density experiments."""

from .arith import (
    count_roots_cubic,
    cube_free_decompose,
    exact_cube_root,
    is_prime,
    nth_power_residue,
    pow_mod,
    sieve_primes,
)
from .cubic import (
    CubicVerdict,
    PureCubicField,
    ThueOutcome,
    Verdict,
    classify_cbrt_p,
    classify_general_pure_cubic,
    classify_pure_cubic_field,
    index_form_value,
    index_via_discriminant,
    thue_search,
)
from .density import DensityReport, PredicateSpec, run_density, trichotomy_census, verdict_census
from .eisenstein import EisensteinCertificate, monogenic_certificate, power2_certificate, wieferich_scan
from .quadforms import QuadForm, Unimodular, equivalent_gl2, reduce, reduced_forms_of_disc, represents

__version__ = "0.1.0"
