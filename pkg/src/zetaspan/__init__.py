"""zetaspan: high-precision Hurwitz zeta values at rational arguments,
exact cyclotomic identities for their reflected combinations, and
integer-relation probes of the rational span they generate."""

__version__ = "0.1.0"

from .arith import coprime_residues, divisors, euler_phi
from .cotexpand import CotDerivativeExpansion, evaluate_numeric, expand, normalized_cyclotomic
from .cyclotomic import (
    CyclotomicElement,
    cyclotomic_polynomial,
    element,
    element_from_text,
    element_to_text,
    embed_numeric,
    galois_apply,
    i_cot_element,
    is_in_subfield,
    one,
    rational_element,
    zero,
    zeta,
)
from .experiments import ExperimentConfig, bits_for_digits, run_batch, run_config
from .hurwitz import BasisValues, HalfSystem, basis_values, half_system, hurwitz_zeta, riemann_zeta
from .identities import (
    ResidualReport,
    exact_ratio,
    ratio_numeric,
    verify_lemma3,
    verify_lemma4,
    zeta_representation_probe,
)
from .precision import GUARD_BITS, MIN_PRECISION_BITS, bernoulli_numbers, pi, trig_at_rational
from .relations import (
    LatticeBasis,
    Relation,
    RelationReport,
    find_integer_relation,
    is_lll_reduced,
    lll_reduce,
    probe_dimension,
)

__all__ = [
    "__version__",
    "BasisValues",
    "CotDerivativeExpansion",
    "CyclotomicElement",
    "ExperimentConfig",
    "GUARD_BITS",
    "HalfSystem",
    "LatticeBasis",
    "MIN_PRECISION_BITS",
    "Relation",
    "RelationReport",
    "ResidualReport",
    "basis_values",
    "bernoulli_numbers",
    "bits_for_digits",
    "coprime_residues",
    "cyclotomic_polynomial",
    "divisors",
    "element",
    "element_from_text",
    "element_to_text",
    "embed_numeric",
    "euler_phi",
    "evaluate_numeric",
    "exact_ratio",
    "expand",
    "find_integer_relation",
    "galois_apply",
    "half_system",
    "hurwitz_zeta",
    "i_cot_element",
    "is_in_subfield",
    "is_lll_reduced",
    "lll_reduce",
    "normalized_cyclotomic",
    "one",
    "pi",
    "probe_dimension",
    "ratio_numeric",
    "rational_element",
    "riemann_zeta",
    "run_batch",
    "run_config",
    "trig_at_rational",
    "verify_lemma3",
    "verify_lemma4",
    "zero",
    "zeta",
    "zeta_representation_probe",
]
