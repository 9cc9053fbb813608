"""Exact symbolic engine for quantum cluster structures on iterated skew
polynomial algebras.

The package is organized bottom-up:

* ``scalarfield``   exact scalars q**e and rational functions in q**(1/D)
* ``bicharacter``   skew-symmetric exponent matrices and the Omega pairing
* ``qtorus``        based quantum torus elements and toric frames
* ``mutation``      compatible pairs, exchange matrices, seed mutation
* ``orealgebra``    PBW presentations of iterated skew polynomial rings
* ``primeseq``      sequences of normal prime elements and interval data
* ``xicombinatorics`` interval-prefix orderings and their frames
* ``exchangesolver`` exact linear solver for exchange-matrix columns
* ``schubertdata``  Weyl/root lattice data for quantized Schubert cells
* ``cli``           JSON-reporting command line front end
"""

from .scalarfield import Coeff, ScalarExp, coeff_div, scalar_pow
from .bicharacter import ExpMatrix, exp_mat_product, omega, symmetrization
from .qtorus import (
    TorusElement,
    ToricFrame,
    check_frame_identity,
    frame_value,
    matrix_from_images,
    permutation_cols,
    proportionality_scalar,
    reindex_frame,
    torus_div_right,
    torus_mul,
)
from .mutation import (
    ExchangeMatrix,
    Seed,
    compatibility_check,
    exchange_identity_holds,
    exchange_terms,
    find_symmetrizer,
    mutate_emat,
    mutate_matrix,
    mutate_matrix_direct,
    mutate_seed,
    mutated_variable,
    random_compatible_pair,
    seed_from_pair,
    skew_symmetrizable,
)
from .orealgebra import (
    PBWElement,
    Presentation,
    leading_term,
    pbw_div_right,
    pbw_mul,
    presentation_from_dict,
    quantum_matrix_preset,
    weight_of,
)
from .primeseq import (
    EtaData,
    PrimeSequence,
    compute_primes,
    embed_interval,
    interval_prime,
    interval_primes,
    normality_scalar,
    pi_f_data,
    rescale_generators,
    restrict_presentation,
    u_element,
)
from .xicombinatorics import (
    TauPresentation,
    enumerate_xi,
    frame_for_tau,
    gamma_chain,
    gamma_chain_swaps,
    has_interval_prefixes,
    identity_frame,
    interval_frame,
    tau_bullet,
    window_support_vector,
)
from .exchangesolver import (
    btilde_for_tau,
    first_column_crosscheck,
    quantum_matrix_btilde,
    symmetrizers_from_scalars,
)
from .schubertdata import (
    CartanData,
    CompatReport,
    WordData,
    cartan_matrix,
    compatibility_sweep,
    enumerate_reduced_words,
    exchange_matrix_for_word,
    frame_exponent_matrix,
    is_reduced,
    quantum_matrix_word,
    roots_for_word,
    verify_word_compatibility,
    word_data,
)

__all__ = [
    "Coeff",
    "ScalarExp",
    "coeff_div",
    "scalar_pow",
    "ExpMatrix",
    "exp_mat_product",
    "omega",
    "symmetrization",
    "TorusElement",
    "ToricFrame",
    "check_frame_identity",
    "frame_value",
    "matrix_from_images",
    "permutation_cols",
    "proportionality_scalar",
    "reindex_frame",
    "torus_div_right",
    "torus_mul",
    "ExchangeMatrix",
    "Seed",
    "compatibility_check",
    "exchange_identity_holds",
    "exchange_terms",
    "find_symmetrizer",
    "mutate_emat",
    "mutate_matrix",
    "mutate_matrix_direct",
    "mutate_seed",
    "mutated_variable",
    "random_compatible_pair",
    "seed_from_pair",
    "skew_symmetrizable",
    "PBWElement",
    "Presentation",
    "leading_term",
    "pbw_div_right",
    "pbw_mul",
    "presentation_from_dict",
    "quantum_matrix_preset",
    "weight_of",
    "EtaData",
    "PrimeSequence",
    "compute_primes",
    "embed_interval",
    "interval_prime",
    "interval_primes",
    "normality_scalar",
    "pi_f_data",
    "rescale_generators",
    "restrict_presentation",
    "u_element",
    "TauPresentation",
    "enumerate_xi",
    "frame_for_tau",
    "gamma_chain",
    "gamma_chain_swaps",
    "has_interval_prefixes",
    "identity_frame",
    "interval_frame",
    "tau_bullet",
    "window_support_vector",
    "btilde_for_tau",
    "first_column_crosscheck",
    "quantum_matrix_btilde",
    "symmetrizers_from_scalars",
    "CartanData",
    "CompatReport",
    "WordData",
    "cartan_matrix",
    "compatibility_sweep",
    "enumerate_reduced_words",
    "exchange_matrix_for_word",
    "frame_exponent_matrix",
    "is_reduced",
    "quantum_matrix_word",
    "roots_for_word",
    "verify_word_compatibility",
    "word_data",
]
