"""Normal-family criterion toolkit.

Expression jets with pole-aware semantics, the exact normality-criterion
decision with counterexample witnesses, exact value distribution of rational
functions, spherical-derivative growth estimates, and Zalcman-style rescaling
runs.
"""

from ._normalfam import (  # noqa: F401
    EvalError,
    Function,
    Jet,
    ParseError,
    __version__,
    ahlfors_shimizu_T,
    compose,
    criterion_sum,
    decide,
    hypothesis_probe,
    instantiate_witness,
    marty_probe,
    mobius_post,
    order_estimate,
    params_from_cubic,
    parse,
    preimage_profile,
    ratfun_analyze,
    sup_sph_on_disk,
    translate,
    validate_profile,
    verify_defect_bound,
    verify_examples,
    wp_pair,
    zalcman_extract,
)
