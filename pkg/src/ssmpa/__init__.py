"""Secure spatial modulation with artificial noise: secrecy-rate metrics and
power-allocation strategies (exhaustive search, iterative convex optimization,
and the closed-form leakage-product method), plus a seeded sweep driver."""

from .channel import (
    AnProjector,
    ChannelPair,
    Constellation,
    SystemConfig,
    TransmitAlphabet,
    Whitener,
    build_alphabet,
    build_an_projector,
    build_constellation,
    build_whitener,
    generate_channel,
)
from .errors import CapabilityError, ConfigurationError, NumericError, SweepError
from .experiment import (
    CSV_HEADER,
    DEFAULT_METHODS,
    DEFAULT_PROFILE_SNRS,
    PROFILE_CSV_HEADER,
    ExperimentSpec,
    ProfileRecord,
    SweepRecord,
    emit_plot_script,
    run_beta_profile,
    run_sweep,
    write_csv,
    write_profile_csv,
)
from .metrics import (
    CutoffPair,
    MiEstimate,
    QSet,
    approx_secrecy_rate,
    build_qset,
    cutoff_rate,
    instantaneous_secrecy_rate,
    kappa_tilde_b,
    kappa_tilde_e,
    kappa_tilde_e_exact,
    kappa_tilde_e_exact_prime,
    kappa_tilde_e_prime,
    mutual_information_mc,
)
from .strategies import (
    CoSettings,
    EsSettings,
    LeakageStats,
    PaResult,
    PhiCoefficients,
    beta_grid,
    co_optimize,
    compute_leakage_stats,
    compute_phi,
    es_optimize,
    exact_tangent_minorant,
    fixed_beta,
    flop_estimates,
    golden_section_max,
    leakage_product,
    leakage_product_derivative,
    max_p_san_optimize,
    tangent_minorant,
)

__version__ = "0.1.0"
