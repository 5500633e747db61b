"""Power-allocation strategies: exhaustive search on the exact secrecy rate,
the iterative convex-optimization (DC) method on the cut-off surrogate, the
closed-form leakage-product method, fixed baselines, and FLOP-count models."""

from dataclasses import dataclass, field

import numpy as np

from .channel import AnProjector, ChannelPair, SystemConfig, TransmitAlphabet
from .errors import ConfigurationError
from .metrics import (
    _kappa_value_and_slope,
    instantaneous_secrecy_rate,
    kappa_tilde_b,
    kappa_tilde_e,
    kappa_tilde_e_prime,
)

_INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class PaResult:
    """Outcome of one power-allocation optimization."""

    beta: float
    objective: float
    iterations: int
    converged: bool
    fallback_used: bool = False
    diagnostics: list = field(default_factory=list)  # (iteration, objective)


@dataclass(frozen=True)
class LeakageStats:
    """Trace statistics of one channel pair used by the closed-form method."""

    kappa_b: float
    kappa_e: float
    omega_b: float
    omega_e: float


@dataclass(frozen=True)
class PhiCoefficients:
    """Coefficients of the leakage-product derivative quadratic."""

    phi_a: float
    phi_b: float
    phi_c: float
    phi_d: float
    phi_o: float
    delta: float


@dataclass(frozen=True)
class CoSettings:
    """Convergence controls for the iterative convex-optimization method."""

    epsilon: float = 1e-4
    max_outer_iterations: int = 50
    inner_tolerance: float = 1e-6
    beta_0: float = 0.5

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ConfigurationError("epsilon must be positive")
        if not 0.0 < self.beta_0 < 1.0:
            raise ConfigurationError("beta_0 must lie strictly in (0, 1)")


@dataclass(frozen=True)
class EsSettings:
    """Exhaustive-search controls: grid size and MC budget per evaluation."""

    grid_points: int = 99
    n_samp: int = 500

    def __post_init__(self):
        if self.grid_points < 2:
            raise ConfigurationError("grid_points must be >= 2")


def beta_grid(grid_points: int) -> np.ndarray:
    """Uniform open grid on (0, 1); 99 points gives {0.01, ..., 0.99}."""
    return np.arange(1, grid_points + 1) / (grid_points + 1.0)


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-6) -> tuple:
    """Maximize a unimodal scalar function on [lo, hi] to interval width tol."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = c if fc > fd else d
    return x, max(fc, fd)


def _u_tangent(k0: float, slope_beta: float, beta_0: float):
    """Tangent of a function at beta_0 taken in the u = beta/(1-beta)
    coordinate; (1-beta_0)^2 converts the beta-slope into the u-slope."""
    slope_u = slope_beta * (1.0 - beta_0) ** 2
    u0 = beta_0 / (1.0 - beta_0)

    def g_e(beta):
        return k0 + slope_u * (beta / (1.0 - beta) - u0)

    return g_e


def tangent_minorant(beta_0: float, qset):
    """Global under-estimator g_E of the high-SNR eavesdropper surrogate.

    kappa_E is convex in u = beta / (1 - beta) (log-sum-exp of linear
    functions of u), so its tangent there minorizes it globally while
    matching the value and beta-slope at the expansion point. The tangent
    in beta itself is not a minorant: the surrogate is not convex in beta.
    """
    return _u_tangent(kappa_tilde_e(beta_0, qset),
                      kappa_tilde_e_prime(beta_0, qset), beta_0)


def exact_tangent_minorant(beta_0: float, ch: ChannelPair, t: AnProjector,
                           cfg: SystemConfig, alphabet: TransmitAlphabet):
    """u-coordinate tangent minorant of the full-covariance eavesdropper
    cut-off term, used by the iterative convex-optimization method."""
    k0, slope = _kappa_value_and_slope(ch.h_e, t, beta_0, cfg, alphabet, "eve")
    return _u_tangent(k0, slope, beta_0)


def es_optimize(ch: ChannelPair, t: AnProjector, cfg: SystemConfig,
                alphabet: TransmitAlphabet, es: EsSettings, rng) -> PaResult:
    """Grid search of the MC secrecy rate over beta.

    Common random numbers: every grid point replays the same noise stream
    (rng must be seed-like, not an exhausted Generator), so argmax jitter
    comes only from the objective, not the sampling. Ties break toward the
    smaller beta.
    """
    if isinstance(rng, np.random.Generator):
        raise ConfigurationError(
            "es_optimize needs a replayable seed (int or SeedSequence) for "
            "common random numbers across the grid"
        )
    grid = beta_grid(es.grid_points)
    best_beta, best_sr = grid[0], -np.inf
    diagnostics = []
    for idx, beta in enumerate(grid):
        g = np.random.default_rng(rng)
        sr = instantaneous_secrecy_rate(ch, t, float(beta), cfg, alphabet,
                                        es.n_samp, g)
        diagnostics.append((idx, sr))
        if sr > best_sr:
            best_beta, best_sr = float(beta), sr
    return PaResult(beta=best_beta, objective=best_sr,
                    iterations=len(grid), converged=True,
                    diagnostics=diagnostics)


def co_optimize(ch: ChannelPair, t: AnProjector, cfg: SystemConfig,
                alphabet: TransmitAlphabet, co: CoSettings = CoSettings()) -> PaResult:
    """DC / majorize-minimize iteration on the cut-off-rate secrecy surrogate
    I0_B - I0_E = kappa_E - kappa_B.

    The eavesdropper term is kept with its full AN-plus-noise covariance
    W_E(beta) rather than the high-SNR C_E^{-1} approximation: the
    approximation overstates the eavesdropper at low SNR and drags the
    allocation toward beta ~ 0 there, while the full term tracks the
    exhaustive-search optimum across the whole SNR range. Neither term is
    convex in beta, but the eavesdropper term is convex in
    u = beta / (1 - beta) (log-sum-exp of negated concave saturating
    functions of u), so its tangent in the u coordinate is a global
    under-estimator g_E. Each surrogate G(beta) = g_E(beta) - kappa_B(beta)
    is concave for null-space AN and is maximized by golden-section search;
    the trace of G values is non-decreasing by the standard MM argument.
    """
    lo, hi = 1e-6, 1.0 - 1e-6

    def kb(beta):
        return kappa_tilde_b(beta, ch, t, cfg, alphabet)

    beta_prev = co.beta_0
    g_prev = None
    diagnostics = []
    converged = False
    iterations = 0
    for k in range(1, co.max_outer_iterations + 1):
        g_e = exact_tangent_minorant(beta_prev, ch, t, cfg, alphabet)

        def g_fun(beta):
            return g_e(beta) - kb(beta)

        beta_new, g_new = golden_section_max(g_fun, lo, hi, co.inner_tolerance)
        diagnostics.append((k, g_new))
        iterations = k
        if g_prev is not None and abs(g_new - g_prev) <= co.epsilon:
            converged = True
            beta_prev = beta_new
            g_prev = g_new
            break
        beta_prev, g_prev = beta_new, g_new
    return PaResult(beta=float(beta_prev), objective=float(g_prev),
                    iterations=iterations, converged=converged,
                    diagnostics=diagnostics)


def compute_leakage_stats(ch: ChannelPair, t: AnProjector,
                          cfg: SystemConfig) -> LeakageStats:
    """Trace statistics: kappa = (P/N_t) tr(H^H H), omega = P tr((HT)(HT)^H)."""
    kappa_b = cfg.p / cfg.n_t * float(np.real(np.trace(ch.h_b.conj().T @ ch.h_b)))
    kappa_e = cfg.p / cfg.n_t * float(np.real(np.trace(ch.h_e.conj().T @ ch.h_e)))
    omega_b = cfg.p * float(np.linalg.norm(ch.h_b @ t.t) ** 2)
    omega_e = cfg.p * float(np.linalg.norm(ch.h_e @ t.t) ** 2)
    return LeakageStats(kappa_b=kappa_b, kappa_e=kappa_e,
                        omega_b=omega_b, omega_e=omega_e)


def compute_phi(stats: LeakageStats, cfg: SystemConfig,
                printed_forms: bool = False) -> PhiCoefficients:
    """Coefficients of the leakage-product derivative.

    Expanding the product objective's denominator with A = sigma_B^2 N_r
    and B = sigma_E^2 N_e gives phi_c = kappa_E omega_B + kappa_E B - A omega_B
    and phi_d = A (omega_B + B); these make the quadratic-numerator derivative
    match finite differences exactly. A is the total legitimate-receiver noise
    power normalized by the per-antenna signal power, the clearing of the
    signal-to-leakage-and-noise ratio's denominator. printed_forms=True
    switches to an alternative published variant of phi_c/phi_d for
    side-by-side comparison.
    """
    a = cfg.sigma2_b * cfg.n_r
    b = cfg.sigma2_e * cfg.n_e
    phi_a = stats.kappa_b * stats.omega_e
    phi_b = stats.kappa_e * stats.omega_b
    if printed_forms:
        phi_c = stats.kappa_e * stats.omega_b + cfg.sigma2_b * stats.kappa_e * cfg.n_e
        phi_d = cfg.sigma2_b * stats.omega_b * cfg.n_r + cfg.sigma2_b * cfg.sigma2_e * cfg.n_r * cfg.n_e
    else:
        phi_c = stats.kappa_e * stats.omega_b + stats.kappa_e * b - a * stats.omega_b
        phi_d = a * (stats.omega_b + b)
    phi_o = phi_b - phi_c
    delta = phi_d**2 - phi_o * phi_d
    return PhiCoefficients(phi_a=phi_a, phi_b=phi_b, phi_c=phi_c,
                           phi_d=phi_d, phi_o=phi_o, delta=delta)


def leakage_product(beta, stats: LeakageStats, cfg: SystemConfig):
    """Product of SLNR and ANLNR as a function of beta (vectorized)."""
    beta = np.asarray(beta, dtype=float)
    a = cfg.sigma2_b * cfg.n_r
    b = cfg.sigma2_e * cfg.n_e
    signal = stats.kappa_b * beta / (stats.kappa_e * beta + a)
    an = (1.0 - beta) * stats.omega_e / ((1.0 - beta) * stats.omega_b + b)
    return signal * an


def leakage_product_derivative(beta, phi: PhiCoefficients):
    """F'(beta) = phi_a (phi_o beta^2 - 2 phi_d beta + phi_d) / D(beta)^2."""
    beta = np.asarray(beta, dtype=float)
    numerator = phi.phi_a * (phi.phi_o * beta**2 - 2.0 * phi.phi_d * beta + phi.phi_d)
    denom = -phi.phi_b * beta**2 + phi.phi_c * beta + phi.phi_d
    return numerator / denom**2


def max_p_san_optimize(ch: ChannelPair, t: AnProjector,
                       cfg: SystemConfig) -> PaResult:
    """Closed-form leakage-product power allocation.

    When phi_o < 0 and the discriminant is positive (always the case for the
    null-space AN projector), the unique interior stationary point
    beta = (phi_d - sqrt(delta)) / phi_o lies in (0, 1) and is returned
    directly. Degenerate coefficient signs fall back to a dense-grid argmax.
    """
    stats = compute_leakage_stats(ch, t, cfg)
    phi = compute_phi(stats, cfg)
    if phi.phi_o < 0.0 and phi.delta > 0.0:
        beta = (phi.phi_d - np.sqrt(phi.delta)) / phi.phi_o
        return PaResult(beta=float(beta),
                        objective=float(leakage_product(beta, stats, cfg)),
                        iterations=0, converged=True)
    grid = np.linspace(0.001, 0.999, 100_000)
    values = leakage_product(grid, stats, cfg)
    idx = int(np.argmax(values))
    return PaResult(beta=float(grid[idx]), objective=float(values[idx]),
                    iterations=0, converged=True, fallback_used=True)


def fixed_beta(beta0: float) -> PaResult:
    """Fixed power-allocation baseline."""
    if not 0.0 <= beta0 <= 1.0:
        raise ConfigurationError(f"fixed beta must lie in [0, 1], got {beta0}")
    return PaResult(beta=float(beta0), objective=0.0, iterations=0, converged=True)


def flop_estimates(cfg: SystemConfig, l: int, n_samp: int, d_ite: int) -> tuple:
    """Closed-form FLOP counts (c_es, c_co, c_mpsan) of the three strategies."""
    if l < 1 or n_samp < 1 or d_ite < 1:
        raise ConfigurationError("l, n_samp and d_ite must be positive")
    nt, nr, ne, m = cfg.n_t, cfg.n_r, cfg.n_e, cfg.m
    c_es = 2 * nt**2 * m**2 * l * n_samp * (2 * (nr + ne) * nt**2 + nr + ne)
    c_co = 3 * nt**2 * m**2 * d_ite * (2 * nt**2 + 2 * nt)
    c_mpsan = (2 * nt**2 * (2 * nr + 3 * ne) + 2 * nr**2 * nt
               + 2 * ne**2 * nt + nt + nr + ne)
    return c_es, c_co, c_mpsan
