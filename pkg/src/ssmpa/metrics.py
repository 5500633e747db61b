"""Information metrics: Monte Carlo finite-alphabet mutual information,
instantaneous secrecy rate, closed-form cut-off rates, and the high-SNR
eavesdropper surrogate with its exact derivative."""

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .channel import (
    AnProjector,
    ChannelPair,
    SystemConfig,
    TransmitAlphabet,
    as_generator,
    build_whitener,
)
from .errors import ConfigurationError, NumericError

_LN2 = np.log(2.0)


@dataclass(frozen=True)
class MiEstimate:
    """Monte Carlo mutual-information estimate in bits per channel use."""

    value: float
    std_error: float
    n_samp: int


@dataclass(frozen=True)
class QSet:
    """Pairwise quadratic forms q[m, k] = d_mk^H H_E^H C_E^{-1} H_E d_mk."""

    q: np.ndarray  # (K, K), real nonnegative, zero diagonal
    pinv_used: bool


@dataclass(frozen=True)
class CutoffPair:
    """Cut-off rates of both links and their difference (may be negative)."""

    i0_b: float
    i0_e: float
    r_s_approx: float


def _received_differences(h: np.ndarray, alphabet: TransmitAlphabet) -> np.ndarray:
    """H d_ij for every alphabet pair, shape (K, K, n_rx)."""
    d = alphabet.differences()
    return np.einsum("rt,ijt->ijr", h, d)


def mutual_information_mc(h: np.ndarray, t: AnProjector, beta: float,
                          cfg: SystemConfig, alphabet: TransmitAlphabet,
                          n_samp: int, rng, side: str = "bob") -> MiEstimate:
    """Estimate the finite-alphabet mutual information of one link.

    Uses the whitened-channel form: with a_ij = sqrt(beta P) W^{-1/2} H d_ij
    and n' ~ CN(0, I), the exponent -f_ij + ||n'||^2 collapses to
    -(||a_ij||^2 + 2 Re<a_ij, n'>), so the noise norm cancels analytically
    and the inner sum is a plain log-sum-exp. Returns the sample mean over
    n_samp noise draws plus its Monte Carlo standard error.
    """
    if not 0.0 <= beta <= 1.0:
        raise ConfigurationError(f"beta must lie in [0, 1], got {beta}")
    if n_samp < 1:
        raise ConfigurationError("n_samp must be >= 1")
    g = as_generator(rng)
    k = alphabet.size
    n_rx = h.shape[0]

    wh = build_whitener(h, t, beta, cfg, side)
    hd = _received_differences(h, alphabet)
    a = np.sqrt(beta * cfg.p) * np.einsum("rs,ijs->ijr", wh.w_inv_sqrt, hd)
    a_flat = a.reshape(k * k, n_rx)
    sq = np.sum(np.abs(a_flat) ** 2, axis=-1)  # (K*K,)

    noise = (g.standard_normal((n_samp, n_rx))
             + 1j * g.standard_normal((n_samp, n_rx))) / np.sqrt(2)
    cross = 2.0 * np.real(noise @ a_flat.conj().T)  # (S, K*K)
    exponents = (-(sq[None, :] + cross)).reshape(n_samp, k, k)

    # stabilized log-sum-exp over the candidate-symbol axis
    shift = exponents.max(axis=2)
    inner = shift + np.log(np.exp(exponents - shift[:, :, None]).sum(axis=2))
    per_sample = np.mean(np.log(float(k)) - inner, axis=1) / _LN2
    if not np.all(np.isfinite(per_sample)):
        raise NumericError("non-finite mutual-information sample")
    value = float(np.mean(per_sample))
    if n_samp > 1:
        std_error = float(np.std(per_sample, ddof=1) / np.sqrt(n_samp))
    else:
        std_error = 0.0
    return MiEstimate(value=value, std_error=std_error, n_samp=n_samp)


def instantaneous_secrecy_rate(ch: ChannelPair, t: AnProjector, beta: float,
                               cfg: SystemConfig, alphabet: TransmitAlphabet,
                               n_samp: int, rng) -> float:
    """max(I_B - I_E, 0) from paired Monte Carlo estimates, in bits."""
    g = as_generator(rng)
    i_b = mutual_information_mc(ch.h_b, t, beta, cfg, alphabet, n_samp, g, side="bob")
    i_e = mutual_information_mc(ch.h_e, t, beta, cfg, alphabet, n_samp, g, side="eve")
    return max(i_b.value - i_e.value, 0.0)


def _kappa_logsumexp(h: np.ndarray, t: AnProjector, beta: float,
                     cfg: SystemConfig, alphabet: TransmitAlphabet,
                     side: str) -> float:
    """Natural-log of the cut-off double sum: ln sum_ij exp(-(beta P / 4) q_ij)
    with q_ij = d_ij^H H^H W^{-1} H d_ij."""
    wh = build_whitener(h, t, beta, cfg, side)
    hd = _received_differences(h, alphabet)
    q = np.real(np.einsum("ijr,rs,ijs->ij", hd.conj(), wh.w_inv, hd))
    exponents = -(beta * cfg.p / 4.0) * q
    return float(logsumexp(exponents))


def _kappa_value_and_slope(h: np.ndarray, t: AnProjector, beta: float,
                           cfg: SystemConfig, alphabet: TransmitAlphabet,
                           side: str) -> tuple:
    """Value (log2) and beta-derivative of the cut-off log-sum term with the
    full AN-plus-noise covariance W(beta).

    Uses d/dbeta W^{-1} = P W^{-1} C W^{-1}, so each exponent's slope is
    -(P/4) (q1 + beta P q2) with q1 = v^H W^{-1} v, q2 = v^H W^{-1} C W^{-1} v
    and v = H d.
    """
    wh = build_whitener(h, t, beta, cfg, side)
    ht = h @ t.t
    c = ht @ ht.conj().T
    k = alphabet.size
    v = _received_differences(h, alphabet).reshape(k * k, h.shape[0])
    y = v @ wh.w_inv.T  # rows are W^{-1} v
    q1 = np.real(np.sum(v.conj() * y, axis=1))
    q2 = np.real(np.sum(y.conj() * (y @ c.T), axis=1))
    exponents = -(beta * cfg.p / 4.0) * q1
    slopes = -(cfg.p / 4.0) * (q1 + beta * cfg.p * q2)
    shift = np.max(exponents)
    weights = np.exp(exponents - shift)
    value = (shift + np.log(np.sum(weights))) / _LN2
    slope = float(np.sum(slopes * weights) / (_LN2 * np.sum(weights)))
    return float(value), slope


def kappa_tilde_e_exact(beta: float, ch: ChannelPair, t: AnProjector,
                        cfg: SystemConfig, alphabet: TransmitAlphabet) -> float:
    """log2 of the eavesdropper cut-off double sum with the full covariance
    W_E(beta), i.e. without the high-SNR C_E^{-1} approximation. Convex in
    u = beta / (1 - beta): each exponent is a negated sum of concave
    saturating terms of u, and log-sum-exp preserves convexity."""
    return _kappa_logsumexp(ch.h_e, t, beta, cfg, alphabet, "eve") / _LN2


def kappa_tilde_e_exact_prime(beta: float, ch: ChannelPair, t: AnProjector,
                              cfg: SystemConfig, alphabet: TransmitAlphabet) -> float:
    """Exact beta-derivative of kappa_tilde_e_exact."""
    return _kappa_value_and_slope(ch.h_e, t, beta, cfg, alphabet, "eve")[1]


def kappa_tilde_b(beta: float, ch: ChannelPair, t: AnProjector,
                  cfg: SystemConfig, alphabet: TransmitAlphabet) -> float:
    """log2 of the legitimate-link cut-off double sum. Convex in beta for
    null-space AN (W_B is then constant and each exponent linear in beta)."""
    return _kappa_logsumexp(ch.h_b, t, beta, cfg, alphabet, "bob") / _LN2


def cutoff_rate(h: np.ndarray, t: AnProjector, beta: float, cfg: SystemConfig,
                alphabet: TransmitAlphabet, side: str = "bob") -> float:
    """Closed-form cut-off rate 2 log2(K) - log2 sum_ij exp(-(beta P/4) q_ij)."""
    k = alphabet.size
    lse = _kappa_logsumexp(h, t, beta, cfg, alphabet, side)
    return (np.log(float(k * k)) - lse) / _LN2


def approx_secrecy_rate(ch: ChannelPair, t: AnProjector, beta: float,
                        cfg: SystemConfig, alphabet: TransmitAlphabet) -> CutoffPair:
    """Cut-off-rate secrecy surrogate; unclamped, usable as an objective."""
    i0_b = cutoff_rate(ch.h_b, t, beta, cfg, alphabet, "bob")
    i0_e = cutoff_rate(ch.h_e, t, beta, cfg, alphabet, "eve")
    return CutoffPair(i0_b=i0_b, i0_e=i0_e, r_s_approx=i0_b - i0_e)


def build_qset(h_e: np.ndarray, t: AnProjector, alphabet: TransmitAlphabet,
               cond_limit: float = 1e12) -> QSet:
    """Quadratic forms through C_E^{-1}; falls back to a pseudo-inverse (and
    flags it) when the AN covariance at Eve is near-singular."""
    ht = h_e @ t.t
    c_e = ht @ ht.conj().T
    pinv_used = False
    if np.linalg.cond(c_e) > cond_limit:
        c_inv = np.linalg.pinv(c_e, hermitian=True)
        pinv_used = True
    else:
        c_inv = np.linalg.inv(c_e)
    hd = _received_differences(h_e, alphabet)
    q = np.real(np.einsum("ijr,rs,ijs->ij", hd.conj(), c_inv, hd))
    q = np.maximum(q, 0.0)
    np.fill_diagonal(q, 0.0)
    return QSet(q=q, pinv_used=pinv_used)


def kappa_tilde_e(beta: float, qset: QSet) -> float:
    """High-SNR eavesdropper surrogate log2 sum_mk exp(-beta q_mk / (4(1-beta))).

    Convex in beta on [0, 1); has a pole at beta = 1.
    """
    if not 0.0 <= beta < 1.0:
        raise ConfigurationError(f"beta must lie in [0, 1), got {beta}")
    exponents = -beta * qset.q / (4.0 * (1.0 - beta))
    return float(logsumexp(exponents)) / _LN2


def kappa_tilde_e_prime(beta: float, qset: QSet) -> float:
    """Exact derivative of kappa_tilde_e with respect to beta.

    d/dbeta log2 S = S' / (ln 2 * S), evaluated with a shared max-shift so the
    ratio stays finite at any SNR. Always <= 0 since q_mk >= 0.
    """
    if not 0.0 <= beta < 1.0:
        raise ConfigurationError(f"beta must lie in [0, 1), got {beta}")
    exponents = -beta * qset.q / (4.0 * (1.0 - beta))
    shift = np.max(exponents)
    weights = np.exp(exponents - shift)
    coeff = -qset.q / (4.0 * (1.0 - beta) ** 2)
    return float(np.sum(coeff * weights) / (_LN2 * np.sum(weights)))
