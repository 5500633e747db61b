"""Signal-model building blocks: constellations, transmit alphabet, random
channels, AN shaping matrix, and the AN-plus-noise whitening transform."""

from dataclasses import dataclass

import numpy as np

from .errors import CapabilityError, ConfigurationError, NumericError


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def as_generator(rng) -> np.random.Generator:
    """Accept an int seed, a SeedSequence, or a Generator and return a Generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


@dataclass(frozen=True)
class SystemConfig:
    """Static system parameters: antenna counts, constellation size, powers.

    n_t/n_r/n_e are the transmit, legitimate-receive and eavesdropper-receive
    antenna counts; m is the constellation order; p the total transmit power;
    sigma2_b/sigma2_e the receiver noise variances (all linear units).
    """

    n_t: int
    n_r: int
    n_e: int
    m: int
    p: float = 1.0
    sigma2_b: float = 1.0
    sigma2_e: float = 1.0

    def __post_init__(self):
        if not _is_power_of_two(self.n_t):
            raise ConfigurationError(f"n_t must be a power of two, got {self.n_t}")
        if not _is_power_of_two(self.m) or self.m < 2:
            raise ConfigurationError(f"m must be a power of two >= 2, got {self.m}")
        if self.n_r < 1 or self.n_e < 1:
            raise ConfigurationError("antenna counts must be >= 1")
        if self.p <= 0 or self.sigma2_b <= 0 or self.sigma2_e <= 0:
            raise ConfigurationError("p and noise variances must be positive")

    @property
    def n_sym(self) -> int:
        """Number of transmit vectors (antenna-symbol combinations)."""
        return self.n_t * self.m

    @property
    def bits_per_use(self) -> float:
        return float(np.log2(self.n_sym))


@dataclass(frozen=True)
class Constellation:
    """Ordered unit-mean-energy symbol set."""

    symbols: np.ndarray  # shape (m,), complex

    @property
    def m(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True)
class TransmitAlphabet:
    """All n_t*m single-active-antenna transmit vectors, antenna-major order."""

    vectors: np.ndarray  # shape (n_t*m, n_t), complex

    @property
    def size(self) -> int:
        return self.vectors.shape[0]

    def differences(self) -> np.ndarray:
        """Pairwise difference tensor d[i, j] = x_i - x_j, shape (K, K, n_t)."""
        v = self.vectors
        return v[:, None, :] - v[None, :, :]


@dataclass(frozen=True)
class ChannelPair:
    """One realization of the legitimate and eavesdropper channel matrices."""

    h_b: np.ndarray  # (n_r, n_t)
    h_e: np.ndarray  # (n_e, n_t)


@dataclass(frozen=True)
class AnProjector:
    """AN shaping matrix with unit trace-energy, tr(T T^H) = 1."""

    t: np.ndarray  # (n_t, n_t)
    mode: str  # "null-space" or "isotropic"


@dataclass(frozen=True)
class Whitener:
    """AN-plus-noise covariance and its inverse principal square root."""

    w: np.ndarray
    w_inv_sqrt: np.ndarray
    w_inv: np.ndarray
    side: str  # "bob" or "eve"


def _gray_sequence(n: int) -> list:
    return [i ^ (i >> 1) for i in range(n)]


def build_constellation(scheme: str, m: int) -> Constellation:
    """Build a unit-mean-energy PSK or square-QAM constellation.

    PSK points are equally spaced on the unit circle; for m=4 the first point
    sits at angle pi/4 (Gray QPSK convention). QAM uses a Gray-scanned square
    grid normalized to unit mean energy; non-square orders are rejected.
    """
    if not _is_power_of_two(m) or m < 2:
        raise ConfigurationError(f"constellation size must be a power of two >= 2, got {m}")
    if scheme == "psk":
        offset = np.pi / 4 if m == 4 else 0.0
        angles = offset + 2 * np.pi * np.arange(m) / m
        symbols = np.exp(1j * angles)
        if m == 2:
            symbols = np.array([1.0 + 0j, -1.0 + 0j])
        return Constellation(symbols=symbols)
    if scheme == "qam":
        side = int(round(np.sqrt(m)))
        if side * side != m:
            raise ConfigurationError(f"square QAM requires a square order, got m={m}")
        levels = np.arange(side) * 2.0 - (side - 1)  # ..., -3, -1, 1, 3, ...
        gray = _gray_sequence(side)
        pts = np.array(
            [levels[gi] + 1j * levels[gq] for gi in gray for gq in gray]
        )
        pts = pts / np.sqrt(np.mean(np.abs(pts) ** 2))
        return Constellation(symbols=pts)
    raise ConfigurationError(f"unknown modulation scheme: {scheme!r}")


def build_alphabet(cfg: SystemConfig, constellation: Constellation) -> TransmitAlphabet:
    """Enumerate all e_i * b_j transmit vectors, antenna-major then symbol index."""
    if constellation.m != cfg.m:
        raise ConfigurationError(
            f"constellation order {constellation.m} does not match config m={cfg.m}"
        )
    vectors = np.zeros((cfg.n_t * cfg.m, cfg.n_t), dtype=complex)
    for i in range(cfg.n_t):
        for j in range(cfg.m):
            vectors[i * cfg.m + j, i] = constellation.symbols[j]
    return TransmitAlphabet(vectors=vectors)


def generate_channel(rng, cfg: SystemConfig) -> ChannelPair:
    """Draw one i.i.d. CN(0, 1) channel pair (Bob first, then Eve)."""
    g = as_generator(rng)

    def draw(rows, cols):
        return (g.standard_normal((rows, cols)) + 1j * g.standard_normal((rows, cols))) / np.sqrt(2)

    h_b = draw(cfg.n_r, cfg.n_t)
    h_e = draw(cfg.n_e, cfg.n_t)
    return ChannelPair(h_b=h_b, h_e=h_e)


def build_an_projector(h_b: np.ndarray, mode: str = "null-space") -> AnProjector:
    """Build the AN shaping matrix T with tr(T T^H) = 1.

    null-space mode: T = V V^H / sqrt(n_t - n_r) with V an orthonormal basis
    of the null space of h_b, so the AN is invisible to the legitimate
    receiver. isotropic mode: T = I / sqrt(n_t).
    """
    n_r, n_t = h_b.shape
    if mode == "isotropic":
        return AnProjector(t=np.eye(n_t, dtype=complex) / np.sqrt(n_t), mode=mode)
    if mode != "null-space":
        raise ConfigurationError(f"unknown AN projector mode: {mode!r}")
    if n_t <= n_r:
        raise CapabilityError(
            f"null-space AN requires n_t > n_r, got n_t={n_t}, n_r={n_r}"
        )
    _, _, vh = np.linalg.svd(h_b)
    v_null = vh[n_r:].conj().T  # (n_t, n_t - n_r)
    t = (v_null @ v_null.conj().T) / np.sqrt(n_t - n_r)
    return AnProjector(t=t, mode=mode)


def build_whitener(h: np.ndarray, t: AnProjector, beta: float, cfg: SystemConfig,
                   side: str) -> Whitener:
    """Covariance of AN plus noise, W = (1-beta) P (HT)(HT)^H + sigma^2 I,
    together with W^{-1/2} and W^{-1} from a Hermitian eigendecomposition.

    Eigenvalues are floored at 1e-12 * sigma^2 to guard numerically
    semidefinite AN covariances.
    """
    if not 0.0 <= beta <= 1.0:
        raise ConfigurationError(f"beta must lie in [0, 1], got {beta}")
    if side == "bob":
        sigma2 = cfg.sigma2_b
    elif side == "eve":
        sigma2 = cfg.sigma2_e
    else:
        raise ConfigurationError(f"unknown whitener side: {side!r}")
    ht = h @ t.t
    w = (1.0 - beta) * cfg.p * (ht @ ht.conj().T) + sigma2 * np.eye(h.shape[0])
    if not np.all(np.isfinite(w)):
        raise NumericError("non-finite entries in AN-plus-noise covariance")
    evals, evecs = np.linalg.eigh(w)
    evals = np.maximum(evals, 1e-12 * sigma2)
    w_inv_sqrt = (evecs / np.sqrt(evals)) @ evecs.conj().T
    w_inv = (evecs / evals) @ evecs.conj().T
    return Whitener(w=w, w_inv_sqrt=w_inv_sqrt, w_inv=w_inv, side=side)
