"""Ensemble magnetization statistics over n independent molecules.

Each molecule contributes +1 or -1 to the total Z magnetization of a spin,
so the total is ``2 X - n`` with ``X ~ Binomial(n, p)``. Tail probabilities
are returned as base-10 logarithms because at realistic ensemble sizes they
underflow every floating point format.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import OutOfRangeError, TooLargeError
from .protocol import Message, occupation_probs

EXACT_MAX_N = 10**6
BINOMIAL_SAMPLER_MAX_N = 10**6
SAMPLER_MAX_N = 2**62
BATCH_SHOTS = 1 << 16
LN10 = math.log(10.0)


@dataclass(frozen=True)
class EnsembleStats:
    n: int
    mu_I: float
    mu_S: float
    sigma2_I: float
    sigma2_S: float
    rel_width_I: Optional[float]  # None when the mean is zero
    rel_width_S: Optional[float]


@dataclass(frozen=True)
class LogProbability:
    log10_p: float
    exact: bool
    # closed-form value exceeded 1 (approximation no longer meaningful)
    degenerate: bool = False

    @property
    def p(self):
        return 10.0**self.log10_p


def _check_n(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise OutOfRangeError(f"molecule count must be a positive integer, got {n!r}")
    return int(n)


def rel_width(n, eps):
    """sigma / |mu| for one spin; None when the mean vanishes."""
    n = _check_n(n)
    occupation_probs(eps)
    if eps == 0:
        return None
    return math.sqrt(n * (1.0 - eps * eps)) / (n * abs(eps))


def ensemble_stats(n, eps_I, eps_S, m):
    n = _check_n(n)
    m = Message.of(*m)
    occupation_probs(eps_I)
    occupation_probs(eps_S)
    return EnsembleStats(
        n=n,
        mu_I=(-1) ** m.z * n * eps_I,
        mu_S=(-1) ** m.x * n * eps_S,
        sigma2_I=n * (1.0 - eps_I * eps_I),
        sigma2_S=n * (1.0 - eps_S * eps_S),
        rel_width_I=rel_width(n, eps_I),
        rel_width_S=rel_width(n, eps_S),
    )


def error_prob_gaussian(n, eps):
    """Gaussian-tail estimate exp(-n eps^2 / 2) / (sqrt(2 pi n) eps), in log10.

    This is the DeMoivre-Laplace chain carried to its last step, with no
    continuity correction and with sigma approximated by sqrt(n).
    """
    n = _check_n(n)
    if not 0 < eps < 1:
        raise OutOfRangeError(f"closed form needs 0 < eps < 1, got {eps!r}")
    log10_p = -(n * eps * eps / 2.0) / LN10 - math.log10(math.sqrt(2 * math.pi * n) * eps)
    return LogProbability(log10_p, exact=False, degenerate=log10_p > 0)


def _log_binom_pmf(n, k, p):
    k = np.asarray(k, dtype=float)
    logc = gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)
    with np.errstate(divide="ignore"):
        lp = np.log(p) if p > 0 else -np.inf
        lq = np.log1p(-p) if p < 1 else -np.inf
    # 0 * log(0) must be 0, not nan
    term_p = np.where(k > 0, k * lp, 0.0)
    term_q = np.where(n - k > 0, (n - k) * lq, 0.0)
    return logc + term_p + term_q


def _exact_checks(n, eps):
    n = _check_n(n)
    if n > EXACT_MAX_N:
        raise TooLargeError(f"exact tail limited to n <= {EXACT_MAX_N}, got {n}")
    if not abs(eps) < 1:
        raise OutOfRangeError(f"exact tail needs |eps| < 1, got {eps!r}")
    return n


def error_prob_exact(n, eps):
    """log10 P(sum of n spins < 0) when each spin is +1 with probability (1+eps)/2.

    Equals the binomial lower tail P(X <= ceil(n/2) - 1). Ties (sum exactly
    zero) are not errors; see :func:`tie_prob_exact`.
    """
    n = _exact_checks(n, eps)
    p, _ = occupation_probs(eps)
    kmax = (n + 1) // 2 - 1
    logs = _log_binom_pmf(n, np.arange(kmax + 1), p)
    return LogProbability(float(logsumexp(logs)) / LN10, exact=True)


def tie_prob_exact(n, eps):
    """log10 P(sum == 0); -inf for odd n."""
    n = _exact_checks(n, eps)
    if n % 2:
        return LogProbability(-math.inf, exact=True)
    p, _ = occupation_probs(eps)
    return LogProbability(float(_log_binom_pmf(n, n // 2, p)) / LN10, exact=True)


def sampler_kind(n):
    return "binomial" if n <= BINOMIAL_SAMPLER_MAX_N else "gaussian"


def _batch_rng(seed, batch):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(batch,))))


def _sample_totals(rng, n, p, size):
    if n <= BINOMIAL_SAMPLER_MAX_N:
        k = rng.binomial(n, p, size=size)
    else:
        k = np.rint(rng.normal(n * p, math.sqrt(n * p * (1.0 - p)), size=size))
        k = np.clip(k, 0, n).astype(np.int64)
    return 2 * k.astype(np.int64) - n


def sample_magnetizations(n, eps_I, eps_S, m, seed, shots, workers=1):
    """Draw ``shots`` pairs (sum_I, sum_S) of total magnetizations.

    Shots are generated in fixed-size batches, batch ``b`` using a PCG64
    stream keyed by ``(seed, b)``, so the output depends only on the seed and
    not on ``workers``. Above ``BINOMIAL_SAMPLER_MAX_N`` molecules the
    binomial is replaced by its rounded normal approximation.

    Returns an int64 array of shape (shots, 2).
    """
    n = _check_n(n)
    if n > SAMPLER_MAX_N:
        raise TooLargeError(f"sampler limited to n <= 2**62, got {n}")
    if shots < 1:
        raise OutOfRangeError(f"shots must be >= 1, got {shots!r}")
    m = Message.of(*m)
    p_I, _ = occupation_probs((-1) ** m.z * eps_I)
    p_S, _ = occupation_probs((-1) ** m.x * eps_S)

    def run(batch):
        size = min(BATCH_SHOTS, shots - batch * BATCH_SHOTS)
        rng = _batch_rng(seed, batch)
        out = np.empty((size, 2), dtype=np.int64)
        out[:, 0] = _sample_totals(rng, n, p_I, size)
        out[:, 1] = _sample_totals(rng, n, p_S, size)
        return out

    batches = range(-(-shots // BATCH_SHOTS))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, batches))
    else:
        parts = [run(b) for b in batches]
    return np.concatenate(parts)


def decode_message(sums):
    """Read (z, x) off the signs of the totals; None if either total is 0."""
    s_I, s_S = sums
    if s_I == 0 or s_S == 0:
        return None
    return Message(int(s_I < 0), int(s_S < 0))


def decode_outcomes(samples, m):
    """Count correct, wrong and undecided decodings in a sample array."""
    samples = np.asarray(samples)
    tie = np.any(samples == 0, axis=1)
    want = np.array([(-1) ** m.z, (-1) ** m.x])
    correct = np.all(np.sign(samples) == want, axis=1)
    return {
        "correct": int(np.sum(correct)),
        "wrong": int(np.sum(~correct & ~tie)),
        "undecided": int(np.sum(tie)),
    }


def summarize_samples(samples):
    """Sample mean, variance and their standard errors for each column."""
    x = np.asarray(samples, dtype=float)
    k = x.shape[0]
    mean = x.mean(axis=0)
    var = x.var(axis=0, ddof=1) if k > 1 else np.zeros(x.shape[1])
    centered = x - mean
    m4 = np.mean(centered**4, axis=0)
    # standard error of the sample variance from the fourth central moment
    var_se = np.sqrt(np.maximum(m4 - var**2, 0.0) / k)
    return {
        "mean": mean,
        "var": var,
        "mean_se": np.sqrt(var / k),
        "var_se": var_se,
    }
