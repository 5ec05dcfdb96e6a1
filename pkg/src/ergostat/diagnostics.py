"""Indicator ergodic-average diagnostics.

For a threshold x, the process (I(X_n <= x), n >= 1) has autocovariance
c_x(i); summability of c_x(i)/i is the dependence condition under which
time averages of the indicators still converge to F(x). This module
estimates c_x(i) by the plug-in formula, accumulates the weighted partial
sums S_m = sum_{i<=m} c_hat(i)/i, and reports how flat the partial sums are
over the last quarter of the lag range.

The report is a DIAGNOSTIC: bounded partial sums over finitely many lags
cannot prove the series converges; the statistic only flags divergence-like
growth. A non-ergodic process whose paths are individually degenerate (for
example a constant sequence redrawn per realization) shows up only if the
sample mixes several independent realizations, because a single path
carries no ensemble variation; the `diagnose` driver therefore concatenates
replications.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DIAGNOSTIC_NOTE = (
    "DIAGNOSTIC: bounded partial sums over finitely many lags cannot prove "
    "summability; the tail-flatness statistic only flags divergence-like growth."
)

FLATNESS_FLAG_LEVEL = 0.05  # calibrated against the iid null


def empirical_cdf(xs, x: float) -> float:
    """Fraction of the sample at or below x."""
    arr = np.asarray(xs, dtype=float)
    if arr.size == 0:
        raise ValueError("empty sample")
    return float(np.count_nonzero(arr <= x)) / arr.size


def autocov_indicator(xs, x: float, i: int) -> float:
    """Plug-in autocovariance of (I(X_t <= x)) at lag i.

    (1/(n-i)) sum_t I(x_t <= x) I(x_{t+i} <= x) - Fhat(x)^2, with Fhat the
    empirical cdf of the whole sample.
    """
    arr = np.asarray(xs, dtype=float)
    n = arr.size
    if n == 0:
        raise ValueError("empty sample")
    if not 0 <= i < n:
        raise ValueError(f"lag {i} out of range for sample of length {n}")
    ind = (arr <= x).astype(float)
    fhat = ind.mean()
    if i == 0:
        return float(ind.mean() - fhat * fhat)
    return float(ind[: n - i] @ ind[i:] / (n - i) - fhat * fhat)


def autocov_profile(xs, x: float, max_lag: int) -> np.ndarray:
    """autocov_indicator at lags 1..max_lag, batched through one FFT.

    Same estimator as the per-lag function (the tests pin the agreement);
    the FFT only accelerates the raw lagged sums.
    """
    arr = np.asarray(xs, dtype=float)
    n = arr.size
    if not 1 <= max_lag < n:
        raise ValueError(f"max_lag {max_lag} out of range for sample of length {n}")
    ind = (arr <= x).astype(float)
    fhat = ind.mean()
    size = 1
    while size < 2 * n:
        size <<= 1
    spec = np.fft.rfft(ind, size)
    raw = np.fft.irfft(spec * np.conj(spec), size)[: max_lag + 1]
    lags = np.arange(1, max_lag + 1)
    return raw[1:] / (n - lags) - fhat * fhat


@dataclass(frozen=True)
class AutocovReport:
    """Per-threshold summability diagnostic."""

    x: float
    lags: tuple[int, ...]
    c_hat: tuple[float, ...]
    partial_sums: tuple[float, ...]
    tail_flatness: float
    flagged: bool
    note: str = DIAGNOSTIC_NOTE

    def to_json(self) -> dict:
        return {
            "x": self.x,
            "lags": list(self.lags),
            "c_hat": list(self.c_hat),
            "partial_sums": list(self.partial_sums),
            "tail_flatness": self.tail_flatness,
            "flagged": self.flagged,
            "note": self.note,
        }


def summability_diagnostic(xs, x: float, max_lag: int) -> AutocovReport:
    """Weighted partial sums S_m = sum_{i<=m} c_hat(i)/i with tail flatness.

    Tail flatness is max S - min S over the last quarter of the lag range;
    values above FLATNESS_FLAG_LEVEL indicate harmonic-like growth of the
    partial sums, the signature of a non-summable autocovariance.
    """
    arr = np.asarray(xs, dtype=float)
    n = arr.size
    if n == 0:
        raise ValueError("empty sample")
    if not max_lag < n / 10:
        raise ValueError(f"max_lag must be < n/10 = {n / 10}, got {max_lag}")
    if max_lag < 4:
        raise ValueError("need at least 4 lags for a tail window")
    c = autocov_profile(arr, x, max_lag)
    lags = np.arange(1, max_lag + 1)
    partial = np.cumsum(c / lags)
    tail_start = int(np.ceil(0.75 * max_lag)) - 1
    tail = partial[tail_start:]
    flatness = float(tail.max() - tail.min())
    return AutocovReport(
        x=float(x),
        lags=tuple(int(i) for i in lags),
        c_hat=tuple(float(v) for v in c),
        partial_sums=tuple(float(v) for v in partial),
        tail_flatness=flatness,
        flagged=flatness > FLATNESS_FLAG_LEVEL,
    )


def default_thresholds(xs, quantiles=(0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)):
    """Empirical-quantile threshold grid (the support cannot be swept densely)."""
    arr = np.asarray(xs, dtype=float)
    if arr.size == 0:
        raise ValueError("empty sample")
    return [float(v) for v in np.quantile(arr, quantiles)]
