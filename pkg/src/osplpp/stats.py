"""Thin wrappers over scipy's goodness-of-fit tests that return TestReports."""

from __future__ import annotations

import numpy as np
from scipy import stats

from .report import TestReport

ALPHA = 1e-3


def ecdf(samples, t):
    """Fraction of samples <= t (vectorised over t)."""
    s = np.sort(np.asarray(samples, dtype=float))
    if s.size == 0:
        raise ValueError("empty sample")
    return np.searchsorted(s, t, side="right") / s.size


def ks_two_sample(a, b, name: str = "ks", alpha: float = ALPHA) -> TestReport:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise ValueError("empty sample")
    res = stats.ks_2samp(a, b)
    p = float(res.pvalue)
    return TestReport(name=name, statistics={"D": float(res.statistic), "p": p},
                      thresholds={"alpha": alpha}, passed=p > alpha,
                      sample_sizes={"lhs": int(a.size), "rhs": int(b.size)})


def ks_one_sample(a, cdf, name: str = "ks1", alpha: float = ALPHA) -> TestReport:
    a = np.asarray(a, dtype=float)
    res = stats.kstest(a, cdf)
    p = float(res.pvalue)
    return TestReport(name=name, statistics={"D": float(res.statistic), "p": p},
                      thresholds={"alpha": alpha}, passed=p > alpha, sample_sizes={"n": int(a.size)})


def chi_square(observed, expected, name: str = "chi2", alpha: float = ALPHA, min_expected: float = 5.0) -> TestReport:
    """Pearson goodness of fit; ``expected`` may be probabilities or counts.

    Cells with expected count below ``min_expected`` are pooled into one.
    """
    obs = np.asarray(observed, dtype=float)
    exp = np.asarray(expected, dtype=float)
    if obs.size == 0:
        raise ValueError("empty input")
    exp = exp * obs.sum() / exp.sum()
    small = exp < min_expected
    if small.any() and small.sum() < small.size:
        obs = np.append(obs[~small], obs[small].sum())
        exp = np.append(exp[~small], exp[small].sum())
    res = stats.chisquare(obs, exp)
    p = float(res.pvalue)
    return TestReport(name=name, statistics={"chi2": float(res.statistic), "p": p, "cells": int(obs.size)},
                      thresholds={"alpha": alpha}, passed=p > alpha, sample_sizes={"n": int(obs.sum())})


def sign_test(diff, name: str = "sign", alpha: float = ALPHA) -> TestReport:
    d = np.asarray(diff, dtype=float)
    pos, neg = int((d > 0).sum()), int((d < 0).sum())
    p = float(stats.binomtest(pos, pos + neg, 0.5).pvalue)
    return TestReport(name=name, statistics={"positive": pos, "negative": neg, "p": p},
                      thresholds={"alpha": alpha}, passed=p > alpha, sample_sizes={"n": pos + neg})


def mean_within_sigma(samples, mean: float, k: float = 3.0, name: str = "mean") -> TestReport:
    s = np.asarray(samples, dtype=float)
    se = s.std(ddof=1) / np.sqrt(s.size)
    z = (s.mean() - mean) / se
    return TestReport(name=name, statistics={"mean": float(s.mean()), "se": float(se), "z": float(z)},
                      thresholds={"abs_z": k}, passed=abs(z) <= k, sample_sizes={"n": int(s.size)})
