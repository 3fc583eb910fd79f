#!/usr/bin/env python
# Measurements on trajectories and their ensemble statistics
#
# Copyright (c) 2026, the toricca developers
# All rights reserved.
# Licensed under BSD-style license.  See LICENSE.txt for details.

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from toricca.streams import bootstrap_stream
from toricca.walker import decode, has_logical_error, logical_error


class ObservableError(RuntimeError):
    pass


BOOTSTRAP_RESAMPLES = 1000
CONFIDENCE = 0.95


@dataclass(frozen=True)
class Measurement:
    time: float
    trajectory: int
    L: int
    anyon_density: float
    depth: int
    logical_bits: Tuple[int, int]

    @property
    def depth_normalized(self):
        return self.depth / float(self.L * self.L)

    @property
    def failed(self):
        return has_logical_error(self.logical_bits)


@dataclass(frozen=True)
class ObservableStats:
    mean: float
    variance: float
    stderr: float
    ci_lo: float
    ci_hi: float
    # bootstrap standard error of the variance estimate
    variance_stderr: float = math.nan

    @classmethod
    def exact(cls, value, variance=0.0):
        """Stats of a noiseless value, for injecting synthetic data"""
        return cls(value, variance, 0.0, value, value, 0.0)

    def ci_width(self):
        return self.ci_hi - self.ci_lo


@dataclass(frozen=True)
class EnsembleStats:
    time: float
    L: int
    count: int
    anyon_density: ObservableStats
    # mean(d)/L^2, and Var(d)/L^2 in the variance slot
    depth: ObservableStats
    p_eps: ObservableStats
    # fewer than two samples: variances and intervals are undefined
    undefined: bool = False

    @property
    def depth_variance(self):
        return self.depth.variance


def measure(state, geo=None, time=None):
    """
    Observe a trajectory without touching its state.  Logical bits are
    taken relative to the logical sector the trajectory started in.
    """
    if geo is None:
        geo = state.geo
    frame = state.frame
    result = decode(frame, geo)
    bit0, bit1 = logical_error(frame, geo, result)
    start0, start1 = state.initial_logical
    return Measurement(time=state.t if time is None else float(time),
                       trajectory=state.index,
                       L=geo.L,
                       anyon_density=frame.anyon_count /
                       float(geo.plaquette_count),
                       depth=result.depth,
                       logical_bits=(bit0 ^ start0, bit1 ^ start1))


def bootstrap_stats(samples, rng, resamples=BOOTSTRAP_RESAMPLES,
                    confidence=CONFIDENCE, scale=1.0):
    """
    Mean, unbiased variance and percentile bootstrap interval of the mean.
    The variance (and its bootstrap error) is multiplied by scale.
    """
    data = np.asarray(samples, dtype=np.float64)
    n = data.size
    if n == 0:
        raise ObservableError("no samples")
    mean = float(data.mean())
    if n < 2:
        return ObservableStats(mean, math.nan, math.nan, math.nan, math.nan)
    variance = float(data.var(ddof=1))
    index = rng.integers(0, n, size=(resamples, n))
    resampled = data[index]
    means = resampled.mean(axis=1)
    variances = resampled.var(axis=1, ddof=1)
    tail = 50.0 * (1.0 - confidence)
    lo, hi = np.percentile(means, [tail, 100.0 - tail])
    return ObservableStats(mean=mean,
                           variance=variance * scale,
                           stderr=float(means.std(ddof=1)),
                           ci_lo=min(float(lo), mean),
                           ci_hi=max(float(hi), mean),
                           variance_stderr=float(variances.std(ddof=1)) *
                           scale)


def aggregate(measurements, seed=0, resamples=BOOTSTRAP_RESAMPLES):
    """
    Group measurements by time and reduce every group to EnsembleStats.
    Groups are ordered by time and samples by trajectory id, so the result
    does not depend on the order of the input list.
    """
    groups = defaultdict(list)
    for m in measurements:
        groups[m.time].append(m)
    result = []
    for group, time in enumerate(sorted(groups)):
        rows = sorted(groups[time], key=lambda m: m.trajectory)
        sizes = set(m.L for m in rows)
        if len(sizes) != 1:
            raise ObservableError("mixed lattice sizes at t=%g" % time)
        L = sizes.pop()
        area = float(L * L)
        rng = bootstrap_stream(seed, group)
        density = bootstrap_stats([m.anyon_density for m in rows], rng,
                                  resamples)
        # Var(d)/L^2 = Var(d/L^2) * L^2
        depth = bootstrap_stats([m.depth_normalized for m in rows], rng,
                                resamples, scale=area)
        failures = bootstrap_stats([1.0 if m.failed else 0.0 for m in rows],
                                   rng, resamples)
        result.append(EnsembleStats(time=time, L=L, count=len(rows),
                                    anyon_density=density, depth=depth,
                                    p_eps=failures,
                                    undefined=len(rows) < 2))
    return result


def combined_sigma(a, b):
    """Combined bootstrap standard error of the difference of two means"""
    return math.sqrt(a.stderr ** 2 + b.stderr ** 2)


def final_stats(stats) -> Optional[EnsembleStats]:
    """Stats at the last measurement time (the steady-state estimate)"""
    if not stats:
        return None
    return stats[-1]
