#!/usr/bin/env python
# Ensembles, threshold location and the gamma3 - gamma1 phase diagram
#
# Copyright (c) 2026, the toricca developers
# All rights reserved.
# Licensed under BSD-style license.  See LICENSE.txt for details.
#
# All rates are in units of gamma2.

from __future__ import annotations

import dataclasses
import functools
import logging
import math
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from joblib import Parallel, delayed

from toricca.cafield import SYNC, UPDATE_MODES
from toricca.jumps import (DEFAULT_GRID_SIZE, EventTrace, RatesConfig,
                           measurement_grid, new_trajectory, run_until)
from toricca.observables import (EnsembleStats, aggregate, combined_sigma,
                                 final_stats, measure)
from toricca.pauliframe import GROUND, INIT_MODES, MIXED, save_snapshot
from toricca.streams import make_streams
from toricca.torus import TorusGeometry

log = logging.getLogger(__name__)


class HarnessError(RuntimeError):
    pass


P_EPS = 'p_eps'
DEPTH_VAR = 'depth_var'
CRITERIA = (P_EPS, DEPTH_VAR)

CENSORED_LOWER = 'lower'
CENSORED_UPPER = 'upper'
CENSORED_BUDGET = 'budget'


@dataclass(frozen=True)
class ExperimentPlan:
    sizes: Tuple[int, ...] = (8, 16)
    gamma1_grid: Tuple[float, ...] = (1e-3, 3e-3, 1e-2, 3e-2, 1e-1)
    gamma2: float = 1.0
    gamma3_list: Tuple[float, ...] = (10.0,)
    trajectories: int = 200
    c: float = 1.0
    seed: int = 0
    grid_size: int = DEFAULT_GRID_SIZE
    field_update: str = SYNC
    init_mode: str = GROUND
    criterion: str = P_EPS
    depth_floor: float = 1e-3
    workers: int = 1
    # estimated events per sweep point; None means unlimited
    event_budget: Optional[float] = None
    bisection_ratio: float = 1.3
    max_bisections: int = 20
    # overrides steady_state_time when set
    t_max: Optional[float] = None

    def __post_init__(self):
        if self.trajectories < 2:
            raise HarnessError("need at least 2 trajectories per point")
        if not self.c > 0:
            raise HarnessError("steady-state constant c must be positive")
        if any(L < 3 for L in self.sizes):
            raise HarnessError("lattice sizes must be at least 3")
        if self.gamma2 < 0:
            raise HarnessError("gamma2 must be nonnegative")
        if self.field_update not in UPDATE_MODES:
            raise HarnessError("unknown field update mode: %s" %
                               self.field_update)
        if self.init_mode not in INIT_MODES:
            raise HarnessError("unknown init mode: %s" % self.init_mode)
        if self.criterion not in CRITERIA:
            raise HarnessError("unknown criterion: %s" % self.criterion)
        if not self.bisection_ratio > 1:
            raise HarnessError("bisection ratio must exceed 1")

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


@dataclass
class SweepPoint:
    L: int
    gamma1: float
    gamma2: float
    gamma3: float
    t_max: float
    trajectories: int
    stats: List[EnsembleStats] = field(default_factory=list)
    completed: int = 0
    elapsed: float = 0.0
    skipped: bool = False

    @property
    def complete(self):
        return not self.skipped and self.completed == self.trajectories

    @property
    def final(self):
        return final_stats(self.stats)


@dataclass(frozen=True)
class CriticalPoint:
    gamma3: float
    gamma1_c: float
    ci_lo: float
    ci_hi: float
    criterion: str
    sizes: Tuple[int, int]
    gamma2: float = 1.0
    censored: Optional[str] = None
    points: Tuple[SweepPoint, ...] = field(default=(), compare=False,
                                           repr=False)

    @property
    def ratio(self):
        return self.gamma1_c / self.gamma2 if self.gamma2 else math.nan


def steady_state_time(L, gamma1, c=1.0, gamma2=1.0):
    """t_max = c L^4 / gamma1, the time logical errors take to appear"""
    if gamma1 > 0:
        return c * L ** 4 / gamma1
    if gamma2 > 0:
        return c * L ** 4 / gamma2
    raise HarnessError("no time scale: gamma1 and gamma2 are both zero")


def estimate_events(L, rates, t_max, trajectories, init_mode=GROUND):
    """Rough event count of a sweep point, from the initial total rate"""
    geo = _geometry(L)
    rate = rates.gamma1 * geo.edge_count + rates.sweep_rate(geo)
    if init_mode == MIXED:
        rate += rates.gamma2 * geo.plaquette_count / 2.0
    return rate * t_max * trajectories


@functools.lru_cache(maxsize=None)
def _geometry(L):
    return TorusGeometry(L)


def run_trajectory(L, rates, t_max, times, seed, index, init_mode=GROUND,
                   trace_path=None, dump_path=None, snapshot_path=None):
    """One trajectory, measured on the given time grid"""
    geo = _geometry(L)
    state = new_trajectory(geo, rates, make_streams(seed, index), init_mode,
                           index=index)
    measurements = []

    def observer(when, current):
        measurements.append(measure(current, geo, when))

    if trace_path is not None:
        with EventTrace(trace_path) as trace:
            run_until(state, t_max, [observer], times, trace=trace)
    else:
        run_until(state, t_max, [observer], times)
    if dump_path is not None:
        state.field.dump(dump_path)
    if snapshot_path is not None:
        save_snapshot(state.frame, state.t, snapshot_path)
    log.debug("trajectory %i: %s events %s", index,
              state.get_event_count(), state.counts)
    return measurements


def _guarded_trajectory(*args):
    try:
        return run_trajectory(*args)
    except Exception:
        log.exception("trajectory %i failed", args[5])
        return None


def run_ensemble(plan, L, gamma1, gamma3):
    rates = RatesConfig(gamma1, plan.gamma2, gamma3, plan.field_update)
    if plan.t_max is not None:
        t_max = plan.t_max
    else:
        t_max = steady_state_time(L, gamma1, plan.c, plan.gamma2)
    point = SweepPoint(L=L, gamma1=gamma1, gamma2=plan.gamma2, gamma3=gamma3,
                       t_max=t_max, trajectories=plan.trajectories)
    if plan.event_budget is not None:
        events = estimate_events(L, rates, t_max, plan.trajectories,
                                 plan.init_mode)
        if events > plan.event_budget:
            log.warning("skipping L=%i gamma1=%g gamma3=%g: ~%.3g events "
                        "exceeds budget %.3g", L, gamma1, gamma3, events,
                        plan.event_budget)
            point.skipped = True
            return point

    times = measurement_grid(t_max, plan.grid_size)
    start = time.perf_counter()
    results = Parallel(n_jobs=plan.workers)(
        delayed(_guarded_trajectory)(L, rates, t_max, times, plan.seed, i,
                                     plan.init_mode)
        for i in range(plan.trajectories))
    point.elapsed = time.perf_counter() - start

    measurements = []
    for result in results:
        if result is not None:
            point.completed += 1
            measurements.extend(result)
    if measurements:
        point.stats = aggregate(measurements, seed=plan.seed)
    if not point.complete:
        log.warning("L=%i gamma1=%g gamma3=%g incomplete: %i of %i "
                    "trajectories", L, gamma1, gamma3, point.completed,
                    plan.trajectories)
    final = point.final
    log.info("L=%i gamma1=%g gamma3=%g N=%i t_max=%g: p_eps=%s (%.1fs)",
             L, gamma1, gamma3, point.completed, t_max,
             final.p_eps.mean if final else None, point.elapsed)
    return point


class _PointSkipped(Exception):
    pass


class CriterionEvaluator(object):
    """
    Sign function of the bisection.  value(gamma1) <= 0 on the
    self-correcting side:
      p_eps:     p_eps(L_large) - p_eps(L_small)
      depth_var: Var(d)/L^2 at L_large minus the floor
    measure_point(L, gamma1, gamma3) -> EnsembleStats can replace the
    simulation, e.g. with synthetic curves.
    """

    def __init__(self, plan, gamma3, sizes, measure_point=None):
        self.plan = plan
        self.gamma3 = gamma3
        self.sizes = sizes
        self.points = []
        self._cache = {}
        self._measure_point = measure_point or self._simulate

    def _simulate(self, L, gamma1, gamma3):
        point = run_ensemble(self.plan, L, gamma1, gamma3)
        self.points.append(point)
        if point.skipped or point.final is None:
            raise _PointSkipped()
        return point.final

    def stats(self, L, gamma1):
        key = (L, gamma1)
        if key not in self._cache:
            self._cache[key] = self._measure_point(L, gamma1, self.gamma3)
        return self._cache[key]

    def value(self, gamma1):
        """(value, sigma) of the sign function"""
        small, large = self.sizes
        if self.plan.criterion == DEPTH_VAR:
            stats = self.stats(large, gamma1)
            return (stats.depth.variance - self.plan.depth_floor,
                    stats.depth.variance_stderr)
        lo = self.stats(small, gamma1)
        hi = self.stats(large, gamma1)
        return hi.p_eps.mean - lo.p_eps.mean, combined_sigma(hi.p_eps,
                                                              lo.p_eps)


def _unresolved(value, sigma):
    # 95% interval of the difference contains zero
    if math.isnan(sigma):
        return False
    return abs(value) <= 1.96 * sigma


def locate_critical_gamma1(plan, gamma3, sizes=None, measure_point=None):
    """
    Scan plan.gamma1_grid upwards for the first sign change of the criterion,
    then bisect in log gamma1 until the bracket is narrower than
    plan.bisection_ratio or the difference is unresolved at both ends.
    """
    if sizes is None:
        sizes = tuple(sorted(plan.sizes)[:1] + sorted(plan.sizes)[-1:])
    sizes = tuple(sizes)
    if len(sizes) != 2 or not sizes[0] < sizes[1]:
        raise HarnessError("need a size pair L_small < L_large, got %s" %
                           (sizes,))
    grid = sorted(plan.gamma1_grid)
    if not grid or grid[0] <= 0:
        raise HarnessError("gamma1 grid must be nonempty and positive")

    evaluator = CriterionEvaluator(plan, gamma3, sizes, measure_point)

    def result(gamma1_c, lo, hi, censored=None):
        return CriticalPoint(gamma3=gamma3, gamma1_c=gamma1_c, ci_lo=lo,
                             ci_hi=hi, criterion=plan.criterion, sizes=sizes,
                             gamma2=plan.gamma2, censored=censored,
                             points=tuple(evaluator.points))

    try:
        previous = None
        for gamma1 in grid:
            value, sigma = evaluator.value(gamma1)
            if value > 0:
                break
            previous = (gamma1, value, sigma)
        else:
            log.info("gamma3=%g: no crossing up to gamma1=%g", gamma3,
                     grid[-1])
            return result(grid[-1], grid[-1], math.inf, CENSORED_UPPER)
        if previous is None:
            log.info("gamma3=%g: crossing below gamma1=%g", gamma3, grid[0])
            return result(grid[0], 0.0, grid[0], CENSORED_LOWER)

        lo, lo_value, lo_sigma = previous
        hi, hi_value, hi_sigma = gamma1, value, sigma
        for _ in range(plan.max_bisections):
            if hi / lo < plan.bisection_ratio:
                break
            if (_unresolved(lo_value, lo_sigma) and
                    _unresolved(hi_value, hi_sigma)):
                break
            mid = math.sqrt(lo * hi)
            value, sigma = evaluator.value(mid)
            if value > 0:
                hi, hi_value, hi_sigma = mid, value, sigma
            else:
                lo, lo_value, lo_sigma = mid, value, sigma
            log.info("gamma3=%g: bracket [%g, %g]", gamma3, lo, hi)
    except _PointSkipped:
        return result(math.nan, math.nan, math.nan, CENSORED_BUDGET)
    return result(math.sqrt(lo * hi), lo, hi)


def phase_diagram(plan, gamma3_list, sizes=None, measure_point=None):
    if not gamma3_list:
        raise HarnessError("empty gamma3 list")
    rows = []
    for gamma3 in sorted(gamma3_list):
        critical = locate_critical_gamma1(plan, gamma3, sizes, measure_point)
        log.info("gamma3=%g: gamma1_c=%g [%g, %g] %s", gamma3,
                 critical.gamma1_c, critical.ci_lo, critical.ci_hi,
                 critical.censored or '')
        rows.append(critical)
    return rows


def is_saturated(stats):
    """p_eps moved by less than 2 combined sigma over the last grid step"""
    if len(stats) < 2:
        return False
    prev, last = stats[-2].p_eps, stats[-1].p_eps
    change = abs(last.mean - prev.mean)
    return change == 0 or change < 2 * combined_sigma(last, prev)


def calibrate_steady_state_constant(plan, L=8, gamma1=0.05, c_start=None,
                                    max_doublings=4, gamma3=None,
                                    points=None):
    """
    Double c, starting from c_start (plan.c by default), until p_eps(t)
    saturates on the measurement grid.  Returns (c, saturated); the sweep
    points run on the way are appended to points if given.
    """
    if gamma3 is None:
        gamma3 = plan.gamma3_list[0]
    c = plan.c if c_start is None else c_start
    for _ in range(max_doublings + 1):
        point = run_ensemble(plan.replace(c=c, t_max=None), L, gamma1, gamma3)
        if points is not None:
            points.append(point)
        if is_saturated(point.stats):
            log.info("c=%g saturates at L=%i gamma1=%g", c, L, gamma1)
            return c, True
        log.info("c=%g not saturated at L=%i gamma1=%g", c, L, gamma1)
        c *= 2
    return c / 2, False
