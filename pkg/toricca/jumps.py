#!/usr/bin/env python
# Event-driven (Gillespie) unraveling of the dissipative toric code dynamics
#
# Copyright (c) 2026, the toricca developers
# All rights reserved.
# Licensed under BSD-style license.  See LICENSE.txt for details.
#
# Three event classes, each with a uniform rate over its members:
#   pair creation  gamma1 per edge       sigma^x on a random edge
#   hop            gamma2 per anyon      anyon moves to its argmax neighbour
#   field sweep    gamma3 (sync)         whole-lattice CA update
#                  gamma3 per plaquette  (async) single-cell CA update
# so an event is drawn by picking the class, then a uniform member.  The
# event loop itself is compiled with numba and works in place on the frame
# and field arrays; the functions below it are the Python entry points.

import csv
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from toricca.cafield import (ASYNC, SYNC, UPDATE_MODES, CaField,
                             _sweep, _target_slot, _update_cell)
from toricca.pauliframe import COUNT, GROUND, flip_edge, new_frame
from toricca.walker import logical_error

log = logging.getLogger(__name__)


class JumpError(RuntimeError):
    pass


class FrozenError(JumpError):
    """Raised by step() when no process has a positive rate"""
    pass


PAIR_CREATION = 'pair_creation'
HOP = 'hop'
FIELD_SWEEP = 'field_sweep'
EVENT_KINDS = (PAIR_CREATION, HOP, FIELD_SWEEP)

# kernel codes: event kinds index EVENT_KINDS
_PAIR_CREATION, _HOP, _FIELD_SWEEP = 0, 1, 2
_EVENTS, _LIMIT, _FROZEN = 0, 1, 2

DEFAULT_GRID_SIZE = 32


@dataclass(frozen=True)
class RatesConfig:
    gamma1: float
    gamma2: float = 1.0
    gamma3: float = 0.0
    field_update: str = SYNC

    def __post_init__(self):
        for name in ('gamma1', 'gamma2', 'gamma3'):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise JumpError("%s must be a nonnegative number, got %r" %
                                (name, value))
        if self.field_update not in UPDATE_MODES:
            raise JumpError("unknown field update mode: %s" %
                            self.field_update)

    def sweep_rate(self, geo):
        if self.field_update == ASYNC:
            return self.gamma3 * geo.plaquette_count
        return self.gamma3


@dataclass(frozen=True)
class Event:
    kind: str
    time: float
    waiting: float
    # edge for pair creation and hops, plaquette for async sweeps
    location: Optional[int] = None


class TrajectoryState(object):
    """
    Everything one run of the engine owns.  initial_logical is the logical
    sector of the starting frame as the decoder reads it; it is (0, 0) for
    the ground state and is factored out of logical error measurements.
    """

    def __init__(self, geo, rates, frame, field, rng, t=0.0, index=0,
                 initial_logical=(0, 0)):
        self.geo = geo
        self.rates = rates
        self.frame = frame
        self.field = field
        self.rng = rng
        self.t = float(t)
        self.index = index
        self.initial_logical = tuple(initial_logical)
        self._events = np.zeros(len(EVENT_KINDS), dtype=np.int64)

    def __repr__(self):
        return "<TrajectoryState #%i t=%g anyons=%i>" % (
            self.index, self.t, self.frame.anyon_count)

    @property
    def counts(self):
        return dict(zip(EVENT_KINDS, self._events.tolist()))

    def get_event_count(self):
        return int(self._events.sum())


def new_trajectory(geo, rates, streams, init_mode=GROUND, index=0):
    frame = new_frame(geo, init_mode, rng=streams.init)
    initial = (0, 0) if init_mode == GROUND else logical_error(frame)
    return TrajectoryState(geo, rates, frame, CaField(geo), streams.dynamics,
                           index=index, initial_logical=initial)


def total_rate(state):
    rates = state.rates
    return (rates.gamma1 * state.geo.edge_count +
            rates.gamma2 * state.frame.anyon_count +
            rates.sweep_rate(state.geo))


def choose_event_class(state, rate):
    """Pick an event class with probability proportional to its rate"""
    creation = state.rates.gamma1 * state.geo.edge_count
    hopping = state.rates.gamma2 * state.frame.anyon_count
    return EVENT_KINDS[_choose_class(state.rng.random() * rate, creation,
                                     hopping)]


@njit
def _choose_class(pick, creation, hopping):
    if pick < creation:
        return _PAIR_CREATION
    if pick < creation + hopping:
        return _HOP
    return _FIELD_SWEEP


@njit
def _run_events(t, limit, max_events, rng, gamma1, gamma2, sweep_rate,
                asynchronous, damping, flips, syndrome, registry, slot,
                counters, phi, scratch, neighbor_table, boundary_table,
                edge_plaquettes, cut_mask, events):
    """
    Fire events until the next one would fall after limit, until
    max_events (if positive) have fired, or until the total rate is zero.
    Returns (status, t, kind, location, waiting) of the last event fired.
    On LIMIT the pending waiting time is dropped and t is set to limit;
    waiting times are memoryless, so redrawing from limit is exact.
    """
    edge_count = flips.shape[0]
    plaquette_count = syndrome.shape[0]
    creation = gamma1 * edge_count
    fired = 0
    kind = -1
    location = -1
    waiting = 0.0
    while True:
        hopping = gamma2 * counters[COUNT]
        rate = creation + hopping + sweep_rate
        if rate <= 0.0:
            return _FROZEN, t, kind, location, waiting
        drawn = rng.exponential(1.0 / rate)
        if t + drawn > limit:
            return _LIMIT, limit, kind, location, waiting
        t += drawn
        waiting = drawn
        kind = _choose_class(rng.random() * rate, creation, hopping)
        if kind == _PAIR_CREATION:
            location = rng.integers(0, edge_count)
            flip_edge(flips, syndrome, registry, slot, counters,
                      edge_plaquettes, cut_mask, location)
        elif kind == _HOP:
            p = registry[rng.integers(0, counters[COUNT])]
            # fuses with the anyon on the target if there is one
            location = boundary_table[p, _target_slot(phi, neighbor_table,
                                                      p, rng)]
            flip_edge(flips, syndrome, registry, slot, counters,
                      edge_plaquettes, cut_mask, location)
        elif asynchronous:
            location = rng.integers(0, plaquette_count)
            _update_cell(phi, syndrome, neighbor_table, damping, location)
        else:
            location = -1
            _sweep(phi, scratch, syndrome, neighbor_table, damping)
        events[kind] += 1
        fired += 1
        if max_events > 0 and fired >= max_events:
            return _EVENTS, t, kind, location, waiting


def _advance(state, limit, max_events=0):
    """Run the compiled event loop on state; return (status, Event or None)"""
    rates = state.rates
    geo = state.geo
    phi, scratch = state.field.get_buffers()
    status, t, kind, location, waiting = _run_events(
        state.t, float(limit), max_events, state.rng,
        float(rates.gamma1), float(rates.gamma2), float(rates.sweep_rate(geo)),
        rates.field_update == ASYNC, state.field.get_damping(),
        *state.frame.get_buffers(), phi, scratch,
        geo.neighbor_table, geo.boundary_table, geo.edge_plaquettes,
        geo.cut_mask, state._events)
    state.t = t
    if status != _EVENTS:
        return status, None
    return status, Event(EVENT_KINDS[kind], t, waiting,
                         None if location < 0 else int(location))


def step(state):
    status, event = _advance(state, math.inf, 1)
    if status == _FROZEN:
        raise FrozenError("total rate is zero at t=%g" % state.t)
    return event


def measurement_grid(t_max, size=DEFAULT_GRID_SIZE):
    """size log-spaced times in [t_max/1000, t_max), then t_max itself"""
    if t_max <= 0:
        return [0.0]
    if size <= 0:
        return [float(t_max)]
    grid = np.geomspace(t_max * 1e-3, t_max, size, endpoint=False)
    return grid.tolist() + [float(t_max)]


def _advance_to(state, limit, trace):
    if trace is None:
        status = _advance(state, limit)[0]
    else:
        while True:
            status, event = _advance(state, limit, 1)
            if event is None:
                break
            trace.record(event)
    if status == _FROZEN:
        state.t = float(limit)
    return status


def run_until(state, t_max, observers=(), times=None, trace=None):
    """
    Fire events until the next one would fall after t_max, then set
    t = t_max.  Each observer is called as observer(time, state) at every
    time of the measurement grid, seeing the state that holds at that time.
    A frozen state is fast-forwarded to t_max.
    """
    if t_max < state.t:
        raise JumpError("t_max=%g lies before the current time %g" %
                        (t_max, state.t))
    if times is None:
        times = measurement_grid(t_max)
    frozen = False
    for when in sorted(t for t in times if state.t <= t <= t_max):
        frozen = _advance_to(state, when, trace) == _FROZEN or frozen
        for observer in observers:
            observer(when, state)
    frozen = _advance_to(state, t_max, trace) == _FROZEN or frozen
    if frozen:
        log.debug("trajectory %i frozen before t=%g", state.index, t_max)
    state.t = float(t_max)
    return state


class EventTrace(object):
    """CSV log of executed events: time,event,location"""

    def __init__(self, path):
        self.path = path
        self._file = open(path, 'w', newline='')
        self._writer = csv.writer(self._file)
        self._writer.writerow(['time', 'event', 'location'])

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def record(self, event):
        location = '' if event.location is None else event.location
        self._writer.writerow(['%.17g' % event.time, event.kind, location])

    def close(self):
        self._file.close()
