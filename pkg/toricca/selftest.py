#!/usr/bin/env python
# Fixed-seed consistency checks run by "toricca selftest"
#
# Copyright (c) 2026, the toricca developers
# All rights reserved.
# Licensed under BSD-style license.  See LICENSE.txt for details.

import itertools
import logging

from toricca.cafield import SYNC
from toricca.jumps import RatesConfig, new_trajectory, run_until
from toricca.pauliframe import PauliFrame, recompute_from_scratch
from toricca.streams import make_streams
from toricca.torus import TorusGeometry
from toricca.walker import (decode, logical_error, minimum_weight_outcomes,
                            shortest_path)

log = logging.getLogger(__name__)


def check_dark_state(seed):
    """gamma1 = 0 from the ground state: nothing ever happens"""
    geo = TorusGeometry(6)
    state = new_trajectory(geo, RatesConfig(0.0, 1.0, 10.0, SYNC),
                           make_streams(seed, 0))
    run_until(state, 100.0, times=[])
    if state.frame.anyon_count or state.frame.winding:
        return "frame left the ground state: %r" % state.frame
    if not state.field.is_zero():
        return "field moved to max |phi| = %g" % state.field.max_abs()
    return None


def check_incremental_frame(seed):
    """the incremental frame matches a recomputation from its flips"""
    geo = TorusGeometry(6)
    state = new_trajectory(geo, RatesConfig(0.05, 1.0, 10.0, SYNC),
                           make_streams(seed, 1))
    for t in (5.0, 20.0, 50.0):
        run_until(state, t, times=[])
        if recompute_from_scratch(state.frame) != state.frame:
            return "frame diverged from its recomputation at t=%g" % t
    return None


def check_decoder_annihilates(seed):
    """applying the correction removes every anyon"""
    geo = TorusGeometry(8)
    state = new_trajectory(geo, RatesConfig(0.2, 0.0, 0.0, SYNC),
                           make_streams(seed, 2))
    run_until(state, 1.0, times=[])
    frame = state.frame.copy()
    frame.apply_edges(decode(frame, geo).correction)
    if frame.anyon_count:
        return "%i anyons left after correction" % frame.anyon_count
    return None


def check_minimum_weight_pairs(seed):
    """on two-anyon inputs the decoder ends like a minimum-weight decoder"""
    geo = TorusGeometry(4)
    for a, b in itertools.combinations(range(geo.plaquette_count), 2):
        frame = PauliFrame(geo)
        frame.apply_edges(shortest_path(b, a, geo))
        outcome = logical_error(frame, geo)
        if outcome not in minimum_weight_outcomes(frame, geo):
            return "anyons at %i and %i decode to %s" % (a, b, outcome)
    return None


CHECKS = [('dark state', check_dark_state),
          ('incremental frame', check_incremental_frame),
          ('decoder annihilation', check_decoder_annihilates),
          ('minimum-weight agreement', check_minimum_weight_pairs)]


def run_checks(seed):
    """[(name, failure message or None)] for every check"""
    results = []
    for name, check in CHECKS:
        try:
            failure = check(seed)
        except Exception as inst:
            log.exception("check %s raised", name)
            failure = "%s: %s" % (type(inst).__name__, inst)
        results.append((name, failure))
    return results
