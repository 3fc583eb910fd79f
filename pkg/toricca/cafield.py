#!/usr/bin/env python
# Cellular automaton field steering the anyons
#
# Copyright (c) 2026, the toricca developers
# All rights reserved.
# Licensed under BSD-style license.  See LICENSE.txt for details.

import numpy as np
from numba import njit


class CaFieldError(RuntimeError):
    pass


SYNC = 'sync'
ASYNC = 'async'
UPDATE_MODES = (SYNC, ASYNC)


@njit
def _cell_value(phi, syndrome, neighbor_table, damping, p):
    total = (phi[neighbor_table[p, 0]] + phi[neighbor_table[p, 1]] +
             phi[neighbor_table[p, 2]] + phi[neighbor_table[p, 3]])
    return (0.25 * total + syndrome[p]) * damping


@njit
def _update_cell(phi, syndrome, neighbor_table, damping, p):
    phi[p] = _cell_value(phi, syndrome, neighbor_table, damping, p)


@njit
def _sweep(phi, scratch, syndrome, neighbor_table, damping):
    # reads the old field only
    for p in range(phi.shape[0]):
        scratch[p] = _cell_value(phi, syndrome, neighbor_table, damping, p)
    phi[:] = scratch


@njit
def _target_slot(phi, neighbor_table, p, rng):
    best = phi[neighbor_table[p, 0]]
    tied = 1
    for k in range(1, 4):
        value = phi[neighbor_table[p, k]]
        if value > best:
            best = value
            tied = 1
        elif value == best:
            tied += 1
    pick = 0
    if tied > 1:
        pick = rng.integers(0, tied)
    for k in range(4):
        if phi[neighbor_table[p, k]] == best:
            if pick == 0:
                return k
            pick -= 1
    return -1


class CaField(object):
    """
    One real value phi_p per plaquette.  A field update sets

        phi_p' = mean of phi over the 4 neighbours + occ(p) - phi_p' / L^2

    i.e. phi_p' = (mean + occ(p)) / (1 + 1/L^2), where occ(p) is 1 if an
    anyon sits on p.  The penalty acts on the updated value.  Starting from
    phi = 0 the field stays in [0, L^2].  The synchronous sweep reads the
    old field only and writes the scratch buffer, which is then copied back
    into phi.
    """

    def __init__(self, geo):
        self.geo = geo
        self.phi = np.zeros(geo.plaquette_count, dtype=np.float64)
        self._scratch = np.zeros_like(self.phi)
        area = float(geo.L * geo.L)
        self._damping = area / (area + 1.0)

    def __repr__(self):
        return "<CaField L=%i max=%g>" % (self.geo.L, self.max_abs())

    def copy(self):
        dup = CaField(self.geo)
        dup.phi[:] = self.phi
        return dup

    def max_abs(self):
        return float(np.abs(self.phi).max())

    def is_zero(self):
        return not self.phi.any()

    def get_value(self, p):
        return self.phi[p]

    def get_damping(self):
        return self._damping

    def get_buffers(self):
        return self.phi, self._scratch

    def _check_frame(self, frame):
        if frame.geo != self.geo:
            raise CaFieldError("frame is on %r, field on %r" %
                               (frame.geo, self.geo))

    def sweep_update(self, frame):
        self._check_frame(frame)
        _sweep(self.phi, self._scratch, frame.syndrome,
               self.geo.neighbor_table, self._damping)

    def update_plaquette(self, frame, p):
        """Single-cell version of the rule, used by the async update mode"""
        self._check_frame(frame)
        _update_cell(self.phi, frame.syndrome, self.geo.neighbor_table,
                     self._damping, int(p))

    def target_neighbor(self, p, rng):
        """
        Neighbour of p with the largest field value.  Ties are broken
        uniformly at random with rng.
        """
        p = int(p)
        slot = _target_slot(self.phi, self.geo.neighbor_table, p, rng)
        if slot < 0:
            raise CaFieldError("no finite field value around plaquette %i" % p)
        return int(self.geo.neighbor_table[p, slot])

    def dump(self, path):
        """Write phi as plaquette-major little-endian doubles"""
        self.phi.astype('<f8').tofile(path)


def sweep_update(field, frame, geo=None):
    field.sweep_update(frame)


def target_neighbor(p, field, geo, rng):
    return field.target_neighbor(p, rng)
