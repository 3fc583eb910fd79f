#!/usr/bin/env python
# Pauli frame of one trajectory: edge flips, plaquette syndromes, anyons
#
# Copyright (c) 2026, the toricca developers
# All rights reserved.
# Licensed under BSD-style license.  See LICENSE.txt for details.

import struct

import numpy as np
from numba import njit


class PauliFrameError(RuntimeError):
    pass


GROUND = 'ground'
MIXED = 'mixed'
INIT_MODES = (GROUND, MIXED)

SNAPSHOT_MAGIC = b'TCCA'
SNAPSHOT_VERSION = 1
# magic, version, L, time
SNAPSHOT_HEADER = struct.Struct('<4sHHd')

# slots of the counters array
COUNT = 0
WINDING = 1


@njit
def _toggle(syndrome, registry, slot, counters, p):
    n = counters[COUNT]
    if syndrome[p]:
        syndrome[p] = 0
        i = slot[p]
        last = registry[n - 1]
        registry[i] = last
        slot[last] = i
        slot[p] = -1
        counters[COUNT] = n - 1
    else:
        syndrome[p] = 1
        registry[n] = p
        slot[p] = n
        counters[COUNT] = n + 1


@njit
def flip_edge(flips, syndrome, registry, slot, counters, edge_plaquettes,
              cut_mask, e):
    """sigma^x on edge e, updating syndromes, registry and winding mask"""
    flips[e] ^= 1
    _toggle(syndrome, registry, slot, counters, edge_plaquettes[e, 0])
    _toggle(syndrome, registry, slot, counters, edge_plaquettes[e, 1])
    counters[WINDING] ^= cut_mask[e]


@njit
def _flip_edges(flips, syndrome, registry, slot, counters, edge_plaquettes,
                cut_mask, edges):
    for i in range(edges.shape[0]):
        flip_edge(flips, syndrome, registry, slot, counters, edge_plaquettes,
                  cut_mask, edges[i])


class PauliFrame(object):
    """
    Classical record of the sigma^x flips applied to a toric code state.

    flips and syndrome hold one uint8 (0 or 1) per edge and per plaquette.
    The anyon registry is a dense int32 array of occupied plaquettes whose
    first anyon_count entries are live, plus a slot table (-1 when empty), so
    that membership, insertion, removal (swap with the last entry) and
    indexed selection are all O(1).  The counters array holds the anyon
    count and the winding mask, bit k being the parity of flips on cut k.
    All of it is plain arrays so the compiled event loop can work in place.
    """

    def __init__(self, geo):
        self.geo = geo
        self.flips = np.zeros(geo.edge_count, dtype=np.uint8)
        self.syndrome = np.zeros(geo.plaquette_count, dtype=np.uint8)
        self._registry = np.zeros(geo.plaquette_count, dtype=np.int32)
        self._slot = np.full(geo.plaquette_count, -1, dtype=np.int32)
        self._counters = np.zeros(2, dtype=np.int64)

    def __repr__(self):
        return "<PauliFrame L=%i anyons=%i winding=%s>" % (
            self.geo.L, self.anyon_count, self.get_winding())

    def __eq__(self, other):
        # registry order depends on history; compare its contents
        return (isinstance(other, PauliFrame) and
                self.geo == other.geo and
                np.array_equal(self.flips, other.flips) and
                np.array_equal(self.syndrome, other.syndrome) and
                self.winding == other.winding and
                sorted(self.anyons) == sorted(other.anyons))

    def __ne__(self, other):
        return not self == other

    @property
    def anyon_count(self):
        return int(self._counters[COUNT])

    @property
    def anyons(self):
        """Occupied plaquettes in registry order"""
        return self._registry[:self.anyon_count].tolist()

    @property
    def winding(self):
        return int(self._counters[WINDING])

    @winding.setter
    def winding(self, mask):
        self._counters[WINDING] = mask

    def get_winding(self):
        mask = self.winding
        return (mask & 1, (mask >> 1) & 1)

    def has_anyon(self, p):
        return self._slot[p] >= 0

    def get_anyon(self, index):
        if not 0 <= index < self.anyon_count:
            raise PauliFrameError("anyon index %i out of range" % index)
        return int(self._registry[index])

    def get_buffers(self):
        """The arrays the compiled kernels mutate, in their argument order"""
        return (self.flips, self.syndrome, self._registry, self._slot,
                self._counters)

    def flipped_edges(self):
        return np.flatnonzero(self.flips)

    def _toggle_syndrome(self, p):
        _toggle(self.syndrome, self._registry, self._slot, self._counters, p)

    def _check_edges(self, edges):
        if edges.size and (edges.min() < 0 or
                           edges.max() >= self.geo.edge_count):
            raise PauliFrameError("edge index out of range for L=%i" %
                                  self.geo.L)

    def apply_flip(self, e):
        """Apply sigma^x to edge e"""
        e = int(e)
        if not 0 <= e < self.geo.edge_count:
            raise PauliFrameError("edge %i out of range for L=%i" %
                                  (e, self.geo.L))
        flip_edge(*self.get_buffers(), self.geo.edge_plaquettes,
                  self.geo.cut_mask, e)

    def apply_edges(self, edges):
        edges = np.fromiter(edges, dtype=np.int64)
        self._check_edges(edges)
        _flip_edges(*self.get_buffers(), self.geo.edge_plaquettes,
                    self.geo.cut_mask, edges)

    def copy(self):
        dup = PauliFrame.__new__(PauliFrame)
        dup.geo = self.geo
        dup.flips = self.flips.copy()
        dup.syndrome = self.syndrome.copy()
        dup._registry = self._registry.copy()
        dup._slot = self._slot.copy()
        dup._counters = self._counters.copy()
        return dup

    def syndrome_array(self):
        return self.syndrome

    def is_consistent(self):
        """Compare the incremental state with a recomputation from the flips"""
        if recompute_from_scratch(self) != self:
            return False
        count = self.anyon_count
        live = self._registry[:count]
        return bool(np.array_equal(self._slot[live], np.arange(count)) and
                    np.count_nonzero(self._slot >= 0) == count)


def frame_from_flips(geo, flips):
    """Build a frame whose derived state is computed from a 0/1 edge array"""
    flips = np.asarray(flips, dtype=np.uint8)
    if flips.shape != (geo.edge_count,):
        raise PauliFrameError("expected %i edge bits, got shape %s" %
                              (geo.edge_count, flips.shape))
    frame = PauliFrame(geo)
    frame.flips[:] = flips & 1
    frame.syndrome[:] = frame.flips[geo.boundary_table].sum(axis=1) % 2
    occupied = np.flatnonzero(frame.syndrome)
    frame._registry[:occupied.size] = occupied
    frame._slot[occupied] = np.arange(occupied.size)
    frame._counters[COUNT] = occupied.size
    bit0, bit1 = geo.winding_of_bitmap(frame.flips)
    frame.winding = bit0 | (bit1 << 1)
    return frame


def new_frame(geo, init_mode=GROUND, rng=None):
    """
    ground: the toric code ground state (no flips).
    mixed: every edge flipped independently with probability 1/2, the
    trajectory-level sample of the maximally mixed state.
    """
    if init_mode == GROUND:
        return PauliFrame(geo)
    elif init_mode == MIXED:
        if rng is None:
            raise PauliFrameError("mixed initial state needs a random stream")
        return frame_from_flips(geo, rng.integers(0, 2, size=geo.edge_count,
                                                  dtype=np.uint8))
    else:
        raise PauliFrameError("unknown init mode: %s" % init_mode)


def recompute_from_scratch(frame, geo=None):
    if geo is None:
        geo = frame.geo
    return frame_from_flips(geo, frame.flips)


def save_snapshot(frame, time, path):
    """Write the flip bitmap and the simulation time to path"""
    header = SNAPSHOT_HEADER.pack(SNAPSHOT_MAGIC, SNAPSHOT_VERSION,
                                  frame.geo.L, float(time))
    bits = np.packbits(frame.flips, bitorder='little')
    with open(path, 'wb') as f:
        f.write(header)
        f.write(bits.tobytes())


def load_snapshot(path, geo):
    with open(path, 'rb') as f:
        buffer = f.read()
    if len(buffer) < SNAPSHOT_HEADER.size:
        raise PauliFrameError("%s: truncated snapshot header" % path)
    magic, version, size, time = SNAPSHOT_HEADER.unpack_from(buffer)
    if magic != SNAPSHOT_MAGIC:
        raise PauliFrameError("%s: not a frame snapshot" % path)
    if version != SNAPSHOT_VERSION:
        raise PauliFrameError("%s: unsupported snapshot version %i" %
                              (path, version))
    if size != geo.L:
        raise PauliFrameError("%s: snapshot is for L=%i, expected L=%i" %
                              (path, size, geo.L))
    packed = np.frombuffer(buffer, dtype=np.uint8,
                           offset=SNAPSHOT_HEADER.size)
    if packed.size * 8 < geo.edge_count:
        raise PauliFrameError("%s: truncated edge bitmap" % path)
    flips = np.unpackbits(packed, count=geo.edge_count, bitorder='little')
    return frame_from_flips(geo, flips), time
