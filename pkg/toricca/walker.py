#!/usr/bin/env python
# Walker (cluster growth) decoder and circuit depth
#
# Copyright (c) 2026, the toricca developers
# All rights reserved.
# Licensed under BSD-style license.  See LICENSE.txt for details.

"""
Clustering decoder used as the circuit-depth diagnostic.

Every anyon seeds a walker of taxicab radius 0.  In each synchronous round
the walkers of every cluster holding an odd number of anyons extend their
radius by one; two walkers a, b touch once dist(a, b) <= r_a + r_b, and
touching walkers belong to the same cluster.  Rounds stop when no cluster is
odd; their number is the circuit depth d.  The correction pairs anyons
greedily inside each final cluster and joins every pair by a fixed shortest
path (along the row first, the shorter way round, ties going forward).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components


class WalkerError(RuntimeError):
    pass


# the brute-force oracle enumerates all perfect matchings
ORACLE_MAX_ANYONS = 8


@dataclass(frozen=True)
class DecodeResult:
    correction: FrozenSet[int]
    depth: int
    # number of clusters after each round
    cluster_trace: Tuple[int, ...] = ()


def _grow_clusters(seeds, geo):
    """Run the growth rounds; return (labels, depth, trace)"""
    n = len(seeds)
    dist = geo.distance_matrix(seeds)
    radius = np.zeros(n, dtype=np.int64)
    labels = np.arange(n)
    odd = np.ones(n, dtype=bool)
    depth = 0
    trace = []
    while odd.any():
        if depth >= geo.L:
            raise WalkerError("clusters still odd after %i rounds" % depth)
        radius[odd] += 1
        depth += 1
        touching = dist <= radius[:, None] + radius[None, :]
        count, labels = connected_components(csr_matrix(touching),
                                             directed=False)
        sizes = np.bincount(labels, minlength=count)
        odd = (sizes % 2 == 1)[labels]
        trace.append(int(count))
    return labels, depth, tuple(trace)


def greedy_pairs(members, geo):
    """Pair plaquettes by repeatedly taking the closest remaining pair"""
    members = sorted(members)
    dist = geo.distance_matrix(members).astype(np.float64)
    np.fill_diagonal(dist, np.inf)
    pairs = []
    for _ in range(len(members) // 2):
        # argmin returns the first minimum in row-major order
        i, j = np.unravel_index(np.argmin(dist), dist.shape)
        pairs.append((members[i], members[j]))
        dist[[i, j], :] = np.inf
        dist[:, [i, j]] = np.inf
    return pairs


def shortest_path(a, b, geo):
    """Edges of the fixed shortest dual path from plaquette a to b"""
    L = geo.L
    row, col = geo.coordinates(a)
    brow, bcol = geo.coordinates(b)
    edges = []
    p = a
    for delta, horizontal in (((bcol - col) % L, True),
                              ((brow - row) % L, False)):
        if delta <= L - delta:
            direction, steps = 1, delta
        else:
            direction, steps = -1, L - delta
        for _ in range(steps):
            if horizontal:
                col += direction
            else:
                row += direction
            q = geo.plaquette(row, col)
            edges.append(geo.edge_between(p, q))
            p = q
    return edges


def decode(frame, geo=None):
    if geo is None:
        geo = frame.geo
    seeds = sorted(frame.anyons)
    if not seeds:
        return DecodeResult(frozenset(), 0, ())
    if len(seeds) % 2:
        raise WalkerError("odd number of anyons: %i" % len(seeds))
    labels, depth, trace = _grow_clusters(seeds, geo)
    correction = set()
    for cluster in np.unique(labels).tolist():
        members = [seeds[i] for i in np.flatnonzero(labels == cluster)]
        for a, b in greedy_pairs(members, geo):
            correction.symmetric_difference_update(shortest_path(a, b, geo))
    return DecodeResult(frozenset(correction), depth, trace)


def logical_error(frame, geo=None, result=None):
    """
    Winding parities of the accumulated flips combined with the decoder's
    correction, relative to the initial ground state.
    """
    if geo is None:
        geo = frame.geo
    if result is None:
        result = decode(frame, geo)
    bit0, bit1 = geo.winding_parities(result.correction)
    w0, w1 = frame.get_winding()
    return (w0 ^ bit0, w1 ^ bit1)


def has_logical_error(bits):
    return bool(bits[0] or bits[1])


def _perfect_matchings(items):
    if not items:
        yield []
        return
    first = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1:]
        for matching in _perfect_matchings(rest):
            yield [(first, items[k])] + matching


def shortest_path_windings(a, b, geo):
    """Cut-parity masks of every shortest dual path from a to b"""
    memo = {}

    def masks_from(p):
        if p == b:
            return {0}
        if p in memo:
            return memo[p]
        remaining = geo.distance(p, b)
        found = set()
        for q in geo.get_neighbors(p):
            if geo.distance(q, b) == remaining - 1:
                bits = geo.get_cut_bits(geo.edge_between(p, q))
                found.update(bits ^ m for m in masks_from(q))
        memo[p] = found
        return found

    return masks_from(a)


def minimum_weight_outcomes(frame, geo=None):
    """
    Every winding outcome a minimum-weight decoder could reach: all perfect
    matchings of minimal total distance, and for each matched pair all of its
    shortest paths.  Exhaustive, so only for small anyon counts.
    """
    if geo is None:
        geo = frame.geo
    anyons = sorted(frame.anyons)
    if len(anyons) > ORACLE_MAX_ANYONS:
        raise WalkerError("oracle limited to %i anyons, got %i" %
                          (ORACLE_MAX_ANYONS, len(anyons)))
    matchings = list(_perfect_matchings(anyons))
    weights = [sum(geo.distance(a, b) for a, b in m) for m in matchings]
    best = min(weights)
    outcomes = set()
    for matching, weight in zip(matchings, weights):
        if weight != best:
            continue
        choices = [shortest_path_windings(a, b, geo) for a, b in matching]
        for combo in itertools.product(*choices):
            mask = frame.winding
            for bits in combo:
                mask ^= bits
            outcomes.add((mask & 1, (mask >> 1) & 1))
    return outcomes
