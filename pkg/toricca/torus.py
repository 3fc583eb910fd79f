#!/usr/bin/env python
# Geometry and homology of the L x L periodic lattice
#
# Copyright (c) 2026, the toricca developers
# All rights reserved.
# Licensed under BSD-style license.  See LICENSE.txt for details.
#
# Indexing:
#   plaquette (r, c)      -> r * L + c
#   horizontal edge (r, c) -> r * L + c          top edge of plaquette (r, c)
#   vertical edge (r, c)   -> L * L + r * L + c  left edge of plaquette (r, c)

import numpy as np


class TorusError(RuntimeError):
    pass


# neighbour slots, in this order, for every plaquette
UP, DOWN, LEFT, RIGHT = 0, 1, 2, 3


class TorusGeometry(object):
    """
    Immutable indexing of an L x L torus: 2L^2 edges, L^2 plaquettes, the
    plaquette adjacency and the two homology cuts.

    Each cut is the edge set of a noncontractible cycle of the lattice (the
    support of one logical string operator).  A closed error string crosses a
    cut an odd number of times exactly when it winds around the torus in the
    other direction.
    """

    def __init__(self, size):
        size = int(size)
        if size < 3:
            raise TorusError("lattice size must be at least 3, got %i" % size)
        L = size
        self.L = L
        self.plaquette_count = L * L
        self.edge_count = 2 * L * L

        rows, cols = np.divmod(np.arange(L * L), L)
        up = ((rows - 1) % L) * L + cols
        down = ((rows + 1) % L) * L + cols
        left = rows * L + (cols - 1) % L
        right = rows * L + (cols + 1) % L
        self.neighbor_table = np.stack([up, down, left, right], axis=1)

        top = self.horizontal_edge(rows, cols)
        bottom = self.horizontal_edge(rows + 1, cols)
        west = self.vertical_edge(rows, cols)
        east = self.vertical_edge(rows, cols + 1)
        # boundary edge k is the one shared with neighbour slot k
        self.boundary_table = np.stack([top, bottom, west, east], axis=1)

        erows, ecols = np.divmod(np.arange(L * L), L)
        hplaq = np.stack([((erows - 1) % L) * L + ecols, erows * L + ecols],
                         axis=1)
        vplaq = np.stack([erows * L + (ecols - 1) % L, erows * L + ecols],
                         axis=1)
        self.edge_plaquettes = np.concatenate([hplaq, vplaq])

        self.cuts = (self.vertical_edge(np.arange(L), 0),
                     self.horizontal_edge(0, np.arange(L)))
        mask = np.zeros(self.edge_count, dtype=np.uint8)
        mask[self.cuts[0]] |= 1
        mask[self.cuts[1]] |= 2
        self.cut_mask = mask

        for table in (self.neighbor_table, self.boundary_table,
                      self.edge_plaquettes, self.cut_mask):
            table.setflags(write=False)

        # plain-list copies for the per-event code paths
        self._neighbors = self.neighbor_table.tolist()
        self._boundary = self.boundary_table.tolist()
        self._edge_plaquettes = [tuple(pair) for pair in
                                 self.edge_plaquettes.tolist()]
        self._cut_bits = self.cut_mask.tolist()

    def __repr__(self):
        return "<TorusGeometry L=%i>" % self.L

    def __eq__(self, other):
        return isinstance(other, TorusGeometry) and other.L == self.L

    def __hash__(self):
        return hash(("TorusGeometry", self.L))

    def __reduce__(self):
        return (TorusGeometry, (self.L,))

    def horizontal_edge(self, row, col):
        return (row % self.L) * self.L + (col % self.L)

    def vertical_edge(self, row, col):
        return self.L * self.L + (row % self.L) * self.L + (col % self.L)

    def plaquette(self, row, col):
        return (row % self.L) * self.L + (col % self.L)

    def coordinates(self, p):
        return divmod(int(p), self.L)

    def vertex_star(self, row, col):
        """The four edges meeting at the top-left corner of plaquette (row, col)"""
        return [self.horizontal_edge(row, col),
                self.horizontal_edge(row, col - 1),
                self.vertical_edge(row, col),
                self.vertical_edge(row - 1, col)]

    def get_neighbors(self, p):
        return self._neighbors[p]

    def plaquettes_of_edge(self, e):
        return self._edge_plaquettes[e]

    def get_cut_bits(self, e):
        """Bit 0 set if e lies on cut 0, bit 1 set if e lies on cut 1"""
        return self._cut_bits[e]

    def edge_between(self, p, q):
        neighbors = self._neighbors[p]
        for slot in range(4):
            if neighbors[slot] == q:
                return self._boundary[p][slot]
        raise TorusError("plaquettes %i and %i are not adjacent" % (p, q))

    def distance(self, p, q):
        """Taxicab distance on the torus"""
        pr, pc = divmod(p, self.L)
        qr, qc = divmod(q, self.L)
        dr = abs(pr - qr)
        dc = abs(pc - qc)
        return min(dr, self.L - dr) + min(dc, self.L - dc)

    def distance_matrix(self, plaquettes):
        rows, cols = np.divmod(np.asarray(plaquettes, dtype=np.int64), self.L)
        dr = np.abs(rows[:, None] - rows[None, :])
        dc = np.abs(cols[:, None] - cols[None, :])
        return (np.minimum(dr, self.L - dr) + np.minimum(dc, self.L - dc))

    def winding_parities(self, edges):
        """Parities of |edges & cut_0| and |edges & cut_1|"""
        bits = self.cut_mask[np.fromiter(edges, dtype=np.int64)]
        return (int(np.count_nonzero(bits & 1) % 2),
                int(np.count_nonzero(bits & 2) % 2))

    def winding_of_bitmap(self, bitmap):
        """Same as winding_parities for a 0/1 array of length edge_count"""
        return self.winding_parities(np.flatnonzero(np.asarray(bitmap)))


def build_geometry(size):
    return TorusGeometry(size)


def winding_parities(edges, geo):
    return geo.winding_parities(edges)
