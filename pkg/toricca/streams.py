#!/usr/bin/env python
# Deterministic random streams for trajectories and resampling
#
# Copyright (c) 2026, the toricca developers
# All rights reserved.
# Licensed under BSD-style license.  See LICENSE.txt for details.

from dataclasses import dataclass

import numpy as np

TRAJECTORY_BRANCH = 0
BOOTSTRAP_BRANCH = 1


@dataclass(frozen=True)
class TrajectoryStreams:
    # initial state sampling
    init: np.random.Generator
    # waiting times, event choices, argmax tie breaks
    dynamics: np.random.Generator


def make_streams(master_seed, trajectory_index):
    """
    Streams for one trajectory.  They depend only on (master_seed,
    trajectory_index), so a trajectory is reproduced in any worker process.

      master seed
        ├── trajectories
        │     └── index ── init, dynamics
        └── bootstrap
              └── group
    """
    root = np.random.SeedSequence(
        int(master_seed), spawn_key=(TRAJECTORY_BRANCH, int(trajectory_index)))
    ss_init, ss_dynamics = root.spawn(2)
    return TrajectoryStreams(init=np.random.default_rng(ss_init),
                             dynamics=np.random.default_rng(ss_dynamics))


def bootstrap_stream(master_seed, group=0):
    root = np.random.SeedSequence(
        int(master_seed), spawn_key=(BOOTSTRAP_BRANCH, int(group)))
    return np.random.default_rng(root)
