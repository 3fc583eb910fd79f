#!/usr/bin/env python
# Run configuration: schema defaults, then a config file, then the CLI
#
# Copyright (c) 2026, the toricca developers
# All rights reserved.
# Licensed under BSD-style license.  See LICENSE.txt for details.

from __future__ import annotations

import dataclasses
import functools
import optparse
from dataclasses import dataclass, field
from typing import Optional, Tuple

from toricca.confignode import ConfigNode, ConfigNodeError
from toricca.harness import ExperimentPlan, HarnessError
from toricca.schema import SchemaNode, find_system_schema
from toricca.yamltools import confignode_to_yaml


class ConfigError(RuntimeError):
    def __init__(self, key, message):
        RuntimeError.__init__(self, message)
        # offending configuration key, None when it cannot be pinned down
        self.key = key


SCHEMA_NAME = "runconfig-schema.json"

TRAJECTORY = 'trajectory'
ENSEMBLE = 'ensemble'
THRESHOLD = 'threshold'
PHASEDIAGRAM = 'phasediagram'
CALIBRATE = 'calibrate'
SELFTEST = 'selftest'
SUBCOMMANDS = (TRAJECTORY, ENSEMBLE, THRESHOLD, PHASEDIAGRAM, CALIBRATE,
               SELFTEST)

# selftest is reproducible without an explicit seed
SELFTEST_SEED = 20240611


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    sizes: Tuple[int, ...] = (8, 16)
    gamma1: Tuple[float, ...] = (0.001, 0.003, 0.01, 0.03, 0.1)
    gamma2: float = 1.0
    gamma3: Tuple[float, ...] = (10.0,)
    trajectories: int = 200
    seed: Optional[int] = None
    c: float = 1.0
    field_update: str = 'sync'
    init_mode: str = 'ground'
    criterion: str = 'p_eps'
    depth_floor: float = 1e-3
    grid_size: int = 32
    workers: int = 1
    event_budget: Optional[float] = None
    bisection_ratio: float = 1.3
    max_bisections: int = 20
    t_max: Optional[float] = None
    output: Optional[str] = None
    format: str = 'csv'
    critical_output: Optional[str] = None
    trace: Optional[str] = None
    field_dump: Optional[str] = None
    snapshot: Optional[str] = None
    log_level: str = 'warning'
    # not a configuration key: --print-config was given
    print_config: bool = field(default=False, compare=False)

    def to_dict(self):
        """Configuration keys in declaration order, lists as lists"""
        data = {}
        for f in dataclasses.fields(self):
            if f.name == 'print_config':
                continue
            value = getattr(self, f.name)
            data[f.name] = list(value) if isinstance(value, tuple) else value
        return data

    def get_seed(self):
        if self.seed is None and self.subcommand == SELFTEST:
            return SELFTEST_SEED
        return self.seed

    def get_plan(self):
        return ExperimentPlan(sizes=self.sizes,
                              gamma1_grid=self.gamma1,
                              gamma2=self.gamma2,
                              gamma3_list=self.gamma3,
                              trajectories=self.trajectories,
                              c=self.c,
                              seed=self.get_seed(),
                              grid_size=self.grid_size,
                              field_update=self.field_update,
                              init_mode=self.init_mode,
                              criterion=self.criterion,
                              depth_floor=self.depth_floor,
                              workers=self.workers,
                              event_budget=self.event_budget,
                              bisection_ratio=self.bisection_ratio,
                              max_bisections=self.max_bisections,
                              t_max=self.t_max)


@functools.lru_cache(maxsize=None)
def load_schema():
    return SchemaNode(filename=find_system_schema(SCHEMA_NAME))


# (flags, key, metavar, help); list-valued keys take comma-separated values
OPTIONS = [
    (("-L", "--sizes"), "sizes", "L[,L...]", "lattice sizes"),
    (("--gamma1",), "gamma1", "RATE[,RATE...]",
     "error rates (bisection grid for threshold runs)"),
    (("--gamma2",), "gamma2", "RATE", "hop rate, the unit of rates"),
    (("--gamma3",), "gamma3", "RATE[,RATE...]", "field update rates"),
    (("-N", "--trajectories"), "trajectories", "N",
     "trajectories per sweep point"),
    (("-s", "--seed"), "seed", "SEED", "master seed"),
    (("-c",), "c", "C", "steady-state constant in t_max = c L^4/gamma1"),
    (("--field-update",), "field_update", "MODE", "sync or async"),
    (("--init-mode",), "init_mode", "MODE", "ground or mixed"),
    (("--criterion",), "criterion", "NAME", "p_eps or depth_var"),
    (("--depth-floor",), "depth_floor", "EPS",
     "depth variance floor for the depth_var criterion"),
    (("--grid-size",), "grid_size", "K", "measurement times below t_max"),
    (("-j", "--workers"), "workers", "N", "parallel workers, -1 for all"),
    (("--event-budget",), "event_budget", "EVENTS",
     "skip sweep points estimated above this many events"),
    (("--bisection-ratio",), "bisection_ratio", "RATIO",
     "stop once the bracket is narrower than this factor"),
    (("--max-bisections",), "max_bisections", "K", "bisection step limit"),
    (("--t-max",), "t_max", "TIME", "fixed run time"),
    (("-o", "--output"), "output", "PATH", "sweep rows, - for stdout"),
    (("-f", "--format"), "format", "FORMAT", "csv or jsonl"),
    (("--critical-output",), "critical_output", "PATH",
     "critical-point table"),
    (("--trace",), "trace", "PATH", "per-event CSV trace (trajectory)"),
    (("--field-dump",), "field_dump", "PATH", "final CA field (trajectory)"),
    (("--snapshot",), "snapshot", "PATH", "final frame snapshot (trajectory)"),
    (("--log-level",), "log_level", "LEVEL", "warning, info or debug"),
]

USAGE = """\
%prog [options] subcommand

Subcommands:
  trajectory    run one trajectory and emit its measurements
  ensemble      run N trajectories per (L, gamma1, gamma3) point
  threshold     locate the critical gamma1 for each gamma3
  phasediagram  critical gamma1 over the gamma3 list
  calibrate     find the steady-state constant c
  selftest      fixed-seed consistency checks\
"""


class ConfigOptionParser(optparse.OptionParser):
    """OptionParser reporting usage errors as ConfigError"""

    def error(self, msg):
        raise ConfigError(None, msg)


def build_parser(prog="toricca"):
    parser = ConfigOptionParser(usage=USAGE, prog=prog)
    for flags, key, metavar, help in OPTIONS:
        parser.add_option(*flags, dest=key, default=None, metavar=metavar,
                          help=help)
    parser.add_option("--config", dest="config_file", default=None,
                      metavar="FILE", help="YAML or JSON configuration file")
    parser.add_option("--print-config", dest="print_config",
                      action="store_true", default=False,
                      help="print the effective configuration and exit")
    return parser


def _validated(data=None, filename=None):
    try:
        return ConfigNode(data=data, filename=filename,
                          schemanode=load_schema()).get_data()
    except ConfigNodeError as inst:
        raise ConfigError(inst.key, str(inst))


def _normalized(data):
    """numbers declared as such by the schema become floats"""
    schema = load_schema()
    result = {}
    for key, value in data.items():
        node = schema.get_child(key)
        if node.is_type('array'):
            item = node.get_child(0)
            value = tuple(float(v) if item.is_type('number') else v
                          for v in value)
        elif node.is_type('number') and value is not None:
            value = float(value)
        result[key] = value
    return result


def check_config(config):
    """Checks spanning several keys or beyond what the schema can say"""
    if config.subcommand is None:
        raise ConfigError('subcommand', "subcommand required, one of: %s" %
                          ", ".join(SUBCOMMANDS))
    if config.get_seed() is None:
        raise ConfigError('seed', "seed required for %s runs" %
                          config.subcommand)
    for key in ('sizes', 'gamma1', 'gamma3'):
        if not getattr(config, key):
            raise ConfigError(key, "%s must not be empty" % key)
    if not config.c > 0:
        raise ConfigError('c', "c must be positive, got %s" % config.c)
    if config.workers == 0:
        raise ConfigError('workers', "workers must be positive or -1")
    if config.subcommand in (THRESHOLD, PHASEDIAGRAM):
        if len(set(config.sizes)) < 2:
            raise ConfigError('sizes', "%s needs two distinct sizes" %
                              config.subcommand)
        if min(config.gamma1) <= 0:
            raise ConfigError('gamma1', "bisection grid must be positive")
    if config.subcommand == CALIBRATE and max(config.gamma1) <= 0:
        raise ConfigError('gamma1', "calibrate needs a positive gamma1")
    try:
        config.get_plan()
    except HarnessError as inst:
        raise ConfigError(None, str(inst))


def parse_config(argv, config_file=None):
    """
    Resolve a RunConfig from argv.  Precedence, lowest first: schema
    defaults, the config file (--config, else config_file), CLI flags.
    """
    parser = build_parser()
    options, args = parser.parse_args(list(argv))
    if len(args) > 1:
        raise ConfigError('subcommand', "too many arguments: %s" %
                          " ".join(args))

    data = load_schema().get_defaults()
    filename = options.config_file or config_file
    if filename is not None:
        data.update(_validated(filename=filename))

    listkeys = set(key for key in data if isinstance(data[key], list))
    for flags, key, metavar, help in OPTIONS:
        value = getattr(options, key)
        if value is None:
            continue
        if key in listkeys:
            value = [v.strip() for v in value.split(',') if v.strip()]
        data[key] = value
    if args:
        data['subcommand'] = args[0]

    config = RunConfig(print_config=options.print_config,
                       **_normalized(_validated(data=data)))
    check_config(config)
    return config


def echo_config(config):
    """The effective configuration as commented YAML, for --print-config"""
    node = ConfigNode(data=config.to_dict(), schemanode=load_schema())
    return confignode_to_yaml(node)
