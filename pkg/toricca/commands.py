#!/usr/bin/env python
# toricca - command line entry point
#
# Copyright (c) 2026, the toricca developers
# All rights reserved.
# Licensed under BSD-style license.  See LICENSE.txt for details.
#
# Exit status: 0 success, 1 runtime or I/O failure, 2 usage error.

import logging
import sys

import toricca
from toricca.harness import (HarnessError, SweepPoint,
                             calibrate_steady_state_constant,
                             locate_critical_gamma1, phase_diagram,
                             run_ensemble, run_trajectory, steady_state_time)
from toricca.jumps import JumpError, RatesConfig, measurement_grid
from toricca.observables import ObservableError, aggregate
from toricca.output import (CRITICAL_HEADER, OutputError, RowWriter,
                            critical_rows, emit, sweep_rows)
from toricca.pauliframe import PauliFrameError
from toricca.runconfig import (CALIBRATE, ENSEMBLE, PHASEDIAGRAM, SELFTEST,
                               THRESHOLD, TRAJECTORY, ConfigError,
                               echo_config, parse_config)
from toricca.selftest import run_checks
from toricca.walker import WalkerError

log = logging.getLogger(__name__)

PROG = "toricca"

LOG_LEVELS = {'warning': logging.WARNING,
              'info': logging.INFO,
              'debug': logging.DEBUG}

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def report_error(inst):
    sys.stderr.writelines(PROG + " error:\n")
    sys.stderr.writelines(str(inst) + "\n")


def trajectory(config):
    """One trajectory at the first size and rates given"""
    L, gamma1, gamma3 = config.sizes[0], config.gamma1[0], config.gamma3[0]
    seed = config.get_seed()
    rates = RatesConfig(gamma1, config.gamma2, gamma3, config.field_update)
    if config.t_max is not None:
        t_max = config.t_max
    else:
        t_max = steady_state_time(L, gamma1, config.c, config.gamma2)
    measurements = run_trajectory(L, rates, t_max,
                                  measurement_grid(t_max, config.grid_size),
                                  seed, 0, config.init_mode,
                                  trace_path=config.trace,
                                  dump_path=config.field_dump,
                                  snapshot_path=config.snapshot)
    point = SweepPoint(L=L, gamma1=gamma1, gamma2=config.gamma2,
                       gamma3=gamma3, t_max=t_max, trajectories=1,
                       stats=aggregate(measurements, seed=seed), completed=1)
    emit(sweep_rows(point, seed), config.format, config.output)
    return EXIT_OK


def ensemble(config):
    plan = config.get_plan()
    status = EXIT_OK
    with RowWriter(config.output, config.format) as writer:
        for L in config.sizes:
            for gamma3 in config.gamma3:
                for gamma1 in config.gamma1:
                    point = run_ensemble(plan, L, gamma1, gamma3)
                    writer.write_all(sweep_rows(point, plan.seed))
                    if not point.skipped and not point.complete:
                        status = EXIT_FAILURE
    return status


def _emit_critical(config, critical):
    """
    The critical table goes to critical_output (stdout by default); the
    sweep rows behind it only when an output path is configured.
    """
    plan = config.get_plan()
    if config.output is not None:
        with RowWriter(config.output, config.format) as writer:
            for cp in critical:
                for point in cp.points:
                    writer.write_all(sweep_rows(point, plan.seed))
    emit(critical_rows(critical, plan.trajectories, plan.seed),
         config.format, config.critical_output, header=CRITICAL_HEADER)


def threshold(config):
    plan = config.get_plan()
    critical = [locate_critical_gamma1(plan, gamma3)
                for gamma3 in config.gamma3]
    _emit_critical(config, critical)
    return EXIT_OK


def phasediagram(config):
    critical = phase_diagram(config.get_plan(), config.gamma3)
    _emit_critical(config, critical)
    return EXIT_OK


def calibrate(config):
    """c from the saturation of p_eps(t), at the smallest size and largest
    gamma1 of the configuration"""
    plan = config.get_plan()
    points = []
    c, saturated = calibrate_steady_state_constant(
        plan, L=min(config.sizes), gamma1=max(config.gamma1),
        gamma3=config.gamma3[0], points=points)
    if config.output is not None:
        with RowWriter(config.output, config.format) as writer:
            for point in points:
                writer.write_all(sweep_rows(point, plan.seed))
    sys.stdout.write("c: %.17g\nsaturated: %s\n" %
                     (c, 'true' if saturated else 'false'))
    return EXIT_OK


def selftest(config):
    """Consistency checks, then a tiny ensemble whose rows are emitted"""
    seed = config.get_seed()
    status = EXIT_OK
    for name, failure in run_checks(seed):
        if failure is None:
            sys.stderr.write("ok      %s\n" % name)
        else:
            sys.stderr.write("FAILED  %s: %s\n" % (name, failure))
            status = EXIT_FAILURE
    plan = config.get_plan().replace(sizes=(4,), trajectories=4, t_max=20.0,
                                     grid_size=4, event_budget=None)
    point = run_ensemble(plan, 4, 0.05, 10.0)
    emit(sweep_rows(point, seed), config.format, config.output)
    if not point.complete:
        status = EXIT_FAILURE
    return status


SUBCOMMANDS = {TRAJECTORY: trajectory,
               ENSEMBLE: ensemble,
               THRESHOLD: threshold,
               PHASEDIAGRAM: phasediagram,
               CALIBRATE: calibrate,
               SELFTEST: selftest}


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = parse_config(argv)
    except ConfigError as inst:
        report_error(inst)
        sys.stderr.writelines("Try %s --help\n" % PROG)
        return EXIT_USAGE

    logging.basicConfig(level=LOG_LEVELS[config.log_level],
                        format="%(asctime)s %(name)s %(levelname)s: "
                               "%(message)s")
    if config.print_config:
        sys.stdout.write(echo_config(config))
        return EXIT_OK

    log.info("%s %s %s", PROG, toricca.__version__, config.subcommand)
    try:
        return SUBCOMMANDS[config.subcommand](config)
    except (HarnessError, JumpError, ObservableError, OutputError,
            PauliFrameError, WalkerError, OSError) as inst:
        report_error(inst)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
