#!/usr/bin/env python
# CSV/JSONL sinks for sweep rows and critical-point tables
#
# Copyright (c) 2026, the toricca developers
# All rights reserved.
# Licensed under BSD-style license.  See LICENSE.txt for details.

import json
import math
import numbers
import sys

CSV = 'csv'
JSONL = 'jsonl'
FORMATS = (CSV, JSONL)

HEADER = ('t', 'L', 'gamma1', 'gamma2', 'gamma3', 'n', 'n_var', 'd_norm',
          'd_var', 'p_eps', 'p_eps_ci_lo', 'p_eps_ci_hi', 'N', 'seed')

CRITICAL_HEADER = ('gamma3', 'gamma1_c', 'ci_lo', 'ci_hi', 'ratio',
                   'censored', 'criterion', 'L_small', 'L_large', 'N', 'seed')


class OutputError(RuntimeError):
    def __init__(self, path, reason):
        self.path = path
        RuntimeError.__init__(self, "cannot write %s: %s" % (path, reason))


def format_value(value):
    """17 significant digits for floats, so reruns diff byte for byte"""
    if value is None:
        return ''
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return '%.17g' % value
    return str(value)


def _json_value(value):
    """JSON text of a row value, numbers rendered exactly as in CSV"""
    if value is None:
        return 'null'
    if isinstance(value, float) and not math.isfinite(value):
        return 'null' if math.isnan(value) else json.dumps(format_value(value))
    if isinstance(value, numbers.Number):
        return format_value(value)
    return json.dumps(value)


def sweep_rows(point, seed):
    """One row per measurement time of a SweepPoint"""
    for stats in point.stats:
        yield {'t': stats.time,
               'L': point.L,
               'gamma1': float(point.gamma1),
               'gamma2': float(point.gamma2),
               'gamma3': float(point.gamma3),
               'n': stats.anyon_density.mean,
               'n_var': stats.anyon_density.variance,
               'd_norm': stats.depth.mean,
               'd_var': stats.depth.variance,
               'p_eps': stats.p_eps.mean,
               'p_eps_ci_lo': stats.p_eps.ci_lo,
               'p_eps_ci_hi': stats.p_eps.ci_hi,
               'N': stats.count,
               'seed': seed}


def critical_rows(points, trajectories, seed):
    for cp in points:
        yield {'gamma3': float(cp.gamma3),
               'gamma1_c': float(cp.gamma1_c),
               'ci_lo': float(cp.ci_lo),
               'ci_hi': float(cp.ci_hi),
               'ratio': float(cp.ratio),
               'censored': cp.censored or '',
               'criterion': cp.criterion,
               'L_small': cp.sizes[0],
               'L_large': cp.sizes[1],
               'N': trajectories,
               'seed': seed}


class RowWriter(object):
    """
    Single writer for one sink.  path None or '-' writes to stdout.  The
    CSV header goes out on open, so an empty run still leaves a header.
    """

    def __init__(self, path=None, format=CSV, header=HEADER):
        if format not in FORMATS:
            raise OutputError(path, "unknown format %s" % format)
        self.path = path
        self.format = format
        self.header = tuple(header)
        self._own = path not in (None, '-')
        try:
            self._file = open(path, 'w', newline='') if self._own \
                else sys.stdout
            if format == CSV:
                self._file.write(','.join(self.header) + '\n')
        except OSError as e:
            raise OutputError(self.get_name(), e.strerror or e)

    def get_name(self):
        return self.path if self._own else '<stdout>'

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def write(self, row):
        missing = [key for key in self.header if key not in row]
        if missing:
            raise OutputError(self.get_name(),
                              "row lacks %s" % ', '.join(missing))
        if self.format == CSV:
            line = ','.join(format_value(row[key]) for key in self.header)
        else:
            line = '{%s}' % ', '.join('%s: %s' % (json.dumps(key),
                                                 _json_value(row[key]))
                                      for key in self.header)
        try:
            self._file.write(line + '\n')
        except OSError as e:
            raise OutputError(self.get_name(), e.strerror or e)

    def write_all(self, rows):
        for row in rows:
            self.write(row)

    def close(self):
        try:
            if self._own:
                self._file.close()
            else:
                self._file.flush()
        except OSError as e:
            raise OutputError(self.get_name(), e.strerror or e)


def emit(rows, format=CSV, path=None, header=HEADER):
    with RowWriter(path, format, header) as writer:
        writer.write_all(rows)
