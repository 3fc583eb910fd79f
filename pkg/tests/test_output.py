import json
import math

import pytest

from toricca.harness import CriticalPoint, SweepPoint
from toricca.observables import EnsembleStats, ObservableStats
from toricca.output import (CRITICAL_HEADER, HEADER, JSONL, OutputError,
                            RowWriter, critical_rows, emit, format_value,
                            sweep_rows)


def make_point(undefined=False):
    if undefined:
        density = ObservableStats(0.125, math.nan, math.nan, math.nan,
                                  math.nan)
    else:
        density = ObservableStats(0.125, 0.01, 0.005, 0.115, 0.135)
    stats = EnsembleStats(time=409600.0, L=8, count=200,
                          anyon_density=density,
                          depth=ObservableStats.exact(0.1, 0.02),
                          p_eps=ObservableStats(0.75, 0.19, 0.03, 0.69, 0.81),
                          undefined=undefined)
    return SweepPoint(L=8, gamma1=0.01, gamma2=1.0, gamma3=10.0,
                      t_max=409600.0, trajectories=200, stats=[stats],
                      completed=200)


class TestFormat:
    def test_values(self):
        assert format_value(0.1) == '0.10000000000000001'
        assert format_value(3) == '3'
        assert format_value(None) == ''
        assert format_value(True) == '1'
        assert format_value(math.nan) == 'nan'


class TestRowWriter:
    def test_empty(self, tmp_path):
        path = tmp_path / 'rows.csv'
        emit([], path=str(path))
        assert path.read_text() == ','.join(HEADER) + '\n'

    def test_sweep_row(self, tmp_path):
        path = tmp_path / 'rows.csv'
        emit(sweep_rows(make_point(), 42), path=str(path))
        header, line = path.read_text().splitlines()
        assert header.split(',') == list(HEADER)
        row = dict(zip(HEADER, line.split(',')))
        assert len(row) == 14
        assert all(row.values())
        assert row['L'] == '8'
        assert row['gamma1'] == '0.01'
        assert row['p_eps'] == '0.75'
        assert row['N'] == '200'
        assert row['seed'] == '42'

    def test_jsonl(self, tmp_path):
        path = tmp_path / 'rows.jsonl'
        emit(sweep_rows(make_point(undefined=True), 1), JSONL, str(path))
        lines = path.read_text().splitlines()
        assert len(lines) == 1
        row = json.loads(lines[0])
        assert list(row.keys()) == list(HEADER)
        assert row['n'] == 0.125
        assert row['n_var'] is None
        assert row['p_eps'] == 0.75

    def test_jsonl_matches_csv(self, tmp_path):
        point = make_point()
        point.gamma1 = 0.1
        csv_path = tmp_path / 'rows.csv'
        jsonl_path = tmp_path / 'rows.jsonl'
        emit(sweep_rows(point, 7), path=str(csv_path))
        emit(sweep_rows(point, 7), JSONL, str(jsonl_path))
        header, line = csv_path.read_text().splitlines()
        expected = dict(zip(HEADER, line.split(',')))
        # keep the number tokens as written
        row = json.loads(jsonl_path.read_text(), parse_float=str,
                         parse_int=str)
        assert row == expected
        assert row['gamma1'] == '0.10000000000000001'

    def test_critical(self, tmp_path):
        path = tmp_path / 'critical.csv'
        rows = [CriticalPoint(10.0, 0.012, 0.01, 0.013, 'p_eps', (8, 16)),
                CriticalPoint(1.0, 0.1, 0.1, math.inf, 'p_eps', (8, 16),
                              censored='upper')]
        emit(critical_rows(rows, 200, 7), path=str(path),
             header=CRITICAL_HEADER)
        lines = path.read_text().splitlines()
        assert len(lines) == 3
        last = dict(zip(CRITICAL_HEADER, lines[2].split(',')))
        assert last['censored'] == 'upper'
        assert last['ci_hi'] == 'inf'
        assert last['L_large'] == '16'

    def test_stdout(self, capsys):
        emit(sweep_rows(make_point(), 3), path='-')
        out = capsys.readouterr().out
        assert out.startswith('t,L,gamma1')
        assert len(out.splitlines()) == 2

    def test_bad_path(self, tmp_path):
        with pytest.raises(OutputError) as info:
            RowWriter(str(tmp_path / 'missing' / 'rows.csv'))
        assert 'missing' in str(info.value)

    def test_missing_key(self, tmp_path):
        with RowWriter(str(tmp_path / 'rows.csv')) as writer:
            with pytest.raises(OutputError):
                writer.write({'t': 1.0})

    def test_format(self):
        with pytest.raises(OutputError):
            RowWriter(None, 'xml')
