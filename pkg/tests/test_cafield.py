import numpy as np
import pytest
from scipy import stats

from toricca.cafield import (CaField, CaFieldError, sweep_update,
                             target_neighbor)
from toricca.pauliframe import PauliFrame
from toricca.torus import TorusGeometry


def frame_with_anyons(geo, plaquettes):
    """A frame whose syndrome marks the given plaquettes"""
    frame = PauliFrame(geo)
    for p in plaquettes:
        frame._toggle_syndrome(p)
    return frame


class TestCaFieldSweep:
    def setup_method(self):
        self.geo = TorusGeometry(8)

    def test_zero_fixed_point(self):
        field = CaField(self.geo)
        frame = PauliFrame(self.geo)
        for _ in range(10):
            sweep_update(field, frame, self.geo)
        assert field.is_zero()

    def test_single_anyon_one_sweep(self):
        geo = self.geo
        field = CaField(geo)
        p = geo.plaquette(3, 5)
        field.sweep_update(frame_with_anyons(geo, [p]))
        area = geo.L * geo.L
        assert field.get_value(p) == pytest.approx(area / (area + 1.0))
        others = np.delete(field.phi, p)
        assert not others.any()

    def test_single_anyon_converges(self):
        geo = self.geo
        field = CaField(geo)
        p = geo.plaquette(0, 0)
        frame = frame_with_anyons(geo, [p])
        for _ in range(200000):
            before = field.phi.copy()
            field.sweep_update(frame)
            if np.abs(field.phi - before).max() < 1e-9:
                break
        else:
            raise AssertionError("field did not converge")
        assert np.isfinite(field.phi).all()
        # decreasing along the row, out to the antipode
        row = [field.get_value(geo.plaquette(0, c)) for c in range(5)]
        assert all(a > b for a, b in zip(row, row[1:]))
        assert field.get_value(p) == max(field.phi)

    def test_uniform_fixed_point(self):
        geo = self.geo
        field = CaField(geo)
        frame = frame_with_anyons(geo, range(geo.plaquette_count))
        field.phi[:] = geo.L * geo.L
        field.sweep_update(frame)
        assert np.allclose(field.phi, geo.L * geo.L)

    def test_bounded(self):
        geo = self.geo
        field = CaField(geo)
        rng = np.random.default_rng(3)
        for _ in range(2000):
            occupied = rng.integers(0, geo.plaquette_count, size=6)
            field.sweep_update(frame_with_anyons(geo, set(occupied.tolist())))
            assert 0 <= field.phi.min()
            assert field.max_abs() <= geo.L * geo.L + 1

    def test_translation_covariant(self):
        geo = TorusGeometry(4)
        reference = CaField(geo)
        reference.sweep_update(frame_with_anyons(geo, [0]))
        reference.sweep_update(frame_with_anyons(geo, [0]))
        grid = reference.phi.reshape(4, 4)
        for dr in range(4):
            for dc in range(4):
                field = CaField(geo)
                frame = frame_with_anyons(geo, [geo.plaquette(dr, dc)])
                field.sweep_update(frame)
                field.sweep_update(frame)
                shifted = np.roll(np.roll(grid, dr, axis=0), dc, axis=1)
                assert np.array_equal(field.phi.reshape(4, 4), shifted)

    def test_async_cell(self):
        geo = self.geo
        field = CaField(geo)
        p = geo.plaquette(2, 2)
        frame = frame_with_anyons(geo, [p])
        field.update_plaquette(frame, geo.plaquette(2, 3))
        assert field.is_zero()
        field.update_plaquette(frame, p)
        assert field.get_value(p) > 0
        assert np.count_nonzero(field.phi) == 1

    def test_matches_gather(self):
        geo = self.geo
        field = CaField(geo)
        rng = np.random.default_rng(17)
        field.phi[:] = rng.uniform(0.0, 10.0, geo.plaquette_count)
        occupied = set(rng.integers(0, geo.plaquette_count, 9).tolist())
        frame = frame_with_anyons(geo, occupied)
        expected = ((field.phi[geo.neighbor_table].sum(axis=1) * 0.25 +
                     frame.syndrome_array()) * field.get_damping())
        field.sweep_update(frame)
        assert np.allclose(field.phi, expected, rtol=1e-12, atol=0.0)

    def test_dump(self, tmp_path):
        geo = self.geo
        field = CaField(geo)
        field.sweep_update(frame_with_anyons(geo, [1, 9]))
        path = str(tmp_path / "phi.f8")
        field.dump(path)
        assert np.array_equal(np.fromfile(path, dtype='<f8'), field.phi)

    def test_other_lattice(self):
        field = CaField(self.geo)
        with pytest.raises(CaFieldError):
            field.sweep_update(PauliFrame(TorusGeometry(self.geo.L + 1)))


class TestCaFieldTarget:
    def setup_method(self):
        self.geo = TorusGeometry(5)
        self.field = CaField(self.geo)
        self.p = self.geo.plaquette(2, 2)
        self.neighbors = self.geo.get_neighbors(self.p)
        self.rng = np.random.default_rng(2024)

    def test_unique_argmax(self):
        for q, value in zip(self.neighbors, (0.1, 0.5, 0.2, 0.0)):
            self.field.phi[q] = value
        for _ in range(100):
            assert target_neighbor(self.p, self.field, self.geo, self.rng) \
                == self.neighbors[1]

    def test_all_tied(self):
        draws = 100000
        counts = dict((q, 0) for q in self.neighbors)
        for _ in range(draws):
            counts[self.field.target_neighbor(self.p, self.rng)] += 1
        chi2, pvalue = stats.chisquare(list(counts.values()))
        assert pvalue > 0.01

    def test_two_tied(self):
        up, down, left, right = self.neighbors
        self.field.phi[left] = 1.0
        self.field.phi[right] = 1.0
        self.field.phi[up] = 0.5
        draws = 20000
        hits = 0
        for _ in range(draws):
            q = self.field.target_neighbor(self.p, self.rng)
            assert q in (left, right)
            hits += q == left
        sigma = np.sqrt(draws * 0.25)
        assert abs(hits - draws / 2.0) < 3 * sigma

    def test_only_values_matter(self):
        # same values around a different plaquette give the same slot
        values = (0.3, 0.9, 0.1, 0.2)
        for p in (0, 7, 24):
            field = CaField(self.geo)
            neighbors = self.geo.get_neighbors(p)
            for q, value in zip(neighbors, values):
                field.phi[q] = value
            assert field.target_neighbor(p, self.rng) == neighbors[1]
