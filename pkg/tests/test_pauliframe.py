import numpy as np
import pytest

from toricca.pauliframe import (GROUND, MIXED, PauliFrame, PauliFrameError,
                                load_snapshot, new_frame,
                                recompute_from_scratch, save_snapshot)
from toricca.torus import TorusGeometry


class TestPauliFrameInit:
    def test_ground(self):
        for L in (3, 4, 9):
            frame = new_frame(TorusGeometry(L), GROUND)
            assert frame.anyon_count == 0
            assert frame.get_winding() == (0, 0)

    def test_mixed_density(self):
        geo = TorusGeometry(16)
        densities = []
        for seed in range(1000):
            frame = new_frame(geo, MIXED, rng=np.random.default_rng(seed))
            assert frame.anyon_count % 2 == 0
            assert frame.is_consistent()
            densities.append(frame.anyon_count / float(geo.plaquette_count))
        densities = np.array(densities)
        sigma = densities.std(ddof=1) / np.sqrt(densities.size)
        assert abs(densities.mean() - 0.5) < 3 * sigma

    def test_mixed_needs_rng(self):
        with pytest.raises(PauliFrameError):
            new_frame(TorusGeometry(4), MIXED)

    def test_unknown_mode(self):
        with pytest.raises(PauliFrameError):
            new_frame(TorusGeometry(4), 'thermal')


class TestPauliFrameFlips:
    def setup_method(self):
        self.geo = TorusGeometry(4)
        self.frame = PauliFrame(self.geo)

    def test_pair_creation(self):
        for e in range(self.geo.edge_count):
            frame = PauliFrame(self.geo)
            frame.apply_flip(e)
            assert frame.anyon_count == 2
            assert set(frame.anyons) == set(self.geo.plaquettes_of_edge(e))
            assert all(frame.has_anyon(p) for p in frame.anyons)
            assert frame.flipped_edges().tolist() == [e]

    def test_involution(self):
        self.frame.apply_flip(5)
        before = self.frame.copy()
        self.frame.apply_flip(11)
        self.frame.apply_flip(11)
        assert self.frame == before
        self.frame.apply_flip(5)
        assert self.frame == PauliFrame(self.geo)

    def test_contractible_loops(self):
        geo = self.geo
        for r in range(geo.L):
            for c in range(geo.L):
                frame = PauliFrame(geo)
                frame.apply_edges(geo.vertex_star(r, c))
                assert frame.anyon_count == 0
                assert frame.get_winding() == (0, 0)

    def test_noncontractible_loops(self):
        geo = self.geo
        for r in range(geo.L):
            frame = PauliFrame(geo)
            frame.apply_edges([geo.vertical_edge(r, c) for c in range(geo.L)])
            assert frame.anyon_count == 0
            assert frame.get_winding() == (1, 0)
            frame.apply_edges([geo.horizontal_edge(k, r)
                               for k in range(geo.L)])
            assert frame.anyon_count == 0
            assert frame.get_winding() == (1, 1)

    def test_registry_selection(self):
        self.frame.apply_flip(0)
        self.frame.apply_flip(21)
        picked = set(self.frame.get_anyon(i)
                     for i in range(self.frame.anyon_count))
        assert picked == set(np.flatnonzero(self.frame.syndrome_array()))

    def test_out_of_range(self):
        with pytest.raises(PauliFrameError):
            self.frame.apply_flip(self.geo.edge_count)
        with pytest.raises(PauliFrameError):
            self.frame.apply_edges([3, -1])
        assert self.frame == PauliFrame(self.geo)

    def test_registry_swap_removal(self):
        geo = self.geo
        frame = self.frame
        frame.apply_edges([geo.horizontal_edge(0, 0),
                           geo.horizontal_edge(2, 2)])
        first = frame.anyons[0]
        # removing the first anyon moves the last one into its slot
        frame._toggle_syndrome(first)
        assert frame.anyon_count == 3
        assert first not in frame.anyons
        assert not frame.has_anyon(first)
        for i in range(frame.anyon_count):
            assert frame._slot[frame.get_anyon(i)] == i
        with pytest.raises(PauliFrameError):
            frame.get_anyon(3)


class TestPauliFrameRecompute:
    def test_ground_noop(self):
        frame = PauliFrame(TorusGeometry(5))
        assert recompute_from_scratch(frame) == frame

    def test_one_flip(self):
        geo = TorusGeometry(5)
        frame = PauliFrame(geo)
        frame.apply_flip(17)
        ground = PauliFrame(geo)
        differ = np.count_nonzero(recompute_from_scratch(frame)
                                  .syndrome_array() != ground.syndrome_array())
        assert differ == 2

    def test_random_flips(self):
        geo = TorusGeometry(8)
        frame = PauliFrame(geo)
        rng = np.random.default_rng(11)
        edges = rng.integers(0, geo.edge_count, size=100000).tolist()
        for i, e in enumerate(edges):
            frame.apply_flip(e)
            if i % 1000 == 0:
                assert frame.anyon_count % 2 == 0
        assert recompute_from_scratch(frame) == frame
        assert frame.is_consistent()


class TestPauliFrameSnapshot:
    def setup_method(self):
        self.geo = TorusGeometry(5)
        self.frame = PauliFrame(self.geo)
        self.frame.apply_edges([0, 7, 33, 49])

    def test_restore(self, tmp_path):
        path = str(tmp_path / "frame.snap")
        save_snapshot(self.frame, 12.5, path)
        frame, time = load_snapshot(path, self.geo)
        assert frame == self.frame
        assert time == 12.5
        with open(path, 'rb') as f:
            assert f.read(4) == b'TCCA'

    def test_wrong_size(self, tmp_path):
        path = str(tmp_path / "frame.snap")
        save_snapshot(self.frame, 1.0, path)
        with pytest.raises(PauliFrameError):
            load_snapshot(path, TorusGeometry(6))

    def test_not_a_snapshot(self, tmp_path):
        path = tmp_path / "junk.snap"
        path.write_bytes(b'JUNK' + bytes(40))
        with pytest.raises(PauliFrameError):
            load_snapshot(str(path), self.geo)
