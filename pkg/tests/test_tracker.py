import random

import pytest

from headmouse.segmentation import Rect
from headmouse.tracker import CursorConfig, TrackerState, calibrate, initial_state, track


def face_at(cx: float, cy: float, size: int = 20) -> Rect:
    """A size x size rect whose center is (cx, cy)."""
    return Rect(int(cx - size / 2), int(cy - size / 2), size, size)


class TestConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"gain": 0.0},
            {"gain": -1.0},
            {"dead_zone": -0.1},
            {"alpha": 0.0},
            {"alpha": 1.5},
            {"screen_w": 0},
            {"loss_hold": -1},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            CursorConfig(**kwargs)

    def test_defaults(self):
        c = CursorConfig()
        assert (c.gain, c.dead_zone, c.alpha) == (4.0, 0.5, 0.4)
        assert (c.screen_w, c.screen_h, c.loss_hold) == (800, 600, 5)


class TestCalibrate:
    def test_example(self):
        state = calibrate(Rect(70, 50, 20, 20), CursorConfig())
        assert state.neutral == (80.0, 60.0)
        assert state.smoothed == (80.0, 60.0)
        assert state.cursor == (400.0, 300.0)
        assert state.lost_frames == 0

    def test_single_pixel_face(self):
        state = calibrate(Rect(0, 0, 1, 1), CursorConfig())
        assert state.neutral == (0.5, 0.5)

    def test_initial_state_parks_cursor_at_center(self):
        s = initial_state(CursorConfig(screen_w=1000, screen_h=500))
        assert s.cursor == (500.0, 250.0)


class TestTrack:
    def test_stationary_face_never_moves(self):
        cfg = CursorConfig()
        state = calibrate(face_at(80, 60), cfg)
        for _ in range(100):
            state, cursor, moved = track(state, face_at(80, 60), cfg)
            assert not moved
            assert cursor == (400.0, 300.0)

    def test_linear_map(self):
        cfg = CursorConfig(alpha=1.0, dead_zone=0.0, gain=2.0)
        state = calibrate(face_at(80, 60), cfg)
        state, cursor, moved = track(state, face_at(90, 60), cfg)
        assert moved
        assert cursor == (420.0, 300.0)

    def test_clamped_at_right_edge(self):
        cfg = CursorConfig(alpha=1.0, dead_zone=0.0, gain=2.0, screen_w=800)
        state = TrackerState(neutral=(80, 60), smoothed=(80, 60), cursor=(800.0, 300.0))
        state, cursor, _ = track(state, face_at(120, 60), cfg)
        assert cursor[0] == 800.0

    def test_clamped_at_zero(self):
        cfg = CursorConfig(alpha=1.0, dead_zone=0.0, gain=5.0)
        state = TrackerState(neutral=(80, 60), smoothed=(80, 60), cursor=(3.0, 300.0))
        state, cursor, _ = track(state, face_at(40, 60), cfg)
        assert cursor[0] == 0.0

    def test_loss_holds_cursor_and_counts(self):
        cfg = CursorConfig()
        state = calibrate(face_at(80, 60), cfg)
        for i in range(1, 8):
            state, cursor, moved = track(state, None, cfg)
            assert cursor == (400.0, 300.0)
            assert not moved
            assert state.lost_frames == i
        # redetection resets the counter
        state, _, _ = track(state, face_at(80, 60), cfg)
        assert state.lost_frames == 0

    def test_dead_zone_swallows_small_motion(self):
        cfg = CursorConfig(alpha=1.0, dead_zone=2.0, gain=4.0)
        state = calibrate(face_at(80, 60), cfg)
        state, cursor, moved = track(state, face_at(81.0, 60), cfg)
        assert not moved and cursor == (400.0, 300.0)
        # beyond the dead zone the full delta applies
        state, cursor, moved = track(state, face_at(85.0, 60), cfg)
        assert moved and cursor[0] == 400.0 + 4.0 * 4.0

    def test_dead_zone_is_per_axis(self):
        cfg = CursorConfig(alpha=1.0, dead_zone=2.0, gain=1.0)
        state = calibrate(face_at(80, 60), cfg)
        _, cursor, moved = track(state, face_at(90, 61), cfg)
        assert moved
        assert cursor == (410.0, 300.0)  # y motion swallowed, x passes

    def test_invert_flags(self):
        cfg = CursorConfig(alpha=1.0, dead_zone=0.0, gain=1.0, invert_x=True, invert_y=True)
        state = calibrate(face_at(80, 60), cfg)
        _, cursor, _ = track(state, face_at(90, 70), cfg)
        assert cursor == (390.0, 290.0)

    def test_smoothing_converges_geometrically(self):
        cfg = CursorConfig(alpha=0.5, dead_zone=0.0, gain=1.0)
        state = calibrate(face_at(80, 60), cfg)
        state, _, _ = track(state, face_at(100, 60), cfg)
        assert state.smoothed[0] == 90.0
        state, _, _ = track(state, face_at(100, 60), cfg)
        assert state.smoothed[0] == 95.0

    def test_telescoping_identity(self):
        # alpha=1, dead_zone=0, no inversion, huge screen so no clamping
        cfg = CursorConfig(alpha=1.0, dead_zone=0.0, gain=3.0, screen_w=10**6, screen_h=10**6)
        rng = random.Random(42)
        start = face_at(500, 400)
        state = calibrate(start, cfg)
        start_cursor = state.cursor
        face = start
        for _ in range(200):
            face = face_at(rng.uniform(100, 900), rng.uniform(100, 700))
            state, cursor, _ = track(state, face, cfg)
        expected_dx = cfg.gain * (face.center[0] - start.center[0])
        expected_dy = cfg.gain * (face.center[1] - start.center[1])
        assert abs((state.cursor[0] - start_cursor[0]) - expected_dx) <= 1e-9
        assert abs((state.cursor[1] - start_cursor[1]) - expected_dy) <= 1e-9

    def test_bounds_under_random_walk(self):
        rng = random.Random(7)
        cfg = CursorConfig(gain=25.0, dead_zone=0.2, alpha=0.7, screen_w=400, screen_h=300)
        state = calibrate(face_at(100, 100), cfg)
        for _ in range(2000):
            if rng.random() < 0.1:
                face = None
            else:
                face = face_at(rng.uniform(10, 300), rng.uniform(10, 220), size=8)
            state, cursor, _ = track(state, face, cfg)
            assert 0.0 <= cursor[0] <= 400.0
            assert 0.0 <= cursor[1] <= 300.0

    def test_stationary_after_dead_zone_entry_is_exact(self):
        # once |smoothed - center| is inside the dead zone, displacement is exactly 0
        cfg = CursorConfig(alpha=0.4, dead_zone=0.5, gain=4.0)
        state = calibrate(face_at(80, 60), cfg)
        target = face_at(90, 60)
        positions = []
        for _ in range(60):
            state, cursor, _ = track(state, target, cfg)
            positions.append(cursor)
        assert positions[-1] == positions[-10]  # settled exactly
