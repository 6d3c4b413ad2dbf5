import numpy as np
from numpy.testing import assert_allclose
from scipy.spatial.transform import Rotation

from sphere_dubins import (Configuration, DomainError, MIRROR, Segment, SegmentType, TurnRadius, compose_path,
                           configuration_at, geodesic_curvature, integrate_frame, mirror, path_endpoint,
                           path_length, project_to_rotation, sample_path, segment_axis, segment_rotation)
from sphere_dubins.analysis import lpi_rpi_endpoint


def random_rotation(prng):
    return Rotation.random(random_state=prng).as_matrix()


def assert_raises(exc, f, *args, **kwargs):
    try:
        f(*args, **kwargs)
    except exc as e:
        return e
    raise AssertionError('Expected %s' % exc.__name__)


def test_great_circle_rotation():
    for phi in [0.0, 0.3, np.pi, 5.0]:
        R = segment_rotation(SegmentType.G, 0.3, phi)
        assert_allclose(R[:, 0], [np.cos(phi), np.sin(phi), 0.0], atol=1e-15)


def test_zero_angle_is_identity():
    for seg_type in SegmentType.ALL:
        assert_allclose(segment_rotation(seg_type, 0.4, 0.0), np.eye(3), atol=0)


def test_right_is_mirrored_left():
    prng = np.random.RandomState(0)
    for _ in range(200):
        r = prng.uniform(0.01, 1 / np.sqrt(2))
        phi = prng.uniform(0, 2 * np.pi)
        L = segment_rotation(SegmentType.L, r, phi)
        R = segment_rotation(SegmentType.R, r, phi)
        assert np.max(np.abs(R - MIRROR.dot(L).dot(MIRROR))) <= 1e-14
        assert np.max(np.abs(R - mirror(L))) <= 1e-14


def test_segment_rotations_are_rotations():
    prng = np.random.RandomState(1)
    for _ in range(10000):
        seg_type = SegmentType.ALL[prng.randint(3)]
        r = prng.uniform(0.001, 1 / np.sqrt(2))
        phi = prng.uniform(0, 2 * np.pi)
        R = segment_rotation(seg_type, r, phi)
        assert np.max(np.abs(R.T.dot(R) - np.eye(3))) <= 1e-12
        assert abs(np.linalg.det(R) - 1) <= 1e-12


def test_semigroup():
    prng = np.random.RandomState(2)
    for _ in range(1000):
        seg_type = SegmentType.ALL[prng.randint(3)]
        r = prng.uniform(0.05, 0.7)
        a, b = prng.uniform(0, 2 * np.pi, size=2)
        left = segment_rotation(seg_type, r, a).dot(segment_rotation(seg_type, r, b))
        right = segment_rotation(seg_type, r, (a + b) % (2 * np.pi))
        assert np.max(np.abs(left - right)) <= 1e-12


def test_axis_angle_form():
    prng = np.random.RandomState(3)
    for _ in range(300):
        seg_type = SegmentType.ALL[prng.randint(3)]
        r = prng.uniform(0.05, 0.7)
        phi = prng.uniform(0, 2 * np.pi)
        expected = Rotation.from_rotvec(segment_axis(seg_type, r) * phi).as_matrix()
        assert np.max(np.abs(segment_rotation(seg_type, r, phi) - expected)) <= 1e-12


def test_tight_circle_keeps_distance_from_center():
    r = 0.35
    k = segment_axis(SegmentType.L, r)
    for phi in np.linspace(0, 2 * np.pi, 50, endpoint=False):
        X = segment_rotation(SegmentType.L, r, phi)[:, 0]
        assert abs(np.dot(X, k) - np.sqrt(1 - r ** 2)) <= 1e-10


def test_segment_rotation_domain():
    assert_raises(DomainError, segment_rotation, SegmentType.L, 0.0, 1.0)
    assert_raises(DomainError, segment_rotation, SegmentType.L, 0.8, 1.0)
    assert_raises(DomainError, segment_rotation, SegmentType.L, 0.3, 2 * np.pi)
    assert_raises(DomainError, segment_rotation, SegmentType.L, 0.3, -0.1)
    assert_raises(DomainError, segment_rotation, 'X', 0.3, 1.0)


def test_turn_radius():
    radius = TurnRadius.from_u_max(2.0)
    assert abs(radius.r - 1 / np.sqrt(5)) < 1e-15
    assert abs(radius.u_max - 2.0) < 1e-12
    assert abs(TurnRadius(1 / np.sqrt(2)).u_max - 1.0) < 1e-12
    assert_raises(DomainError, TurnRadius, -1)
    assert_raises(DomainError, TurnRadius, 'abc')
    assert_raises(DomainError, TurnRadius.from_u_max, 0.5)


def test_half_great_circle_integrated():
    R = integrate_frame(np.eye(3), 0.0, np.pi, 1e-4)
    assert_allclose(R.X, [-1, 0, 0], atol=1e-8)


def test_tight_turn_integrated():
    r = 0.4
    u_max = TurnRadius(r).u_max
    R = integrate_frame(np.eye(3), u_max, r * np.pi, 1e-4)
    assert np.max(np.abs(R.matrix - segment_rotation(SegmentType.L, r, np.pi))) <= 1e-8


def test_closed_form_vs_integrator():
    prng = np.random.RandomState(4)
    for seg_type in SegmentType.ALL:
        for _ in range(100):
            r = prng.uniform(0.1, 0.7)
            phi = prng.uniform(0, 2 * np.pi)
            u_g = geodesic_curvature(seg_type, r)
            s = phi / np.sqrt(1 + u_g ** 2)
            R = integrate_frame(np.eye(3), u_g, s, 1e-4)
            assert np.max(np.abs(R.matrix - segment_rotation(seg_type, r, phi))) <= 1e-8


def test_integrate_zero_length():
    R0 = random_rotation(np.random.RandomState(5))
    R = integrate_frame(R0, 1.3, 0.0, 1e-3)
    assert_allclose(R.matrix, R0, atol=0)


def test_integrate_rejects_large_curvature():
    assert_raises(DomainError, integrate_frame, np.eye(3), 3.0, 1.0, 1e-3, u_max=2.0)
    assert_raises(DomainError, integrate_frame, np.eye(3), 1.0, 1.0, 0.0)


def test_lpi_rpi_endpoint():
    for r in [0.1, 0.3, 0.5, 0.7]:
        segments = [Segment(SegmentType.L, np.pi), Segment(SegmentType.R, np.pi)]
        assert_allclose(path_endpoint(np.eye(3), segments, r), lpi_rpi_endpoint(r), atol=1e-12)
    segments = [Segment(SegmentType.L, np.pi), Segment(SegmentType.R, np.pi)]
    assert_allclose(path_endpoint(np.eye(3), segments, 0.5), [-0.5, 0, 0.8660254037844386], atol=1e-12)


def test_empty_path():
    assert_allclose(path_endpoint(np.eye(3), [], 0.3), [1, 0, 0], atol=0)
    assert path_length([], 0.3) == 0


def test_path_endpoint_is_unit():
    prng = np.random.RandomState(6)
    for _ in range(100):
        R0 = random_rotation(prng)
        segments = [Segment(SegmentType.ALL[prng.randint(3)], prng.uniform(0, 2 * np.pi)) for _ in range(3)]
        x = path_endpoint(R0, segments, prng.uniform(0.05, 0.7))
        assert abs(np.linalg.norm(x) - 1) <= 1e-12


def test_segment_length():
    assert Segment(SegmentType.G, 2.0).length(0.3) == 2.0
    assert abs(Segment(SegmentType.L, 2.0).length(0.3) - 0.6) < 1e-15
    segments = [Segment(SegmentType.R, 1.0), Segment(SegmentType.G, 0.5)]
    assert abs(path_length(segments, 0.25) - 0.75) < 1e-15


def test_configuration_validation():
    assert_raises(DomainError, Configuration, np.eye(2))
    assert_raises(DomainError, Configuration, 2 * np.eye(3))
    assert_raises(DomainError, Configuration, np.diag([1.0, 1.0, -1.0]))
    c = Configuration.identity()
    assert_allclose(c.T, [0, 1, 0])
    assert_allclose(c.N, [0, 0, 1])


def test_project_to_rotation():
    prng = np.random.RandomState(7)
    R = random_rotation(prng)
    c = project_to_rotation(R + 1e-6 * prng.randn(3, 3))
    assert np.max(np.abs(c.matrix.T.dot(c.matrix) - np.eye(3))) <= 1e-12
    assert np.max(np.abs(c.matrix - R)) < 1e-5
    assert_raises(DomainError, project_to_rotation, np.diag([1.0, 1.0, -1.0]))


def test_compose_path_left_invariant():
    prng = np.random.RandomState(8)
    R0 = random_rotation(prng)
    segments = [Segment(SegmentType.L, 1.0), Segment(SegmentType.G, 2.0)]
    a = compose_path(R0, segments, 0.3).matrix
    b = R0.dot(compose_path(np.eye(3), segments, 0.3).matrix)
    assert np.max(np.abs(a - b)) <= 1e-14


def test_sample_equator():
    samples = sample_path(np.eye(3), [Segment(SegmentType.G, np.pi)], 0.3, 3)
    positions = [c.X for _, c in samples]
    assert_allclose(positions, [[1, 0, 0], [0, 1, 0], [-1, 0, 0]], atol=1e-15)
    assert_allclose([s for s, _ in samples], [0, np.pi / 2, np.pi])


def test_sample_endpoints():
    prng = np.random.RandomState(9)
    R0 = random_rotation(prng)
    segments = [Segment(SegmentType.R, 2.0), Segment(SegmentType.L, 4.0)]
    samples = sample_path(R0, segments, 0.45, 17)
    assert len(samples) == 17
    assert_allclose(samples[0][1].matrix, R0, atol=1e-15)
    assert np.linalg.norm(samples[-1][1].X - path_endpoint(R0, segments, 0.45)) <= 1e-10
    s, c = samples[8]
    assert np.max(np.abs(c.matrix - configuration_at(R0, segments, 0.45, s).matrix)) == 0


def test_sample_two_points():
    samples = sample_path(np.eye(3), [Segment(SegmentType.L, np.pi / 2)], 0.5, 2)
    assert_allclose(samples[-1][1].X, segment_rotation(SegmentType.L, 0.5, np.pi / 2)[:, 0], atol=1e-15)
    assert_raises(DomainError, sample_path, np.eye(3), [], 0.5, 1)


if __name__ == '__main__':
    import pytest

    pytest.main([__file__])
