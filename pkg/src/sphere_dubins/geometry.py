"""
Forward model of a unit-speed vehicle on the unit sphere.

The configuration is the rotation matrix R = [X, T, N] (position, tangent,
tangent-normal). Along a segment of constant geodesic curvature u_g the frame
evolves as R' = R Omega, so a segment of angle phi contributes a right factor
R_S(phi) that is a rotation about a fixed body axis.
"""
from collections import namedtuple

import numpy as np
from contracts import check_isinstance
from scipy.linalg import polar

from .constants import DEFAULT_TOLERANCES, R_MAX_ANALYSIS, SegmentType, TWO_PI
from .exceptions import DomainError

E1 = np.array([1.0, 0.0, 0.0])

# Reflection z -> -z: maps left turns onto right turns
MIRROR = np.diag([1.0, 1.0, -1.0])


class TurnRadius(namedtuple('TurnRadius', 'r')):
    """ Radius of a tight turn; the curvature bound is derived from it. """

    def __new__(cls, r):
        try:
            r = float(r)
        except (TypeError, ValueError):
            msg = 'r must be a real number, got %r' % (r,)
            raise DomainError(msg)
        if not r > 0:
            msg = 'r must be > 0, got %r' % r
            raise DomainError(msg)
        if r > R_MAX_ANALYSIS + DEFAULT_TOLERANCES.matrix:
            msg = 'r must be <= 1/sqrt(2), got %r' % r
            raise DomainError(msg)
        return super(TurnRadius, cls).__new__(cls, r)

    @staticmethod
    def from_u_max(u_max):
        if not u_max >= 1.0:
            msg = 'u_max must be >= 1 (r <= 1/sqrt(2)), got %r' % u_max
            raise DomainError(msg)
        return TurnRadius(1.0 / np.sqrt(1.0 + u_max ** 2))

    @property
    def u_max(self):
        return np.sqrt(max(0.0, 1.0 / self.r ** 2 - 1.0))

    @property
    def plane_offset(self):
        """ Distance of the plane of a tight circle from the sphere center. """
        return np.sqrt(1.0 - self.r ** 2)


def as_turn_radius(r):
    if isinstance(r, TurnRadius):
        return r
    return TurnRadius(r)


def normalize_angle(phi, snap=None):
    """
        Wraps an angle into [0, 2pi); angles within `snap` of 0 or 2pi
        become exactly 0.
    """
    if snap is None:
        snap = DEFAULT_TOLERANCES.angle_snap
    phi = float(np.mod(phi, TWO_PI))
    if phi >= TWO_PI or phi < snap or TWO_PI - phi < snap:
        return 0.0
    return phi


def check_angle(phi):
    phi = float(phi)
    if not (0.0 <= phi < TWO_PI):
        msg = 'Segment angle must be in [0, 2pi), got %r' % phi
        raise DomainError(msg)
    return phi


def check_segment_type(seg_type):
    if seg_type not in SegmentType.ALL:
        msg = 'Unknown segment type %r; expected one of %s' % (seg_type, SegmentType.ALL)
        raise DomainError(msg)
    return seg_type


class Segment(namedtuple('Segment', 'seg_type angle')):

    def __new__(cls, seg_type, angle):
        check_segment_type(seg_type)
        angle = check_angle(angle)
        return super(Segment, cls).__new__(cls, seg_type, angle)

    def length(self, r):
        if self.seg_type == SegmentType.G:
            return self.angle
        return as_turn_radius(r).r * self.angle

    def __repr__(self):
        return '%s_%.6g' % (self.seg_type, self.angle)


def segment_weight(seg_type, r):
    """ Arc length per radian of segment angle. """
    if seg_type == SegmentType.G:
        return 1.0
    return as_turn_radius(r).r


def geodesic_curvature(seg_type, r):
    check_segment_type(seg_type)
    radius = as_turn_radius(r)
    return {SegmentType.L: radius.u_max,
            SegmentType.R: -radius.u_max,
            SegmentType.G: 0.0}[seg_type]


class Configuration(object):
    """ Position and heading frame on the sphere, packed as [X, T, N]. """

    def __init__(self, matrix, tol=None):
        if tol is None:
            tol = DEFAULT_TOLERANCES.config
        m = np.array(matrix, dtype=float)
        if m.shape != (3, 3):
            msg = 'A configuration is a 3x3 matrix, got shape %s' % (m.shape,)
            raise DomainError(msg)
        err = np.max(np.abs(m.T.dot(m) - np.eye(3)))
        if not err <= tol:
            msg = 'Configuration columns must be orthonormal: error %.3g > %.3g' % (err, tol)
            raise DomainError(msg)
        det = np.linalg.det(m)
        if not abs(det - 1.0) <= tol:
            msg = 'Configuration must be a proper rotation: det = %.12g' % det
            raise DomainError(msg)
        m.setflags(write=False)
        self.matrix = m

    @staticmethod
    def identity():
        return Configuration(np.eye(3))

    @property
    def X(self):
        return self.matrix[:, 0]

    @property
    def T(self):
        return self.matrix[:, 1]

    @property
    def N(self):
        return self.matrix[:, 2]

    def __repr__(self):
        return 'Configuration(%s)' % np.array2string(self.matrix, precision=6)


def as_configuration(R0):
    if isinstance(R0, Configuration):
        return R0
    return Configuration(R0)


def project_to_rotation(m):
    """
        Re-projects a near-rotation onto SO(3) with the polar decomposition.

        This is opt-in: Configuration() itself refuses non-rotations.
    """
    u, _ = polar(np.asarray(m, dtype=float))
    if np.linalg.det(u) < 0:
        msg = 'Matrix is closer to a reflection than to a rotation.'
        raise DomainError(msg)
    return Configuration(u)


def check_unit_vector(v, tol=None, name='vector'):
    if tol is None:
        tol = DEFAULT_TOLERANCES.unit
    v = np.array(v, dtype=float)
    if v.shape != (3,):
        msg = '%s must have 3 components, got shape %s' % (name, v.shape)
        raise DomainError(msg)
    n = np.linalg.norm(v)
    if not abs(n - 1.0) <= tol:
        msg = '%s must have unit norm: |%s| = %.12g' % (name, name, n)
        raise DomainError(msg)
    return v


def mirror(v):
    """ Applies D = diag(1, 1, -1) to a vector, or conjugates a matrix by it. """
    v = np.asarray(v, dtype=float)
    if v.shape == (3, 3):
        return MIRROR.dot(v).dot(MIRROR)
    return MIRROR.dot(v)


def segment_axis(seg_type, r):
    """ Body-frame axis about which R_S(phi) rotates by phi. """
    check_segment_type(seg_type)
    if seg_type == SegmentType.G:
        return np.array([0.0, 0.0, 1.0])
    radius = as_turn_radius(r)
    a = radius.plane_offset
    if seg_type == SegmentType.L:
        return np.array([a, 0.0, radius.r])
    return np.array([-a, 0.0, radius.r])


def segment_rotation(seg_type, r, phi):
    """ Closed-form R_G(phi), R_L(r, phi), R_R(r, phi). """
    check_segment_type(seg_type)
    radius = as_turn_radius(r)
    phi = check_angle(phi)
    c = np.cos(phi)
    s = np.sin(phi)
    if seg_type == SegmentType.G:
        return np.array([[c, -s, 0.0],
                         [s, c, 0.0],
                         [0.0, 0.0, 1.0]])

    rr = radius.r
    a = radius.plane_offset
    b11 = 1.0 - (1.0 - c) * rr ** 2
    b13 = (1.0 - c) * rr * a
    b23 = s * a
    b33 = c + (1.0 - c) * rr ** 2
    if seg_type == SegmentType.L:
        return np.array([[b11, -rr * s, b13],
                         [rr * s, c, -b23],
                         [b13, b23, b33]])
    return np.array([[b11, -rr * s, -b13],
                     [rr * s, c, b23],
                     [-b13, -b23, b33]])


def frame_generator(u_g):
    """ Omega such that R' = R Omega. """
    return np.array([[0.0, -1.0, 0.0],
                     [1.0, 0.0, -u_g],
                     [0.0, u_g, 0.0]])


def integrate_frame(R0, u_g, s, step, u_max=None):
    """
        Fixed-step RK4 integration of R' = R Omega(u_g) over arc length s,
        re-projecting onto SO(3) after every step.

        Only used to cross-check segment_rotation.
    """
    R0 = as_configuration(R0)
    if not step > 0:
        msg = 'step must be > 0, got %r' % step
        raise DomainError(msg)
    if not s >= 0:
        msg = 's must be >= 0, got %r' % s
        raise DomainError(msg)
    if u_max is not None and abs(u_g) > u_max * (1 + DEFAULT_TOLERANCES.matrix):
        msg = '|u_g| must be <= u_max = %.12g, got %r' % (u_max, u_g)
        raise DomainError(msg)
    if s == 0:
        return R0

    omega = frame_generator(u_g)
    n = int(np.ceil(s / step))
    h = s / n
    # one RK4 step of a constant-coefficient linear ODE is R <- R P
    hw = h * omega
    hw2 = hw.dot(hw)
    P = np.eye(3) + hw + hw2 / 2.0 + hw2.dot(hw) / 6.0 + hw2.dot(hw2) / 24.0
    R = np.array(R0.matrix)
    for _ in range(n):
        R = R.dot(P)
        # Newton step towards the polar factor
        R = 1.5 * R - 0.5 * R.dot(R.T.dot(R))
    R, _ = polar(R)
    return Configuration(R)


def compose_path(R0, segments, r):
    """ Terminal configuration R0 * prod_i R_{S_i}(phi_i). """
    R0 = as_configuration(R0)
    radius = as_turn_radius(r)
    R = np.array(R0.matrix)
    for seg in segments:
        check_isinstance(seg, Segment)
        R = R.dot(segment_rotation(seg.seg_type, radius, seg.angle))
    return Configuration(R)


def path_endpoint(R0, segments, r):
    return np.array(compose_path(R0, segments, r).matrix[:, 0])


def path_length(segments, r):
    return float(sum(seg.length(r) for seg in segments))


def segment_index_at(segments, r, s):
    """ Index of the segment containing arc length s (the last one at the end). """
    if not segments:
        return 0
    acc = 0.0
    for i, seg in enumerate(segments):
        acc += seg.length(r)
        if s < acc:
            return i
    return len(segments) - 1


def configuration_at(R0, segments, r, s):
    """ Configuration after travelling arc length s along the path. """
    R0 = as_configuration(R0)
    radius = as_turn_radius(r)
    R = np.array(R0.matrix)
    remaining = s
    for seg in segments:
        seg_len = seg.length(radius)
        if remaining >= seg_len:
            R = R.dot(segment_rotation(seg.seg_type, radius, seg.angle))
            remaining -= seg_len
            continue
        if remaining > 0:
            partial = remaining / segment_weight(seg.seg_type, radius)
            R = R.dot(segment_rotation(seg.seg_type, radius, partial))
        break
    return Configuration(R)


def sample_path(R0, segments, r, n):
    """
        Returns n pairs (s, configuration) uniformly spaced in arc length,
        from R0 to the terminal configuration.
    """
    if n < 2:
        msg = 'At least 2 samples are needed, got %r' % n
        raise DomainError(msg)
    R0 = as_configuration(R0)
    radius = as_turn_radius(r)
    total = path_length(segments, radius)
    res = []
    for i, s in enumerate(np.linspace(0.0, total, n)):
        if i == n - 1:
            # exact terminal frame, free of partial-angle rounding
            frame = compose_path(R0, segments, radius)
            s = total
        else:
            frame = configuration_at(R0, segments, radius, s)
        res.append((float(s), frame))
    return res
