"""
Numerical checks on the optimality conditions behind the candidate set.

The adjoint triple psi = (A, B, C) obeys psi' = Omega(u_g) psi with

    Omega = [[0, 1, 0], [-1, 0, u_g], [0, -u_g, 0]],

a rotation generator with axial vector (-u_g, 0, -1). Each constant-control
piece is therefore propagated exactly as a rotation of psi.
"""
from collections import namedtuple

import numpy as np
from scipy.spatial.transform import Rotation

from . import sdlogger
from .constants import DEFAULT_TOLERANCES, R_MAX_ANALYSIS, SegmentType, TWO_PI
from .exceptions import DomainError
from .geometry import Segment, as_turn_radius, normalize_angle, path_endpoint
from .solvers import sinusoid_roots


class AdjointState(namedtuple('AdjointState', 'A B C')):

    def as_array(self):
        return np.array([self.A, self.B, self.C], dtype=float)

    @staticmethod
    def from_array(v):
        return AdjointState(float(v[0]), float(v[1]), float(v[2]))

    def norm2(self):
        return self.A ** 2 + self.B ** 2 + self.C ** 2


class AbnormalSolution(namedtuple('AbnormalSolution', 'lam phase')):
    """ A(s) = lam sin(sqrt(1 + u_max^2) s - phase) on a tight-turn arc. """

    def A(self, s, u_max):
        w = np.sqrt(1.0 + u_max ** 2)
        return self.lam * np.sin(w * s - self.phase)

    def dA(self, s, u_max):
        w = np.sqrt(1.0 + u_max ** 2)
        return self.lam * w * np.cos(w * s - self.phase)


def adjoint_generator(u_g):
    return np.array([[0.0, 1.0, 0.0],
                     [-1.0, 0.0, u_g],
                     [0.0, -u_g, 0.0]])


def adjoint_axis(u_g):
    """ Axial vector of adjoint_generator(u_g). """
    return np.array([-u_g, 0.0, -1.0])


def propagate(psi, u_g, ds):
    """ psi(s + ds) = exp(Omega ds) psi(s). """
    if not isinstance(psi, AdjointState):
        psi = AdjointState.from_array(psi)
    v = Rotation.from_rotvec(adjoint_axis(u_g) * ds).apply(psi.as_array())
    return AdjointState.from_array(v)


def adjoint_flow(psi0, controls, step, u_max=None):
    """
        Piecewise-exact flow of the adjoint under (u_g, ds) pieces.

        Returns (s, AdjointState) pairs at every piece boundary and at
        interior points spaced at most `step` apart.
    """
    if not step > 0:
        msg = 'step must be > 0, got %r' % step
        raise DomainError(msg)
    if not isinstance(psi0, AdjointState):
        psi0 = AdjointState.from_array(psi0)
    s = 0.0
    psi = psi0
    res = [(s, psi)]
    for u_g, ds in controls:
        if u_max is not None and abs(u_g) > u_max * (1 + DEFAULT_TOLERANCES.matrix):
            msg = '|u_g| must be <= u_max = %.12g, got %r' % (u_max, u_g)
            raise DomainError(msg)
        if ds < 0:
            msg = 'Piece lengths must be >= 0, got %r' % ds
            raise DomainError(msg)
        n = max(1, int(np.ceil(ds / step)))
        for i in range(1, n + 1):
            # from the piece start, so errors do not accumulate
            res.append((s + ds * i / n, propagate(psi, u_g, ds * i / n)))
        s += ds
        psi = res[-1][1]
    return res


def hamiltonian(psi, u_g, e):
    if not isinstance(psi, AdjointState):
        psi = AdjointState.from_array(psi)
    return e + psi.C + u_g * psi.A


def phase_invariant(A, dA, u_max):
    return A ** 2 + dA ** 2 / (1.0 + u_max ** 2)


def next_inflection(psi, u_g, max_length):
    """
        Arc length to the next zero of A under constant u_g, strictly after
        the current point and at most max_length; None if there is none.
    """
    if not isinstance(psi, AdjointState):
        psi = AdjointState.from_array(psi)
    w = adjoint_axis(u_g)
    speed = np.linalg.norm(w)
    k = w / speed
    v = psi.as_array()
    along = k * np.dot(k, v)
    # A(theta) = along_0 + perp_0 cos(theta) + (k x v)_0 sin(theta), theta = speed s
    perp0 = (v - along)[0]
    side0 = np.cross(k, v)[0]
    roots = sinusoid_roots(perp0, side0, -along[0])
    if not roots:
        return None
    # the current point is excluded when it is itself a zero of A;
    # a tangential zero then recurs only after a full turn
    eps = 1e-9
    thetas = [t for t in roots if eps < t < TWO_PI - eps] or [TWO_PI]
    s = min(thetas) / speed
    if s > max_length:
        return None
    return s


def control_for(psi, u_max):
    """ u_g = -u_max sign(A); at A = 0 the sign that A is about to take. """
    if psi.A != 0.0:
        return -u_max * np.sign(psi.A)
    return -u_max * np.sign(psi.B)


SwitchingTrajectory = namedtuple('SwitchingTrajectory', 'samples controls switches')


def simulate_extremal(psi0, u_max, length, step):
    """
        Bang-bang extremal with u_g = -u_max sign(A), switching exactly at
        the zeros of A.

        Returns samples (s, psi), the control at each sample, and the arc
        lengths of the switches.
    """
    if not isinstance(psi0, AdjointState):
        psi0 = AdjointState.from_array(psi0)
    s = 0.0
    psi = psi0
    u = control_for(psi, u_max)
    samples = [(s, psi)]
    controls = [u]
    switches = []
    while s < length:
        t = next_inflection(psi, u, length - s)
        piece = (length - s) if t is None else t
        n = max(1, int(np.ceil(piece / step)))
        for i in range(1, n + 1):
            samples.append((s + piece * i / n, propagate(psi, u, piece * i / n)))
            controls.append(u)
        s += piece
        psi = samples[-1][1]
        if t is not None:
            # exactly on the switching surface
            psi = AdjointState(0.0, psi.B, psi.C)
            switches.append(s)
            u = control_for(psi, u_max)
    sdlogger.debug('extremal over %.6g: %d switches' % (length, len(switches)))
    return SwitchingTrajectory(samples, controls, switches)


def gc_nonoptimality_residual(u_max):
    """
        Distance of (0, 0, -1) from the rotation axis of the adjoint flow on
        a tight turn. Positive means the flow cannot bring psi back to
        (0, 0, -1) before a full turn, so a G segment followed by a C
        segment cannot end with A = 0.
    """
    w = adjoint_axis(u_max)
    k = w / np.linalg.norm(w)
    return float(np.linalg.norm(np.cross(k, np.array([0.0, 0.0, -1.0]))))


CCCInflections = namedtuple('CCCInflections', 'middle_type phi_middle phi_final B_middle B_final')


def ccc_inflection_angles(B0, r):
    """
        From an inflection point psi = (0, B0, -1), the angles of the next two
        tight turns up to the following zeros of A.
    """
    if B0 == 0:
        msg = 'B0 must be non-zero at an inflection point.'
        raise DomainError(msg)
    radius = as_turn_radius(r)
    u_max = radius.u_max
    speed = np.sqrt(1.0 + u_max ** 2)
    psi = AdjointState(0.0, float(B0), -1.0)
    u1 = control_for(psi, u_max)
    s1 = next_inflection(psi, u1, np.inf)
    psi1 = propagate(psi, u1, s1)
    u2 = -u1
    s2 = next_inflection(AdjointState(0.0, psi1.B, psi1.C), u2, np.inf)
    psi2 = propagate(psi1, u2, s2)
    middle = SegmentType.L if u1 > 0 else SegmentType.R
    return CCCInflections(middle, s1 * speed, s2 * speed, psi1.B, psi2.B)


def _check_analysis_radius(r, upper_open=False):
    r = float(r)
    upper = R_MAX_ANALYSIS
    ok = 0.0 <= r < upper if upper_open else 0.0 <= r <= upper + DEFAULT_TOLERANCES.matrix
    if not ok:
        msg = 'r must be in [0, 1/sqrt(2)%s, got %r' % (')' if upper_open else ']', r)
        raise DomainError(msg)
    if not upper_open and abs(r - upper) <= DEFAULT_TOLERANCES.matrix:
        return upper
    return r


def _one_minus_2r2(r):
    """ 1 - 2 r^2, exactly 0 at the top of the analysis range. """
    q2 = 1.0 - 2 * r ** 2
    if q2 <= 1e-15:
        return 0.0
    return q2


def lpi_rpi_endpoint(r):
    """ Endpoint of L_pi R_pi from the identity. """
    r = float(r)
    return np.array([1.0 + 8 * r ** 4 - 8 * r ** 2,
                     0.0,
                     4 * (1 - 2 * r ** 2) * r * np.sqrt(1 - r ** 2)])


def lg_replacement_angles(r):
    """
        (phi1, phi2) of the LG path reaching the endpoint of L_pi R_pi:
        cos(phi2) = 1 - 4 r^2 and phi1 = pi/2 + gamma.
    """
    r = _check_analysis_radius(r)
    phi2 = float(np.arccos(np.clip(1.0 - 4 * r ** 2, -1.0, 1.0)))
    if r == 0:
        # continuous extension
        s_gamma = 1.0 / 3.0
        c_gamma = 2 * np.sqrt(2) / 3.0
    else:
        den = 3.0 - 4 * r ** 2
        s_gamma = (1.0 - 4 * r ** 2) / den
        c_gamma = 2 * np.sqrt(2) * np.sqrt(_one_minus_2r2(r)) / den
    gamma = np.arctan2(s_gamma, c_gamma)
    phi1 = float(np.pi / 2 + gamma)
    return phi1, phi2


def lg_replacement_residual(r):
    """ Max mismatch of the three component equations at the replacement angles. """
    r = _check_analysis_radius(r)
    phi1, phi2 = lg_replacement_angles(r)
    c1, s1 = np.cos(phi1), np.sin(phi1)
    c2, s2 = np.cos(phi2), np.sin(phi2)
    a = np.sqrt(1 - r ** 2)
    rhs = np.array([c2 * (1 - (1 - c1) * r ** 2) - r * s1 * s2,
                    r * s1 * c2 + c1 * s2,
                    (1 - c1) * r * a * c2 + s1 * s2 * a])
    third = r * (1 - c1) * c2 + s1 * s2 - 4 * (1 - 2 * r ** 2) * r
    return float(max(np.max(np.abs(rhs - lpi_rpi_endpoint(r))), abs(third)))


def replacement_path_error(r):
    """ Endpoint mismatch of L_phi1 G_phi2 against L_pi R_pi, composed with the forward model. """
    phi1, phi2 = lg_replacement_angles(r)
    segments = [Segment(SegmentType.L, normalize_angle(phi1, 0.0)),
                Segment(SegmentType.G, normalize_angle(phi2, 0.0))]
    end = path_endpoint(np.eye(3), segments, r)
    return float(np.linalg.norm(end - lpi_rpi_endpoint(r)))


def delta_l(r):
    """ Length of L_pi R_pi minus the length of its LG replacement. """
    r = _check_analysis_radius(r)
    phi1, phi2 = lg_replacement_angles(r)
    return 2 * r * np.pi - r * phi1 - phi2


DELTA_L_PRIME_BOUND = 1.5 * np.pi - np.arctan(1.0 / (2 * np.sqrt(2))) - 3.0


def delta_l_prime(r):
    """ Derivative of delta_l; not defined at r = 1/2. """
    r = _check_analysis_radius(r, upper_open=True)
    if r == 0.5:
        msg = 'delta_l is not differentiable at r = 1/2.'
        raise DomainError(msg)
    q = np.sqrt(2 * _one_minus_2r2(r))
    return 1.5 * np.pi - np.arctan((1 - 4 * r ** 2) / (2 * q)) - 6 * q / (3 - 4 * r ** 2)
