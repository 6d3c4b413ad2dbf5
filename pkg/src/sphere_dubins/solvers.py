"""
Inverse problems: the segment angles that bring e1 onto a target.

The target x_f is expressed in the initial frame, so R(0) = I. For a
two-segment path R_1(phi1) R_2(phi2) e1 = x_f the first rotation leaves the
component along its axis k1 unchanged, hence

    <k1, x_f> = <k1, R_2(phi2) e1>

which is a single sinusoidal equation in phi2. For LG it reads
cos(phi2) = x + r / sqrt(1 - r^2) z. Once phi2 is known, phi1 is the angle
about k1 that carries R_2(phi2) e1 onto x_f.
"""
from collections import namedtuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from . import sdlogger
from .constants import DEFAULT_TOLERANCES, PathType, SegmentType, TWO_PI
from .geometry import (E1, as_turn_radius, check_unit_vector, mirror, normalize_angle, segment_axis,
                       segment_rotation)

SolutionBranch = namedtuple('SolutionBranch', 'path_type phi1 phi2 residual')

# |argument| in (1, 1 + FALLBACK_WINDOW] is too close to call in closed form
FALLBACK_WINDOW = 1e-6
SCAN_STEP = 1e-3
SCAN_XTOL = 1e-12


def rotation_angle_about(k, v, w):
    """ Angle in [0, 2pi) of the rotation about unit axis k taking v towards w. """
    vp = v - k * np.dot(k, v)
    wp = w - k * np.dot(k, w)
    if np.linalg.norm(vp) < DEFAULT_TOLERANCES.matrix:
        # v on the axis: every angle works
        return 0.0
    return float(np.mod(np.arctan2(np.dot(k, np.cross(vp, wp)), np.dot(vp, wp)), TWO_PI))


def sinusoid_roots(beta, gamma, rhs, tol=None):
    """
        Solutions theta in [0, 2pi) of beta cos(theta) + gamma sin(theta) = rhs.

        Returns None when the closed form is inconclusive.
    """
    if tol is None:
        tol = DEFAULT_TOLERANCES
    rho = np.hypot(beta, gamma)
    if rho < tol.matrix:
        return None
    arg = rhs / rho
    if abs(arg) > 1.0 + FALLBACK_WINDOW:
        return []
    if abs(abs(arg) - 1.0) <= tol.arg_snap:
        # tangency
        arg = np.sign(arg)
    elif abs(arg) > 1.0:
        return None
    delta = np.arctan2(gamma, beta)
    theta = np.arccos(arg)
    roots = []
    for x in [delta + theta, delta - theta]:
        x = float(np.mod(x, TWO_PI))
        if x >= TWO_PI:
            x = 0.0
        if not any(_angle_close(x, y, tol.angle_snap) for y in roots):
            roots.append(x)
    return roots


def _angle_close(a, b, tol):
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d) <= tol


def _pair_equation(first, second, x_f, radius):
    """ Coefficients of beta cos(phi2) + gamma sin(phi2) = rhs. """
    k1 = segment_axis(first, radius)
    k2 = segment_axis(second, radius)
    alpha = np.dot(k1, k2) * k2[0]
    beta = k1[0] - alpha
    gamma = np.dot(k1, np.cross(k2, E1))
    rhs = np.dot(k1, x_f) - alpha
    return beta, gamma, rhs


def lg_cos_phi2(x_f, r):
    """ cos(phi2) of every LG path ending at x_f. """
    radius = as_turn_radius(r)
    x_f = np.asarray(x_f, dtype=float)
    return x_f[0] + radius.r / radius.plane_offset * x_f[2]


def _close_with_snap(first, second, x_f, radius, phi2, snap):
    phi2 = normalize_angle(phi2, snap)
    k1 = segment_axis(first, radius)
    v = segment_rotation(second, radius, phi2)[:, 0]
    phi1 = normalize_angle(rotation_angle_about(k1, v, x_f), snap)
    end = segment_rotation(first, radius, phi1).dot(segment_rotation(second, radius, phi2))[:, 0]
    residual = float(np.linalg.norm(end - x_f))
    return SolutionBranch(first + second, phi1, phi2, residual)


def _close_branch(first, second, x_f, radius, phi2, tol):
    branch = _close_with_snap(first, second, x_f, radius, phi2, tol.angle_snap)
    if branch.residual > tol.endpoint:
        # snapping moved the endpoint: keep the exact angles
        exact = _close_with_snap(first, second, x_f, radius, phi2, 0.0)
        if exact.residual < branch.residual:
            branch = exact
    return branch


def _collect(branches, tol):
    res = []
    for b in branches:
        if b.residual > tol.endpoint:
            sdlogger.debug('Rejecting %s branch (%.6g, %.6g): residual %.3g' %
                           (b.path_type, b.phi1, b.phi2, b.residual))
            continue
        dup = any(_angle_close(b.phi1, o.phi1, 10 * tol.angle_snap) and
                  _angle_close(b.phi2, o.phi2, 10 * tol.angle_snap) for o in res)
        if not dup:
            res.append(b)
    return sorted(res, key=lambda b: (b.phi1, b.phi2))


def scan_phi2_roots(first, second, x_f, r, lo=0.0, hi=TWO_PI, step=SCAN_STEP):
    """
        Bracketing scan of the phi2 equation on [lo, hi) followed by brentq
        refinement; near-tangent minima of |f| are polished with a bounded
        scalar minimisation.
    """
    radius = as_turn_radius(r)
    x_f = np.asarray(x_f, dtype=float)
    beta, gamma, rhs = _pair_equation(first, second, x_f, radius)

    def f(phi):
        return beta * np.cos(phi) + gamma * np.sin(phi) - rhs

    grid = np.arange(lo, hi + step, step)
    grid[-1] = min(grid[-1], hi)
    values = f(grid)
    roots = []
    for i in range(len(grid) - 1):
        a, b = grid[i], grid[i + 1]
        fa, fb = values[i], values[i + 1]
        if fa == 0.0:
            roots.append(a)
        elif fa * fb < 0:
            roots.append(brentq(f, a, b, xtol=SCAN_XTOL))
        elif i > 0 and abs(fa) <= abs(values[i - 1]) and abs(fa) <= abs(fb) and abs(fa) < step:
            opt = minimize_scalar(lambda x: abs(f(x)), bounds=(grid[i - 1], b), method='bounded',
                                  options=dict(xatol=SCAN_XTOL))
            if abs(f(opt.x)) < DEFAULT_TOLERANCES.endpoint:
                roots.append(float(opt.x))
    return roots


def solve_pair(first, second, x_f, r, tol=None):
    """ All (phi1, phi2) with R_first(phi1) R_second(phi2) e1 = x_f. """
    if tol is None:
        tol = DEFAULT_TOLERANCES
    radius = as_turn_radius(r)
    x_f = check_unit_vector(x_f, tol.unit, name='x_f')
    beta, gamma, rhs = _pair_equation(first, second, x_f, radius)
    roots = sinusoid_roots(beta, gamma, rhs, tol)
    if roots is None:
        sdlogger.debug('%s%s: closed form inconclusive; scanning.' % (first, second))
        roots = scan_phi2_roots(first, second, x_f, radius)
    branches = [_close_branch(first, second, x_f, radius, phi2, tol) for phi2 in roots]
    return _collect(branches, tol)


def _relabel(branches, path_type, first, second, x_f, radius, tol):
    res = []
    for b in branches:
        end = segment_rotation(first, radius, b.phi1).dot(segment_rotation(second, radius, b.phi2))[:, 0]
        residual = float(np.linalg.norm(end - x_f))
        res.append(SolutionBranch(path_type, b.phi1, b.phi2, residual))
    return _collect(res, tol)


def solve_LG(x_f, r, tol=None):
    return solve_pair(SegmentType.L, SegmentType.G, x_f, r, tol)


def solve_RG(x_f, r, tol=None):
    """ Mirror image of solve_LG, residual-checked on R_R R_G directly. """
    if tol is None:
        tol = DEFAULT_TOLERANCES
    radius = as_turn_radius(r)
    x_f = check_unit_vector(x_f, tol.unit, name='x_f')
    branches = solve_LG(mirror(x_f), radius, tol)
    return _relabel(branches, PathType.RG, SegmentType.R, SegmentType.G, x_f, radius, tol)


def _final_angle_at_least_pi(branches, first, second, x_f, radius, tol):
    res = []
    for b in branches:
        if b.phi2 >= np.pi:
            res.append(b)
        elif b.phi2 >= np.pi - tol.angle_snap:
            # numerically a half turn
            b2 = _close_branch(first, second, x_f, radius, np.pi, tol)
            if b2.residual <= tol.endpoint:
                res.append(b2)
    return res


def solve_LR(x_f, r, tol=None):
    """ LR branches; only those whose final turn is at least a half turn. """
    if tol is None:
        tol = DEFAULT_TOLERANCES
    radius = as_turn_radius(r)
    x_f = check_unit_vector(x_f, tol.unit, name='x_f')
    branches = solve_pair(SegmentType.L, SegmentType.R, x_f, radius, tol)
    return _final_angle_at_least_pi(branches, SegmentType.L, SegmentType.R, x_f, radius, tol)


def solve_RL(x_f, r, tol=None):
    if tol is None:
        tol = DEFAULT_TOLERANCES
    radius = as_turn_radius(r)
    x_f = check_unit_vector(x_f, tol.unit, name='x_f')
    branches = solve_LR(mirror(x_f), radius, tol)
    return _relabel(branches, PathType.RL, SegmentType.R, SegmentType.L, x_f, radius, tol)


def _single_residual(seg_type, radius, phi, x_f):
    return float(np.linalg.norm(segment_rotation(seg_type, radius, phi)[:, 0] - x_f))


def solve_single(x_f, r, tol=None):
    """ Degenerate paths: trivial, or a single L, R or G segment. """
    if tol is None:
        tol = DEFAULT_TOLERANCES
    radius = as_turn_radius(r)
    x_f = check_unit_vector(x_f, tol.unit, name='x_f')

    trivial = float(np.linalg.norm(x_f - E1))
    if trivial <= tol.endpoint:
        return [SolutionBranch(PathType.TRIVIAL, 0.0, 0.0, trivial)]

    res = []
    for seg_type in [SegmentType.L, SegmentType.R, SegmentType.G]:
        k = segment_axis(seg_type, radius)
        angle = rotation_angle_about(k, E1, x_f)
        phi = normalize_angle(angle, tol.angle_snap)
        residual = _single_residual(seg_type, radius, phi, x_f)
        if residual > tol.endpoint:
            phi = normalize_angle(angle, 0.0)
            residual = _single_residual(seg_type, radius, phi, x_f)
        if phi == 0.0:
            continue
        if residual <= tol.endpoint:
            res.append(SolutionBranch(seg_type, phi, 0.0, residual))
    return res
