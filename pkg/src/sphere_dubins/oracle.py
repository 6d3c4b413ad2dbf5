"""
Brute-force certification of the planner.

Every word over {L, R, G} without immediate repetition, up to
`max_segments` letters, is searched independently of the solvers:

- one letter: the angle is scanned on the grid and the endpoint error is
  polished with a bounded Brent minimisation;
- two letters: the first angle is scanned; the target is reachable by the
  last segment only where the back-rotated target keeps the component of
  e1 along the last axis, and the sign changes of that condition are
  refined with brentq;
- three letters: the first angle is scanned, the remaining two angles are
  closed exactly, and the length is minimised over the first angle by a
  bounded Brent line search around the best grid points.
"""
import itertools
from collections import namedtuple
from multiprocessing import Pool

import numpy as np
from contracts import check_isinstance
from scipy.optimize import brentq, minimize_scalar

from . import sdlogger
from .constants import DEFAULT_TOLERANCES, PathType, SegmentType, TWO_PI
from .exceptions import DomainError
from .geometry import (E1, Segment, as_configuration, as_turn_radius, check_unit_vector, normalize_angle,
                       segment_axis, segment_weight)
from .planner import make_candidate, trivial_target

GridSpec = namedtuple('GridSpec', 'max_segments angle_step refine_tol')

DEFAULT_GRID = GridSpec(max_segments=3, angle_step=TWO_PI / 2000, refine_tol=1e-10)

# A refined oracle path must close to this accuracy; never looser than the chord tolerance
ACCEPT_TOL = 1e-8

# Number of grid minima polished per three-letter word
N_REFINE = 3

OracleResult = namedtuple('OracleResult',
                          'candidate word resolution_bound chord_tolerance feasible words_searched')

WordResult = namedtuple('WordResult', 'word angles grid_length length')


def make_grid(max_segments=None, angle_step=None, refine_tol=None):
    g = DEFAULT_GRID
    grid = GridSpec(max_segments=g.max_segments if max_segments is None else int(max_segments),
                    angle_step=g.angle_step if angle_step is None else float(angle_step),
                    refine_tol=g.refine_tol if refine_tol is None else float(refine_tol))
    check_grid(grid)
    return grid


def check_grid(grid):
    check_isinstance(grid, GridSpec)
    if not grid.angle_step > 0:
        msg = 'angle_step must be > 0, got %r' % grid.angle_step
        raise DomainError(msg)
    if not grid.max_segments >= 1:
        msg = 'max_segments must be >= 1, got %r' % grid.max_segments
        raise DomainError(msg)
    if not grid.refine_tol > 0:
        msg = 'refine_tol must be > 0, got %r' % grid.refine_tol
        raise DomainError(msg)


def resolution_bound(grid, r):
    return grid.max_segments * grid.angle_step * max(1.0, as_turn_radius(r).r)


def chord_tolerance(grid):
    """ Chord subtended on the unit sphere by one grid step. """
    return 2.0 * np.sin(min(grid.angle_step, np.pi) / 2.0)


def oracle_words(max_segments):
    letters = [SegmentType.L, SegmentType.R, SegmentType.G]
    res = []
    for m in range(1, max_segments + 1):
        for w in itertools.product(letters, repeat=m):
            if any(a == b for a, b in zip(w, w[1:])):
                continue
            res.append(''.join(w))
    return res


def _rotate(k, phis, v):
    """ Rodrigues rotation of v (shape (3,) or (n, 3)) about k by each angle. """
    phis = np.asarray(phis, dtype=float)
    c = np.cos(phis)[..., None]
    s = np.sin(phis)[..., None]
    v = np.asarray(v, dtype=float)
    kv = np.asarray(np.dot(v, k))[..., None]
    return v * c + np.cross(k, v) * s + k * kv * (1.0 - c)


def _angle_about(k, u, w):
    """ Vectorised rotation angle about k from u to w, in [0, 2pi). """
    up = u - k * np.asarray(np.dot(u, k))[..., None]
    wp = w - k * np.asarray(np.dot(w, k))[..., None]
    ang = np.arctan2(np.dot(np.cross(up, wp), k), np.sum(up * wp, axis=-1))
    return np.mod(ang, TWO_PI)


def _grid(grid):
    n = int(np.ceil(TWO_PI / grid.angle_step))
    return np.arange(n) * (TWO_PI / n)


def _endpoint_error(word, angles, radius, x):
    p = E1
    for seg_type, phi in reversed(list(zip(word, angles))):
        p = _rotate(segment_axis(seg_type, radius), phi, p)
    return float(np.linalg.norm(p - x))


def _search_one(word, x, radius, grid):
    k = segment_axis(word, radius)
    phis = _grid(grid)
    err = np.linalg.norm(_rotate(k, phis, E1) - x, axis=-1)
    i = int(np.argmin(err))
    if err[i] > chord_tolerance(grid):
        return []
    opt = minimize_scalar(lambda phi: _endpoint_error(word, [phi], radius, x),
                          bounds=(phis[i] - grid.angle_step, phis[i] + grid.angle_step),
                          method='bounded', options=dict(xatol=grid.refine_tol))
    phi = float(opt.x) if opt.fun < err[i] else float(phis[i])
    return [(phi,)]


def _search_two(word, x, radius, grid):
    k1 = segment_axis(word[0], radius)
    k2 = segment_axis(word[1], radius)
    target = k2[0]

    def g(phi1):
        return np.dot(_rotate(k1, -np.asarray(phi1), x), k2) - target

    phis = _grid(grid)
    ext = np.append(phis, TWO_PI)
    values = g(ext)
    roots = []
    for i in range(len(phis)):
        a, b = ext[i], ext[i + 1]
        fa, fb = values[i], values[i + 1]
        if fa == 0.0:
            roots.append(a)
        elif fa * fb < 0:
            roots.append(brentq(g, a, b, xtol=grid.refine_tol))
        elif abs(fa) <= chord_tolerance(grid) and abs(fa) <= abs(values[i - 1]) and abs(fa) <= abs(fb):
            # tangency: no sign change around a grid minimum of |g|
            opt = minimize_scalar(lambda phi: abs(g(phi)), bounds=(a - grid.angle_step, b), method='bounded',
                                  options=dict(xatol=grid.refine_tol))
            roots.append(float(opt.x))
    res = []
    for phi1 in roots:
        y = _rotate(k1, -phi1, x)
        phi2 = float(_angle_about(k2, E1, y))
        res.append((float(np.mod(phi1, TWO_PI)), phi2))
    return res


def _close_three(word, x, radius, phi1s):
    """
        For each first angle, the (phi2, phi3) pairs that close the path
        exactly; two branches, NaN where infeasible.
    """
    k1, k2, k3 = [segment_axis(t, radius) for t in word]
    phi1s = np.atleast_1d(np.asarray(phi1s, dtype=float))
    y = _rotate(k1, -phi1s, x)
    k2y = np.dot(y, k2)
    k23 = np.dot(k2, k3)
    # <k3, R_2(phi2)^T y> = P cos(phi2) + Q sin(phi2) + W must equal <k3, e1>
    P = np.dot(y, k3) - k23 * k2y
    Q = -np.dot(np.cross(k2, y), k3)
    W = k23 * k2y - k3[0]
    rho = np.hypot(P, Q)
    with np.errstate(invalid='ignore', divide='ignore'):
        arg = -W / rho
        feasible = np.abs(arg) <= 1.0
        theta = np.arccos(np.clip(arg, -1.0, 1.0))
    delta = np.arctan2(Q, P)
    branches = []
    for sign in [1.0, -1.0]:
        phi2 = np.mod(delta + sign * theta, TWO_PI)
        z = _rotate(k2, -phi2, y)
        phi3 = _angle_about(k3, np.broadcast_to(E1, z.shape), z)
        phi2 = np.where(feasible, phi2, np.nan)
        phi3 = np.where(feasible, phi3, np.nan)
        branches.append((phi2, phi3))
    return branches


def _length(word, angles, radius):
    return sum(segment_weight(t, radius) * phi for t, phi in zip(word, angles))


def _search_three(word, x, radius, grid):
    phis = _grid(grid)
    w = [segment_weight(t, radius) for t in word]
    scored = []
    for b, (phi2, phi3) in enumerate(_close_three(word, x, radius, phis)):
        lengths = w[0] * phis + w[1] * phi2 + w[2] * phi3
        for i in np.flatnonzero(np.isfinite(lengths)):
            scored.append((lengths[i], b, i))
    scored.sort()

    # above any finite length of the word
    infeasible = 2 * TWO_PI * sum(w)
    res = []
    for grid_length, b, i in scored[:N_REFINE]:

        def f(phi1):
            phi2, phi3 = _close_three(word, x, radius, [phi1])[b]
            if not (np.isfinite(phi2[0]) and np.isfinite(phi3[0])):
                return infeasible
            return w[0] * phi1 + w[1] * phi2[0] + w[2] * phi3[0]

        lo = max(0.0, phis[i] - grid.angle_step)
        hi = min(TWO_PI, phis[i] + grid.angle_step)
        opt = minimize_scalar(f, bounds=(lo, hi), method='bounded', options=dict(xatol=grid.refine_tol))
        phi1 = float(opt.x) if opt.fun < grid_length else float(phis[i])
        phi2, phi3 = _close_three(word, x, radius, [phi1])[b]
        res.append(((phi1, float(phi2[0]), float(phi3[0])), float(grid_length)))
    return res


def search_word(word, x, radius, grid):
    """ Best refined path of one word, or None. """
    if len(word) == 1:
        found = [(angles, None) for angles in _search_one(word, x, radius, grid)]
    elif len(word) == 2:
        found = [(angles, None) for angles in _search_two(word, x, radius, grid)]
    elif len(word) == 3:
        found = _search_three(word, x, radius, grid)
    else:
        msg = 'Words longer than 3 letters are not searched: %r' % word
        raise DomainError(msg)

    best = None
    for angles, grid_length in found:
        angles = tuple(normalize_angle(phi, grid.refine_tol) for phi in angles)
        if _endpoint_error(word, angles, radius, x) > min(ACCEPT_TOL, chord_tolerance(grid)):
            continue
        length = _length(word, angles, radius)
        if grid_length is None:
            grid_length = length
        res = WordResult(word, angles, grid_length, length)
        if best is None or res.length < best.length:
            best = res
    return best


def _search_word_star(args):
    return search_word(*args)


def oracle_search(R0, X_f, r, grid=DEFAULT_GRID, processes=1, tol=None):
    """
        Shortest path found over all searched words, with its resolution
        bound. An infeasible result (no path at this resolution) is not an
        error.
    """
    if tol is None:
        tol = DEFAULT_TOLERANCES
    check_grid(grid)
    R0 = as_configuration(R0)
    radius = as_turn_radius(r)
    X_f = check_unit_vector(X_f, tol.unit, name='X_f')
    x = R0.matrix.T.dot(X_f)

    bound = resolution_bound(grid, radius)
    chord = chord_tolerance(grid)
    words = oracle_words(grid.max_segments)

    if trivial_target(x, tol):
        c = make_candidate(PathType.TRIVIAL, [], radius, x)
        return OracleResult(c, '', bound, chord, True, 0)

    jobs = [(w, x, radius, grid) for w in words]
    if processes > 1:
        pool = Pool(processes)
        try:
            results = pool.map(_search_word_star, jobs)
        finally:
            pool.close()
            pool.join()
    else:
        results = [_search_word_star(job) for job in jobs]

    feasible = [res for res in results if res is not None]
    sdlogger.debug('oracle: %d of %d words feasible' % (len(feasible), len(words)))
    if not feasible:
        return OracleResult(None, None, bound, chord, False, len(words))

    best = min(feasible, key=lambda res: (res.length, res.word))
    segments = [Segment(t, phi) for t, phi in zip(best.word, best.angles) if phi != 0.0]
    path_type = ''.join(seg.seg_type for seg in segments) or PathType.TRIVIAL
    c = make_candidate(path_type, segments, radius, x)
    return OracleResult(c, best.word, bound, chord, True, len(words))
