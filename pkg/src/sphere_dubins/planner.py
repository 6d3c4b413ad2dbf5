from collections import namedtuple

import numpy as np

from . import sdlogger
from .constants import DEFAULT_TOLERANCES, PathType, R_MAX_PLANNER
from .exceptions import DomainError, InconsistentSolution
from .geometry import (E1, Segment, as_configuration, as_turn_radius, check_unit_vector, path_endpoint,
                       path_length)
from .solvers import solve_LG, solve_LR, solve_RG, solve_RL, solve_single

PathCandidate = namedtuple('PathCandidate', 'path_type segments r length residual')


def make_candidate(path_type, segments, r, x_f, R0=None):
    """ Builds a candidate and measures its endpoint residual against x_f. """
    radius = as_turn_radius(r)
    if R0 is None:
        R0 = np.eye(3)
    end = path_endpoint(R0, segments, radius)
    residual = float(np.linalg.norm(end - np.asarray(x_f, dtype=float)))
    return PathCandidate(path_type, tuple(segments), radius, path_length(segments, radius), residual)


def candidate_angles(candidate):
    """ (phi1, phi2) as reported; missing segments count as zero. """
    angles = [seg.angle for seg in candidate.segments] + [0.0, 0.0]
    return angles[0], angles[1]


def _sort_key(candidate):
    phi1, phi2 = candidate_angles(candidate)
    return candidate.length, PathType.order(candidate.path_type), phi1, phi2


def _branch_segments(branch):
    """ Segments of a solver branch; zero-angle pieces are dropped. """
    if branch.path_type == PathType.TRIVIAL:
        return PathType.TRIVIAL, []
    pieces = [(branch.path_type[0], branch.phi1)]
    if len(branch.path_type) == 2:
        pieces.append((branch.path_type[1], branch.phi2))
    pieces = [(t, phi) for t, phi in pieces if phi != 0.0]
    if not pieces:
        return PathType.TRIVIAL, []
    path_type = ''.join(t for t, _ in pieces)
    return path_type, [Segment(t, phi) for t, phi in pieces]


def check_planner_radius(r):
    radius = as_turn_radius(r)
    if radius.r > R_MAX_PLANNER:
        msg = 'r must be <= %s (outside proven candidate-set range), got %r' % (R_MAX_PLANNER, radius.r)
        raise DomainError(msg)
    return radius


def enumerate_candidates(x_f, r, tol=None):
    """ Union of the solver outputs, as candidates, in deterministic order. """
    if tol is None:
        tol = DEFAULT_TOLERANCES
    radius = check_planner_radius(r)
    x_f = check_unit_vector(x_f, tol.unit, name='x_f')

    singles = solve_single(x_f, radius, tol)
    if singles and singles[0].path_type == PathType.TRIVIAL:
        return [make_candidate(PathType.TRIVIAL, [], radius, x_f)]

    branches = list(singles)
    for solver in [solve_LG, solve_RG, solve_LR, solve_RL]:
        found = solver(x_f, radius, tol)
        sdlogger.debug('%s: %d branches' % (solver.__name__, len(found)))
        branches.extend(found)

    candidates = []
    for branch in branches:
        path_type, segments = _branch_segments(branch)
        c = make_candidate(path_type, segments, radius, x_f)
        if c.residual > tol.endpoint:
            continue
        if any(_same_candidate(c, o, tol) for o in candidates):
            continue
        candidates.append(c)
    return sorted(candidates, key=_sort_key)


def _same_candidate(a, b, tol):
    if a.path_type != b.path_type:
        return False
    return np.allclose(candidate_angles(a), candidate_angles(b), rtol=0, atol=10 * tol.angle_snap)


def select_optimal(candidates, tol=None):
    """ Index of the shortest candidate; near-ties go to the earlier path type. """
    if tol is None:
        tol = DEFAULT_TOLERANCES
    shortest = min(c.length for c in candidates)
    tied = [i for i, c in enumerate(candidates) if c.length <= shortest + tol.tie]
    return min(tied, key=lambda i: (PathType.order(candidates[i].path_type), _sort_key(candidates[i])))


class Plan(namedtuple('Plan', 'R0 X_f r candidates optimal')):

    @property
    def optimal_candidate(self):
        return self.candidates[self.optimal]

    def sorted_candidates(self):
        return sorted(self.candidates, key=_sort_key)

    def best_per_type(self):
        best = {}
        for c in self.sorted_candidates():
            best.setdefault(c.path_type, c)
        return [best[t] for t in PathType.ALL if t in best]


def plan(R0, X_f, r, tol=None):
    """ Shortest path from configuration R0 to location X_f, free final heading. """
    if tol is None:
        tol = DEFAULT_TOLERANCES
    R0 = as_configuration(R0)
    radius = check_planner_radius(r)
    X_f = check_unit_vector(X_f, tol.unit, name='X_f')

    x_local = R0.matrix.T.dot(X_f)
    candidates = enumerate_candidates(x_local, radius, tol)
    if not candidates:
        msg = ('No candidate path reaches x_f = %s with r = %r; the candidate set should '
               'always be non-empty, this is a solver bug.' % (x_local.tolist(), radius.r))
        sdlogger.error(msg)
        raise InconsistentSolution(msg)

    optimal = select_optimal(candidates, tol)
    best = candidates[optimal]
    sdlogger.debug('plan: %d candidates, optimal %s length %.12g' %
                   (len(candidates), best.path_type, best.length))
    return Plan(R0, X_f, radius, candidates, optimal)


def trivial_target(x_f, tol=None):
    if tol is None:
        tol = DEFAULT_TOLERANCES
    return np.linalg.norm(np.asarray(x_f, dtype=float) - E1) <= tol.endpoint
