"""
Machine-readable reports of the `plan` and `oracle` commands, and the
waypoint text format of `sample`.

Reports are ordered mappings with a stable key order; rendered as JSON
they are byte-identical for identical inputs.
"""
import json
from collections import OrderedDict

import numpy as np

from .constants import FORMAT_VERSION, PathType, WAYPOINT_COLUMNS
from .geometry import sample_path, segment_index_at
from .planner import candidate_angles

# Letter of the `type` column for a path without segments
TRIVIAL_LETTER = 'T'


def candidate_as_dict(candidate):
    phi1, phi2 = candidate_angles(candidate)
    data = OrderedDict()
    data['type'] = candidate.path_type
    data['phi1'] = float(phi1)
    data['phi2'] = float(phi2)
    data['length'] = float(candidate.length)
    data['residual'] = float(candidate.residual)
    return data


def _type_order(candidate):
    phi1, phi2 = candidate_angles(candidate)
    return PathType.order(candidate.path_type), phi1, phi2


def plan_report(instance, plan, sorted_by_length=False, waypoints=None):
    """
        Report of a Plan. Candidates are listed by path type, or by
        ascending length with `sorted_by_length`; `optimal` indexes that list.
    """
    if sorted_by_length:
        candidates = plan.sorted_candidates()
    else:
        candidates = sorted(plan.candidates, key=_type_order)
    best = plan.optimal_candidate

    data = OrderedDict()
    data['format'] = FORMAT_VERSION
    data['instance'] = instance.as_dict()
    data['candidates'] = [candidate_as_dict(c) for c in candidates]
    data['optimal'] = candidates.index(best)
    data['optimal_type'] = best.path_type
    data['length'] = float(best.length)
    if waypoints is not None:
        data['waypoints'] = [waypoint_as_dict(w) for w in waypoints]
    return data


def oracle_section(oracle_result, plan=None):
    data = OrderedDict()
    data['feasible'] = oracle_result.feasible
    c = oracle_result.candidate
    data['word'] = oracle_result.word
    data['length'] = None if c is None else float(c.length)
    data['residual'] = None if c is None else float(c.residual)
    data['angles'] = None if c is None else [float(seg.angle) for seg in c.segments]
    data['resolution_bound'] = float(oracle_result.resolution_bound)
    data['chord_tolerance'] = float(oracle_result.chord_tolerance)
    data['words_searched'] = oracle_result.words_searched
    if plan is not None and c is not None:
        # planner minus oracle; at most resolution_bound when the planner is optimal
        data['gap'] = float(plan.optimal_candidate.length - c.length)
    else:
        data['gap'] = None
    return data


def make_waypoints(R0, candidate, n):
    """ n samples along a candidate, as rows of the waypoint format. """
    rows = []
    segments = list(candidate.segments)
    for s, frame in sample_path(R0, segments, candidate.r, n):
        if segments:
            i = segment_index_at(segments, candidate.r, s)
            letter = segments[i].seg_type
        else:
            i = 0
            letter = TRIVIAL_LETTER
        rows.append((s, frame.X, frame.T, i, letter))
    return rows


def waypoint_as_dict(row):
    s, X, T, i, letter = row
    data = OrderedDict()
    data['s'] = float(s)
    data['position'] = [float(x) for x in X]
    data['tangent'] = [float(x) for x in T]
    data['segment'] = i
    data['type'] = letter
    return data


def format_waypoints(rows):
    """ Columnar text with one header line. """
    lines = ['# ' + ' '.join(WAYPOINT_COLUMNS)]
    for s, X, T, i, letter in rows:
        values = [s] + list(X) + list(T)
        lines.append(' '.join('%.15g' % v for v in values) + ' %d %s' % (i, letter))
    return '\n'.join(lines) + '\n'


def to_json(data):
    return json.dumps(data, indent=2) + '\n'


def _angle(phi, degrees):
    if degrees:
        return '%.6f deg' % np.degrees(phi)
    return '%.12g' % phi


def format_plan_text(data, degrees=False):
    """ Human-readable rendering of a plan report; angles in degrees on request. """
    inst = data['instance']
    lines = ['r = %.12g' % inst['r'],
             'target = (%s)' % ', '.join('%.12g' % x for x in inst['target'])]
    lines.append('%-3s %-8s %-18s %-18s %-16s %s' % ('', 'type', 'phi1', 'phi2', 'length', 'residual'))
    for i, c in enumerate(data['candidates']):
        mark = '*' if i == data['optimal'] else ''
        lines.append('%-3s %-8s %-18s %-18s %-16.12g %.3g' % (mark, c['type'], _angle(c['phi1'], degrees),
                                                             _angle(c['phi2'], degrees), c['length'],
                                                             c['residual']))
    lines.append('optimal: %s, length %.12g' % (data['optimal_type'], data['length']))
    if 'oracle' in data:
        o = data['oracle']
        if o['feasible']:
            lines.append('oracle: %s, length %.12g, gap %.3g, bound %.3g (%d words)' %
                         (o['word'] or PathType.TRIVIAL, o['length'], o['gap'], o['resolution_bound'],
                          o['words_searched']))
        else:
            lines.append('oracle: infeasible at this resolution (bound %.3g)' % o['resolution_bound'])
    return '\n'.join(lines) + '\n'
