"""
Problem instances as read from YAML/JSON files or command-line flags.

    format: 1
    r: 0.4
    target: [0.6942, 0.5498, 0.4646]
    r0: [[1, 0, 0], [0, 1, 0], [0, 0, 1]]     # optional, default identity
    options:                                # optional
      samples: 200
      grid_step: 0.0031415926
      max_segments: 3
      refine_tol: 1.0e-10
"""
from collections import OrderedDict

import numpy as np
from contracts import check_isinstance, raise_wrapped

from . import sdlogger
from .constants import DEFAULT_TOLERANCES, FORMAT_VERSION
from .exceptions import InvalidInstance
from .geometry import Configuration, as_turn_radius
from .yaml_utils import read_yaml_file

ALLOWED_FIELDS = ['format', 'r', 'target', 'r0', 'options']
ALLOWED_OPTIONS = ['samples', 'grid_step', 'max_segments', 'refine_tol']


class InstanceOptions(object):

    def __init__(self, samples=None, grid_step=None, max_segments=None, refine_tol=None):
        self.samples = None if samples is None else _as_int('samples', samples)
        self.grid_step = None if grid_step is None else _as_float('grid_step', grid_step)
        self.max_segments = None if max_segments is None else _as_int('max_segments', max_segments)
        self.refine_tol = None if refine_tol is None else _as_float('refine_tol', refine_tol)

    def as_dict(self):
        data = OrderedDict()
        for k in ALLOWED_OPTIONS:
            v = getattr(self, k)
            if v is not None:
                data[k] = v
        return data

    @staticmethod
    def from_yaml(data):
        if data is None:
            return InstanceOptions()
        if not isinstance(data, dict):
            msg = 'options must be a mapping, got %r' % (data,)
            raise InvalidInstance(msg)
        unknown = sorted(set(data) - set(ALLOWED_OPTIONS))
        if unknown:
            msg = 'Unknown options %s; allowed: %s' % (unknown, ALLOWED_OPTIONS)
            raise InvalidInstance(msg)
        return InstanceOptions(**data)


class InstanceFile(object):
    """ A validated problem instance; the target is unit norm. """

    def __init__(self, r, target, r0=None, options=None, tol=None):
        if tol is None:
            tol = DEFAULT_TOLERANCES
        self.r = as_turn_radius(r)
        self.target = normalize_target(target, tol)
        if r0 is None:
            r0 = np.eye(3)
        if not isinstance(r0, Configuration):
            r0 = Configuration(_as_matrix(r0))
        self.r0 = r0
        if options is None:
            options = InstanceOptions()
        check_isinstance(options, InstanceOptions)
        self.options = options

    def as_dict(self):
        data = OrderedDict()
        data['format'] = FORMAT_VERSION
        data['r'] = self.r.r
        data['target'] = [float(x) for x in self.target]
        data['r0'] = [[float(x) for x in row] for row in self.r0.matrix]
        options = self.options.as_dict()
        if options:
            data['options'] = options
        return data

    @staticmethod
    def from_yaml(data):
        if not isinstance(data, dict):
            msg = 'An instance must be a mapping, got %s' % type(data).__name__
            raise InvalidInstance(msg)
        unknown = sorted(set(data) - set(ALLOWED_FIELDS))
        if unknown:
            msg = 'Unknown fields %s; allowed: %s' % (unknown, ALLOWED_FIELDS)
            raise InvalidInstance(msg)
        fmt = data.get('format', FORMAT_VERSION)
        if fmt != FORMAT_VERSION:
            msg = 'Unsupported format %r; expected %r' % (fmt, FORMAT_VERSION)
            raise InvalidInstance(msg)
        try:
            r = data['r']
            target = data['target']
        except KeyError as e:
            msg = 'Missing field %s' % e
            raise_wrapped(InvalidInstance, e, msg, compact=True)
        options = InstanceOptions.from_yaml(data.get('options', None))
        return InstanceFile(_as_float('r', r), target, data.get('r0', None), options)

    @staticmethod
    def from_flags(r, target, r0=None, options=None):
        if r is None or target is None:
            msg = 'Both --r and --target are needed without --instance.'
            raise InvalidInstance(msg)
        target = parse_floats('--target', target, 3)
        if r0 is not None:
            r0 = np.reshape(parse_floats('--r0', r0, 9), (3, 3))
        return InstanceFile(_as_float('--r', r), target, r0, options)


def read_instance(filename):
    try:
        data = read_yaml_file(filename)
    except (IOError, OSError) as e:
        msg = 'Cannot read instance file %r' % filename
        raise_wrapped(InvalidInstance, e, msg, compact=True)
    instance = InstanceFile.from_yaml(data)
    sdlogger.debug('Read instance from %s' % filename)
    return instance


def normalize_target(target, tol=None):
    """ Rescales a target typed with a few decimals onto the sphere. """
    if tol is None:
        tol = DEFAULT_TOLERANCES
    v = _as_vector('target', target, 3)
    n = np.linalg.norm(v)
    if not abs(n - 1.0) <= tol.input_norm:
        msg = 'target must have unit norm (within %g), got |target| = %.12g' % (tol.input_norm, n)
        raise InvalidInstance(msg)
    return v / n


def parse_floats(name, s, n):
    """ "x,y,z" -> array of n floats. """
    try:
        values = [float(x) for x in s.split(',')]
    except ValueError as e:
        msg = '%s must be %d comma-separated numbers, got %r' % (name, n, s)
        raise_wrapped(InvalidInstance, e, msg, compact=True)
    return _as_vector(name, values, n)


def _as_vector(name, values, n):
    try:
        v = np.array(values, dtype=float)
    except (TypeError, ValueError) as e:
        msg = '%s must be %d numbers, got %r' % (name, n, values)
        raise_wrapped(InvalidInstance, e, msg, compact=True)
    if v.shape != (n,):
        msg = '%s must be %d numbers, got %r' % (name, n, values)
        raise InvalidInstance(msg)
    if not np.all(np.isfinite(v)):
        msg = '%s must be finite, got %r' % (name, values)
        raise InvalidInstance(msg)
    return v


def _as_matrix(values):
    try:
        m = np.array(values, dtype=float)
    except (TypeError, ValueError) as e:
        msg = 'r0 must be a 3x3 matrix, got %r' % (values,)
        raise_wrapped(InvalidInstance, e, msg, compact=True)
    if m.shape == (9,):
        m = m.reshape((3, 3))
    if m.shape != (3, 3):
        msg = 'r0 must be a 3x3 matrix, got %r' % (values,)
        raise InvalidInstance(msg)
    return m


def _as_float(name, x):
    if isinstance(x, bool):
        msg = '%s must be a number, got %r' % (name, x)
        raise InvalidInstance(msg)
    try:
        return float(x)
    except (TypeError, ValueError) as e:
        msg = '%s must be a number, got %r' % (name, x)
        raise_wrapped(InvalidInstance, e, msg, compact=True)


def _as_int(name, x):
    if isinstance(x, bool) or not float(_as_float(name, x)).is_integer():
        msg = '%s must be an integer, got %r' % (name, x)
        raise InvalidInstance(msg)
    return int(x)

