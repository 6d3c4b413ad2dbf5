from collections import namedtuple

import numpy as np

# Version of the instance/report text formats
FORMAT_VERSION = 1

# Largest tight-turn radius accepted anywhere (analysis utilities)
R_MAX_ANALYSIS = 1.0 / np.sqrt(2.0)
# Largest radius for which the planner's candidate set is proven
R_MAX_PLANNER = 0.5

TWO_PI = 2.0 * np.pi

Tolerances = namedtuple('Tolerances',
                        'matrix config unit endpoint angle_snap arg_snap tie input_norm')

DEFAULT_TOLERANCES = Tolerances(matrix=1e-12,
                                config=1e-9,
                                unit=1e-9,
                                endpoint=1e-9,
                                angle_snap=1e-7,
                                arg_snap=1e-12,
                                tie=1e-10,
                                # 4-decimal targets typed on a command line
                                input_norm=1e-3)


class SegmentType(object):
    L = 'L'
    R = 'R'
    G = 'G'

    ALL = [L, R, G]


class PathType(object):
    LG = 'LG'
    RG = 'RG'
    LR = 'LR'
    RL = 'RL'
    L = 'L'
    R = 'R'
    G = 'G'
    TRIVIAL = 'TRIVIAL'

    # tie-break order used by the planner
    ALL = [LG, RG, LR, RL, L, R, G, TRIVIAL]

    @staticmethod
    def order(path_type):
        return PathType.ALL.index(path_type)


class ExitCodes(object):
    SUCCESS = 0
    CHECKS_FAILED = 1
    INPUT_ERROR = 2
    INTERNAL_ERROR = 3


class CheckStatus(object):
    PASS = 'PASS'
    FAIL = 'FAIL'

    ALL = [PASS, FAIL]


# Columns of the waypoint text format
WAYPOINT_COLUMNS = ['s', 'x', 'y', 'z', 'tx', 'ty', 'tz', 'segment', 'type']
