__version__ = '1.0.0'

import logging

logging.basicConfig()
sdlogger = logging.getLogger('sphere-dubins')
sdlogger.setLevel(logging.INFO)

from .constants import *
from .exceptions import *

from .geometry import *
from .solvers import *
from .planner import *
from .oracle import *
from .analysis import *
from .verification import *
from .instance import *
from .report import *

from .cli import sphere_dubins_main

sdlogger.debug('sphere-dubins %s' % __version__)
