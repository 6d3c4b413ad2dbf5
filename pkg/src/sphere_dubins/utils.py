import os

from . import sdlogger
from .exceptions import DomainError


def write_text_file(text, filename):
    """
        Writes a report or waypoint file in one step: the text goes to a
        sibling temporary file that then replaces `filename`. Directories
        are created as needed; a file that already holds `text` is left alone.
    """
    if not isinstance(text, str):
        msg = 'Expected text, got %s.' % type(text).__name__
        raise DomainError(msg)

    filename = os.path.expanduser(filename)
    dirname = os.path.dirname(filename)
    if dirname:
        os.makedirs(dirname, exist_ok=True)

    if os.path.exists(filename):
        with open(filename) as f:
            if f.read() == text:
                sdlogger.debug('%s is up to date' % filename)
                return

    tmp = filename + '.tmp'
    with open(tmp, 'w') as f:
        f.write(text)
    os.replace(tmp, filename)
    sdlogger.debug('wrote %d bytes to %s' % (len(text), filename))
