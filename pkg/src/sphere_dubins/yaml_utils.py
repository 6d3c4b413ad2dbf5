import os

from ruamel.yaml import YAML

from .exceptions import InvalidInstance


def read_yaml_file(fn):
    if not os.path.exists(fn):
        msg = 'File %r does not exist.' % fn
        raise InvalidInstance(msg)

    with open(fn) as f:
        data = f.read()
    return read_yaml_string(data, fn)


def read_yaml_string(s, origin='<string>'):
    """ Safe load; JSON documents are valid YAML too. """
    yaml = YAML(typ='safe')
    try:
        return yaml.load(s)
    except Exception as e:
        msg = 'Cannot parse YAML from %s: %s' % (origin, e)
        raise InvalidInstance(msg)
