import importlib.util
import os

import pytest

import shiftcert.compressible
import shiftcert.groups


def _loadScript(name, filename):

    spec = importlib.util.spec_from_file_location(name, filename)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)

    return module


@pytest.fixture(scope = 'session')
def cli():
    '''
    The command line script, loaded as a module.
    '''

    filename = '/'.join(os.path.abspath(__file__).split('/')[:-2] + ['cli', 'shiftcert.py'])

    return _loadScript('shiftcert_cli', filename)


@pytest.fixture(autouse = True)
def cache_dir(tmp_path, monkeypatch):

    monkeypatch.setenv('SHIFTCERT_CACHE', str(tmp_path))

    return tmp_path


@pytest.fixture(scope = 'session')
def F2():
    return shiftcert.groups.parseGroup('F2')


@pytest.fixture(scope = 'session')
def Z():
    return shiftcert.groups.parseGroup('Z')


@pytest.fixture(scope = 'session')
def toy_build(F2):
    '''
    The default toy witness for F2 (n = 4, R = 8), built once.
    '''

    return shiftcert.compressible.runBuilder(F2, rho = 1, mode = 'toy', n = 4, R = 8)
