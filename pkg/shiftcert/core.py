
import os
import xml.etree.ElementTree as ET


##################################
### Errors and outcome records ###
##################################

class ResourceLimitError(RuntimeError):
    '''
    Raised when a ball, pattern or search cap is exceeded.
    '''
    pass


class VerificationError(AssertionError):
    '''
    Raised when a certificate or patch fails re-verification. The offending group element (or vertex) is kept in .point.
    '''

    def __init__(self, message, point = None):
        '''
        Args:
            message: Description of the failed condition.
            point: The element at which the condition failed, where there is one.
        '''

        AssertionError.__init__(self, message)
        self.message = message
        self.point = point


class NotFound(object):
    '''
    An inconclusive search outcome. Falsy, so that callers can write "if result:".
    '''

    outcome = 'inconclusive'

    def __init__(self, reason, radius = None):
        '''
        Args:
            reason: Short text describing why the search stopped.
            radius: The largest radius (or depth) explored, where meaningful.
        '''

        self.reason = reason
        self.radius = radius

    def __bool__(self):
        return False

    def __repr__(self):
        if self.radius is None:
            return 'NotFound(%s)'%self.reason
        return 'NotFound(%s, radius %s)'%(self.reason, str(self.radius))


####################################
### Class for toolkit settings   ###
####################################

_DEFAULTS = {'ball_cap': 1000000,
             'pattern_cap': 10000000,
             'search_cap': 200000,
             'probe_budget': 12,
             'probe_offset': 3,
             'folner_epsilon': 0.2,
             'toy_n': 4,
             'toy_radius': 8,
             'format_version': 1}

_PATHS = {'ball_cap': 'Resource_Limits/Ball_Cap',
          'pattern_cap': 'Resource_Limits/Pattern_Cap',
          'search_cap': 'Resource_Limits/Search_Cap',
          'probe_budget': 'Probe/Budget',
          'probe_offset': 'Probe/Expansion_Offset',
          'folner_epsilon': 'Probe/Folner_Epsilon',
          'toy_n': 'Toy_Builder/N',
          'toy_radius': 'Toy_Builder/Radius',
          'format_version': 'Output/Format_Version'}


def _defaultConfigFile():
    '''
    Location of the configuration file, either from SHIFTCERT_CONFIG or the cfg/ directory shipped with the package.
    '''

    if os.environ.get('SHIFTCERT_CONFIG'):
        return os.environ['SHIFTCERT_CONFIG']

    return '/'.join(os.path.abspath(__file__).split('/')[:-2] + ['cfg', 'defaults.xml'])


class Settings(object):
    '''
    Resource caps and defaults, read from an XML configuration file.
    '''

    def __init__(self, config_file = None):
        '''
        Args:
            config_file: Path to an XML file in the format of cfg/defaults.xml. Defaults to the file named by SHIFTCERT_CONFIG, or the packaged cfg/defaults.xml.
        '''

        self.config_file = config_file if config_file is not None else _defaultConfigFile()

        values = self.__readFile(self.config_file)

        self.ball_cap = self.__getCap(values, 'ball_cap')
        self.pattern_cap = self.__getCap(values, 'pattern_cap')
        self.search_cap = self.__getCap(values, 'search_cap')
        self.probe_budget = self.__getCap(values, 'probe_budget')
        self.probe_offset = self.__getOffset(values)
        self.folner_epsilon = self.__getEpsilon(values)
        self.toy_n = self.__getCap(values, 'toy_n')
        self.toy_radius = self.__getCap(values, 'toy_radius')
        self.format_version = self.__getCap(values, 'format_version')

    def __readFile(self, config_file):
        '''
        Read every known key, falling back to built-in defaults for missing entries.
        '''

        values = dict(_DEFAULTS)

        if not os.path.isfile(config_file):
            print('WARNING: Configuration file %s not found, using built-in defaults.'%config_file)
            return values

        tree = ET.ElementTree(file = config_file)
        root = tree.getroot()

        for key, path in _PATHS.items():
            node = root.find(path)
            if node is not None and node.text is not None and node.text.strip() != '':
                values[key] = node.text.strip()

        return values

    def __getCap(self, values, key):
        '''
        '''

        try:
            value = int(values[key])
        except ValueError:
            raise ValueError("Configuration value %s must be an integer, got '%s'."%(key, values[key]))

        assert value >= 1, "Configuration value %s must be at least 1."%key

        return value

    def __getOffset(self, values):
        '''
        '''

        value = int(values['probe_offset'])
        assert value >= 0, "Configuration value probe_offset must be non-negative."

        return value

    def __getEpsilon(self, values):
        '''
        '''

        value = float(values['folner_epsilon'])
        assert value > 0, "Configuration value folner_epsilon must be positive."

        return value


_settings = None

def getSettings(reload = False):
    '''
    Return the process-wide Settings object, reading the configuration file on first use.

    Args:
        reload: Set True to re-read the configuration file (e.g. after changing SHIFTCERT_CONFIG).

    Returns:
        A Settings object.
    '''

    global _settings

    if _settings is None or reload:
        _settings = Settings()

    return _settings


def resolveCap(name, value = None):
    '''
    Return value if given, otherwise the configured default called name.
    '''

    if value is not None:
        assert value >= 1, "%s must be at least 1."%name
        return value

    return getattr(getSettings(), name)


def getCacheDir():
    '''
    Directory for output files. Set with the environment variable SHIFTCERT_CACHE, defaults to the present working directory.
    '''

    cache_dir = os.environ.get('SHIFTCERT_CACHE', os.getcwd())

    if not os.path.isdir(cache_dir):
        os.makedirs(cache_dir)

    return os.path.abspath(cache_dir)
