import copy
import hashlib
import os
import re
import tempfile
import xml.etree.ElementTree as ET
from fractions import Fraction

import shiftcert.amenability
import shiftcert.compressible
import shiftcert.core
import shiftcert.groups
import shiftcert.matching
import shiftcert.subshift
from shiftcert.core import VerificationError

### Reading and writing certificates, patches and graphs as structured XML


###########################
### Shared helpers      ###
###########################

def _canonical(root):
    '''
    Whitespace-free serialisation of the content elements, used for digests.
    '''

    node = copy.deepcopy(root)
    for element in node.iter():
        if element.text is not None and element.text.strip() == '':
            element.text = None
        if element.tail is not None and element.tail.strip() == '':
            element.tail = None

    return ''.join([ET.tostring(child, encoding = 'unicode') for child in node])


def _digest(root):
    return hashlib.sha256((root.get('kind', '') + _canonical(root)).encode('utf-8')).hexdigest()


def _newRoot(kind, group):

    root = ET.Element('shiftcert')
    root.set('format-version', str(shiftcert.core.getSettings().format_version))
    root.set('kind', kind)

    ET.SubElement(root, 'group', descriptor = group.descriptor)

    return root


def _writeTree(root, filename):
    '''
    Sign and write an XML tree atomically: a temporary file in the same directory is renamed over the target.
    '''

    root.set('digest', _digest(root))
    ET.indent(root)

    text = '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding = 'unicode') + '\n'

    directory = os.path.dirname(os.path.abspath(filename))
    fd, tmp = tempfile.mkstemp(dir = directory, prefix = '.shiftcert_', suffix = '.tmp')

    try:
        with os.fdopen(fd, 'w', encoding = 'utf-8') as f:
            f.write(text)
        os.replace(tmp, filename)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise

    return os.path.abspath(filename)


def _readTree(filename, kinds = None):
    '''
    Parse a file, checking format version, digest and (optionally) kind. Returns the root and its group.
    '''

    assert os.path.isfile(filename), "File %s does not exist."%filename

    tree = ET.ElementTree(file = filename)
    root = tree.getroot()

    if root.tag != 'shiftcert':
        raise ValueError('%s is not a shiftcert file.'%filename)

    version = int(root.get('format-version', '0'))
    if version != shiftcert.core.getSettings().format_version:
        raise ValueError('%s has format version %s, expected %s.'%(filename, str(version), str(shiftcert.core.getSettings().format_version)))

    if root.get('digest') != _digest(root):
        raise VerificationError('Content digest of %s does not match: the file was modified.'%filename)

    if kinds is not None and root.get('kind') not in kinds:
        raise ValueError("%s holds a '%s', expected one of %s."%(filename, root.get('kind'), ', '.join(kinds)))

    group = shiftcert.groups.parseGroup(root.find('group').get('descriptor'))

    return root, group


def _defaultFilename(kind, group, suffix = '', output_dir = None):
    '''
    Output path in output_dir (default: the cache directory), e.g. expansion_F2_R5.xml.
    '''

    if output_dir is None:
        output_dir = shiftcert.core.getCacheDir()
    elif not os.path.isdir(output_dir):
        os.makedirs(output_dir)

    name = re.sub(r'[^A-Za-z0-9]+', '', group.descriptor.replace('*', 'star'))

    return '%s/%s_%s%s.xml'%(os.path.abspath(output_dir), kind, name, suffix)


def _writeElements(parent, tag, group, elements):

    node = ET.SubElement(parent, tag)
    for g in elements:
        ET.SubElement(node, 'element').text = group.format(g)

    return node


def _readElements(parent, tag, group):

    node = parent.find(tag)
    assert node is not None, "Missing <%s> section."%tag

    return [group.parse(e.text) for e in node.findall('element')]


def _symbolAttributes(group, x):
    '''
    (type, text) for a cell symbol.
    '''

    if isinstance(x, str):
        return 'str', x
    if isinstance(x, bool):
        return 'int', str(int(x))
    if isinstance(x, int):
        return 'int', str(x)
    if isinstance(x, tuple) and len(x) == 2 and x[0] in ('S', 'T'):
        return 'label', '%s:%s'%(x[0], group.format(x[1]))

    return 'element', group.format(x)


def _parseSymbol(group, kind, text):

    if kind == 'str':
        return text
    if kind == 'int':
        return int(text)
    if kind == 'label':
        side, sep, rest = text.partition(':')
        return (side, group.parse(rest))
    if kind == 'element':
        return group.parse(text)

    raise ValueError("Unknown symbol type '%s'."%kind)


def _writeCells(parent, group, cells):

    node = ET.SubElement(parent, 'cells')
    for g in group.sort(cells.keys()):
        kind, text = _symbolAttributes(group, cells[g])
        ET.SubElement(node, 'cell', element = group.format(g), type = kind, symbol = text)

    return node


def _readCells(parent, group):

    cells = {}
    for cell in parent.find('cells').findall('cell'):
        g = group.parse(cell.get('element'))
        cells[g] = _parseSymbol(group, cell.get('type'), cell.get('symbol'))

    return cells


#################################
### Certificates              ###
#################################

def writeCertificate(cert, filename = None, output_dir = None):
    '''
    Write a certificate (Følner, expansion, X_T / X_{S,T} paradox, or compressible witness) to an XML file.

    Args:
        cert: A certificate object.
        filename: Output path. Defaults to a name in the cache directory (SHIFTCERT_CACHE).
        output_dir: Directory for the default name. Defaults to the cache directory (SHIFTCERT_CACHE).

    Returns:
        The absolute path written.
    '''

    if isinstance(cert, shiftcert.compressible.WitnessPatch):
        return writeWitness(cert, filename = filename, output_dir = output_dir)

    kinds = (shiftcert.amenability.FolnerCertificate, shiftcert.amenability.ExpansionCertificate, shiftcert.amenability.ParadoxCertificate)
    if not isinstance(cert, kinds):
        raise ValueError('Cannot write objects of type %s.'%type(cert).__name__)

    group = cert.group

    if isinstance(cert, shiftcert.amenability.FolnerCertificate):
        root = _newRoot('folner', group)
        body = ET.SubElement(root, 'body', index = str(cert.index), ratio = str(cert.ratio), epsilon = str(cert.epsilon))
        _writeElements(body, 'S', group, cert.S)
        _writeElements(body, 'F', group, group.sort(cert.F))
        suffix = '_N%s'%str(cert.index)

    elif isinstance(cert, shiftcert.amenability.ExpansionCertificate):
        root = _newRoot('expansion', group)
        body = ET.SubElement(root, 'body', R = str(cert.R))
        _writeElements(body, 'S', group, cert.S)
        node = ET.SubElement(body, 'assignment')
        for g in cert.domain():
            ET.SubElement(node, 'map', source = group.format(g), target = group.format(cert.assignment[g]))
        suffix = '_R%s'%str(cert.R)

    else:
        root = _newRoot(cert.kind, group)
        body = ET.SubElement(root, 'body', R = str(cert.R), R0 = str(cert.R0))
        _writeElements(body, 'S', group, cert.S)
        _writeElements(body, 'T', group, cert.T)
        if cert.pieces is not None:
            node = ET.SubElement(body, 'pieces')
            for (side, x), text in cert.pieces:
                ET.SubElement(node, 'piece', side = side, element = group.format(x), description = text)
        _writeCells(body, group, cert.cells)
        suffix = '_R%s'%str(cert.R)

    if filename is None:
        filename = _defaultFilename(root.get('kind'), group, suffix, output_dir = output_dir)

    return _writeTree(root, filename)


def readCertificate(filename):
    '''
    Read a certificate written by writeCertificate. The digest is checked; the content is not re-verified (use verifyCertificate).

    Returns:
        A FolnerCertificate, ExpansionCertificate, ParadoxCertificate or WitnessPatch.
    '''

    root, group = _readTree(filename, kinds = ['folner', 'expansion', 'XT', 'XST', 'witness'])
    kind = root.get('kind')

    if kind == 'witness':
        return _readWitness(root, group)

    body = root.find('body')
    S = _readElements(body, 'S', group)

    if kind == 'folner':
        F = _readElements(body, 'F', group)
        return shiftcert.amenability.FolnerCertificate(group, S, F, Fraction(body.get('ratio')), Fraction(body.get('epsilon')), int(body.get('index')))

    if kind == 'expansion':
        assignment = dict((group.parse(m.get('source')), group.parse(m.get('target'))) for m in body.find('assignment').findall('map'))
        return shiftcert.amenability.ExpansionCertificate(group, S, int(body.get('R')), assignment)

    T = _readElements(body, 'T', group)
    pieces = None
    if body.find('pieces') is not None:
        pieces = [((p.get('side'), group.parse(p.get('element'))), p.get('description')) for p in body.find('pieces').findall('piece')]

    return shiftcert.amenability.ParadoxCertificate(group, kind, S, T, _readCells(body, group), int(body.get('R')), int(body.get('R0')), pieces = pieces)


#################################
### Compressible witnesses    ###
#################################

def writeWitness(witness, filename = None, output_dir = None):
    '''
    Write a compressible witness patch with its parameter record embedded.
    '''

    params = witness.params
    group = params.group

    root = _newRoot('witness', group)
    body = ET.SubElement(root, 'body', R = str(witness.R), R0 = str(witness.R0))

    ET.SubElement(body, 'params', mode = params.mode, rho = str(params.rho), n = str(params.n), r = group.format(params.r))
    _writeElements(body, 'S_prime', group, params.S_prime)
    _writeCells(body, group, witness.patch.cells)

    if filename is None:
        filename = _defaultFilename('witness', group, '_R%s'%str(witness.R), output_dir = output_dir)

    return _writeTree(root, filename)


def _readWitness(root, group):

    body = root.find('body')
    node = body.find('params')

    S = shiftcert.groups.ball(group, None, int(node.get('rho'))).elements
    S_prime = _readElements(body, 'S_prime', group)
    params = shiftcert.compressible.BuilderParams(group, S, int(node.get('n')), group.parse(node.get('r')), S_prime, node.get('mode'))

    patch = shiftcert.subshift.Patch(group, _readCells(body, group))
    witness = shiftcert.compressible.WitnessPatch(params, patch, int(body.get('R')), int(body.get('R0')), None)
    params.phi = shiftcert.compressible.patternInjection(params, symbols = witness.symbols())

    return witness


#################################
### Patches and graphs        ###
#################################

def writePatch(patch, filename, spec = None):
    '''
    Write a patch, with the sha256 digest of its spec when given.
    '''

    group = patch.group

    root = _newRoot('patch', group)
    body = ET.SubElement(root, 'body')
    if spec is not None:
        body.set('spec', spec.name)
        body.set('spec-digest', spec.digest())

    _writeElements(body, 'domain', group, group.sort(patch.domain))
    _writeCells(body, group, patch.cells)

    return _writeTree(root, filename)


def readPatch(filename, spec = None):
    '''
    Read a patch. When spec is given, its digest must match the one recorded.
    '''

    root, group = _readTree(filename, kinds = ['patch'])
    body = root.find('body')

    if spec is not None:
        if spec.group != group:
            raise ValueError('Patch is over %s, spec over %s.'%(group.descriptor, spec.group.descriptor))
        if body.get('spec-digest') is not None and body.get('spec-digest') != spec.digest():
            raise VerificationError('Patch %s was written for a different spec (%s).'%(filename, body.get('spec')))

    domain = _readElements(body, 'domain', group)

    return shiftcert.subshift.Patch(group, _readCells(body, group), domain)


def writeGraph(g, filename):
    '''
    Write a BipartiteGraph. Vertices are stored with str().
    '''

    root = ET.Element('shiftcert')
    root.set('format-version', str(shiftcert.core.getSettings().format_version))
    root.set('kind', 'graph')
    ET.SubElement(root, 'group', descriptor = 'C1')

    body = ET.SubElement(root, 'body')
    left = ET.SubElement(body, 'left')
    for v in g.left:
        ET.SubElement(left, 'vertex').text = str(v)
    right = ET.SubElement(body, 'right')
    for w in g.right:
        ET.SubElement(right, 'vertex').text = str(w)
    edges = ET.SubElement(body, 'edges')
    for v, w in g.edges():
        ET.SubElement(edges, 'edge', left = str(v), right = str(w))

    return _writeTree(root, filename)


def readGraph(filename, parse = None):
    '''
    Read a BipartiteGraph written by writeGraph.

    Args:
        filename: Path to the file.
        parse: Optional function turning vertex strings into vertices (e.g. int).
    '''

    root, group = _readTree(filename, kinds = ['graph'])
    body = root.find('body')

    parse = parse if parse is not None else (lambda text: text)

    left = [parse(v.text) for v in body.find('left').findall('vertex')]
    right = [parse(v.text) for v in body.find('right').findall('vertex')]

    adjacency = dict((v, []) for v in left)
    for edge in body.find('edges').findall('edge'):
        adjacency[parse(edge.get('left'))].append(parse(edge.get('right')))

    return shiftcert.matching.BipartiteGraph(left, right, adjacency)
