#!/usr/bin/env python

import argparse
import os
import re
import sys
import time
import pandas as pd

import shiftcert.amenability
import shiftcert.compressible
import shiftcert.core
import shiftcert.flows
import shiftcert.groups
import shiftcert.IO
import shiftcert.subshift
from shiftcert.core import ResourceLimitError

#######################################################################
### Command line interface for amenability and subshift certificates ###
#######################################################################

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INCONCLUSIVE = 2


def _parseElements(group, texts):
    '''
    Parse a list of element strings, or return None when none were given.
    '''

    if texts is None:
        return None

    return [group.parse(t) for t in texts]


def _buildSpec(group, text):
    '''
    Build a named subshift spec: 'golden-mean', 'hard-core', 'full:K' (alphabet 0..K-1) or 'xt:t1,t2,...'.
    '''

    if text == 'golden-mean':
        return shiftcert.subshift.goldenMean(group)
    if text == 'hard-core':
        return shiftcert.subshift.hardCore(group)

    kind, sep, rest = text.partition(':')

    if kind == 'full' and sep:
        return shiftcert.subshift.fullShift(group, list(range(int(rest))))
    if kind == 'xt' and sep:
        return shiftcert.subshift.xtSpec(group, [group.parse(t) for t in rest.split(',')])

    raise ValueError("Unknown spec '%s'. Use golden-mean, hard-core, full:K or xt:t1,t2,..."%text)


def _outcome(result):
    '''
    Exit code and outcome tag for a library result.
    '''

    if result:
        return EXIT_OK, 'certificate'
    if isinstance(result, shiftcert.subshift.Unsatisfiable):
        return EXIT_OK, 'unsat'

    return EXIT_INCONCLUSIVE, getattr(result, 'outcome', 'inconclusive')


##################################
### Subcommands                ###
##################################

def _ball(args, report):

    group = shiftcert.groups.parseGroup(args.group)
    S = _parseElements(group, args.generators)

    B = shiftcert.groups.ball(group, S, args.radius, verbose = args.verbose)
    sizes = shiftcert.groups.sphereSizes(B)

    table = pd.DataFrame({'radius': list(range(len(sizes))), 'sphere': sizes, 'ball': pd.Series(sizes).cumsum()})
    print(table.to_string(index = False))

    report['parameters'] = 'radius=%s'%str(args.radius)

    return EXIT_OK, 'computed'


def _writeResult(result, args, report):

    if result:
        report['files'] = [shiftcert.IO.writeCertificate(result, output_dir = args.output_dir)]
        if args.verbose: print('Wrote %s'%report['files'][0])


def _probe(args, report):

    group = shiftcert.groups.parseGroup(args.group)

    result = shiftcert.amenability.amenabilityProbe(group, budget = args.budget, epsilon = args.epsilon, offset = args.offset, n_processes = args.n_processes, verbose = args.verbose)
    print(repr(result))

    _writeResult(result, args, report)
    report['parameters'] = 'budget=%s'%str(args.budget)

    return _outcome(result)


def _folner(args, report):

    group = shiftcert.groups.parseGroup(args.group)

    result = shiftcert.amenability.folnerSearch(group, None, args.epsilon, args.r_max, verbose = args.verbose)
    print(repr(result))

    _writeResult(result, args, report)
    report['parameters'] = 'epsilon=%s'%str(args.epsilon)

    return _outcome(result)


def _expand(args, report):

    group = shiftcert.groups.parseGroup(args.group)

    result = shiftcert.amenability.expansionCertificate(group, None, args.radius, verbose = args.verbose)
    print(repr(result))

    _writeResult(result, args, report)

    if result and args.xt:
        xt = shiftcert.amenability.xtPatchFromExpansion(result, verbose = args.verbose)
        report['files'] = report['files'] + [shiftcert.IO.writeCertificate(xt, output_dir = args.output_dir)]

    report['parameters'] = 'R=%s'%str(args.radius)

    return _outcome(result)


def _xst(args, report):

    group = shiftcert.groups.parseGroup(args.group)

    S, T, pieces = shiftcert.amenability.classicalPieces(group)
    cert = shiftcert.amenability.xstCertificate(group, S, T, pieces, args.radius, verbose = args.verbose)

    tarski = shiftcert.amenability.tarskiReport(group, [cert])
    print(tarski['table'].to_string(index = False))
    print('Tarski bounds: k <= %s, l <= %s'%(str(tarski['k']), str(tarski['l'])))

    _writeResult(cert, args, report)
    report['parameters'] = 'R=%s'%str(args.radius)

    return EXIT_OK, 'certificate'


def _buildCompressible(args, report):

    group = shiftcert.groups.parseGroup(args.group)

    out = shiftcert.compressible.runBuilder(group, rho = args.rho, mode = args.mode, n = args.n, R = args.radius, verbose = args.verbose)
    params = out['params']

    report['parameters'] = ', '.join(['%s=%s'%(k, str(v)) for k, v in params.describe().items() if k != 'S_prime'])

    if out['outcome'] == 'parameters':
        print('Parameter window: %s'%str(shiftcert.compressible.parameterWindow(len(params.S))))
        return EXIT_OK, 'parameters'

    if out['outcome'] == 'inconclusive':
        print('No witness: %s'%repr(out['violator']))
        return EXIT_INCONCLUSIVE, 'inconclusive'

    print(repr(out['witness']))
    print(out['compression']['table'].to_string(index = False))
    print('Support detection at %s points; generator check: %s (encoding injective: %s)'%(str(out['code']['checked']), repr(out['code']['separates']), str(out['code']['injective'])))

    _writeResult(out['witness'], args, report)

    return EXIT_OK, 'certificate'


def _subshiftCheck(args, report):

    group = shiftcert.groups.parseGroup(args.group)
    spec = _buildSpec(group, args.spec)
    patch = shiftcert.IO.readPatch(args.patch, spec = spec)

    result = shiftcert.subshift.patchCheck(spec, patch)
    print(repr(result))

    report['parameters'] = 'spec=%s'%spec.name

    if not result:
        return EXIT_INVALID, 'violation'

    return EXIT_OK, 'admissible'


def _subshiftExtend(args, report):

    group = shiftcert.groups.parseGroup(args.group)
    spec = _buildSpec(group, args.spec)

    target = shiftcert.groups.ball(group, None, args.radius).elements
    start = shiftcert.subshift.Patch(group, {})

    result = shiftcert.subshift.extendSearch(spec, start, target, n_processes = args.n_processes, verbose = args.verbose)
    print(repr(result))

    if result:
        output_dir = args.output_dir if args.output_dir else shiftcert.core.getCacheDir()
        if not os.path.isdir(output_dir):
            os.makedirs(output_dir)
        filename = '%s/patch_%s_r%s.xml'%(os.path.abspath(output_dir), re.sub(r'[^A-Za-z0-9-]+', '', spec.name), str(args.radius))
        report['files'] = [shiftcert.IO.writePatch(result, filename, spec = spec)]

    report['parameters'] = 'spec=%s, radius=%s'%(spec.name, str(args.radius))

    return _outcome(result)


def _genCheck(args, report):

    group = shiftcert.groups.parseGroup(args.group)
    spec = _buildSpec(group, args.spec)

    if args.symbol is None:
        labeling = lambda pattern: pattern[0]
    else:
        symbol = spec.alphabet[[str(a) for a in spec.alphabet].index(args.symbol)]
        labeling = lambda pattern: int(pattern[0] == symbol)

    result = shiftcert.subshift.clopenGeneratorCheck(spec, labeling, args.depth, args.width, verbose = args.verbose)
    print(repr(result))

    report['parameters'] = 'spec=%s, d=%s, w=%s'%(spec.name, str(args.depth), str(args.width))

    if not result:
        return EXIT_INCONCLUSIVE, 'not-separating'

    return EXIT_OK, 'separates'


def _verify(args, report):

    cert = shiftcert.IO.readCertificate(args.file)
    shiftcert.amenability.verifyCertificate(cert)
    print('%s: verified'%repr(cert))

    report['files'] = [os.path.abspath(args.file)]

    return EXIT_OK, 'verified'


def _f2Orbit(args, report):

    result = shiftcert.flows.f2OrbitCheck(args.x, args.y, args.depth, verbose = args.verbose)
    print(repr(result))

    report['parameters'] = 'depth=%s'%str(args.depth)

    if result and not result.tail_consistent:
        return EXIT_INVALID, 'tail-inconsistent'

    return _outcome(result)


def _odometer(args, report):

    x = tuple([int(c) for c in args.x])
    for c in x:
        assert 0 <= c < 4, "Odometer digits must lie in 0..3."

    if args.compress:
        y = shiftcert.flows.odometerCompression(x, tail = args.tail)
    else:
        y = shiftcert.flows.odometerStep(x, direction = args.direction)

    if not y:
        print(repr(y))
        return EXIT_INCONCLUSIVE, 'overflow'

    print(''.join([str(c) for c in y]))

    return EXIT_OK, 'computed'


##################################
### Parser                     ###
##################################

def _addGroups(subparsers, name, description):
    '''
    Add a subcommand with positional/required/optional argument groups.
    '''

    parser = subparsers.add_parser(name, description = description, help = description)

    parser._action_groups.pop()
    positional = parser.add_argument_group('positional arguments')
    required = parser.add_argument_group('required arguments')
    optional = parser.add_argument_group('optional arguments')

    return parser, positional, required, optional


def _addCommon(optional, outputs = True):

    if outputs:
        optional.add_argument('-o', '--output_dir', type = str, metavar = 'DIR', default = None, help = "Directory for output files. Defaults to $SHIFTCERT_CACHE, or the present working directory.")
    optional.add_argument('-v', '--verbose', action = 'store_true', default = False, help = "Make script verbose.")


def _buildParser():

    parser = argparse.ArgumentParser(prog = 'shiftcert', description = "Compute and verify finite certificates for amenability, paradoxical subshifts and compressible flows of finitely generated groups.")
    subparsers = parser.add_subparsers(dest = 'command', metavar = 'COMMAND')
    subparsers.required = True

    group_help = "Group descriptor: Z, Z^d, Fk, L, Cm, (A)x(B) or (A)*(B)."

    p, positional, required, optional = _addGroups(subparsers, 'ball', 'Enumerate a ball of the Cayley graph and print its growth.')
    required.add_argument('-g', '--group', type = str, required = True, help = group_help)
    required.add_argument('-r', '--radius', type = int, required = True, help = "Ball radius.")
    optional.add_argument('-S', '--generators', type = str, nargs = '*', default = None, help = "Symmetric generating set as element strings. Defaults to the standard generators.")
    _addCommon(optional, outputs = False)
    p.set_defaults(func = _ball)

    p, positional, required, optional = _addGroups(subparsers, 'probe', 'Alternate Følner and expansion searches until one succeeds.')
    required.add_argument('-g', '--group', type = str, required = True, help = group_help)
    optional.add_argument('-b', '--budget', type = int, default = None, help = "Number of rounds. Defaults to the configured budget.")
    optional.add_argument('-e', '--epsilon', type = str, default = None, help = "Følner target ratio, e.g. 0.2 or 1/5. Defaults to the configured value.")
    optional.add_argument('--offset', type = int, default = None, help = "Expansion radius offset. Defaults to the configured value.")
    optional.add_argument('-p', '--n_processes', type = int, metavar = 'N', default = 1, help = "Number of rounds to search in parallel. Defaults to 1.")
    _addCommon(optional)
    p.set_defaults(func = _probe)

    p, positional, required, optional = _addGroups(subparsers, 'folner', 'Search for a Følner certificate.')
    required.add_argument('-g', '--group', type = str, required = True, help = group_help)
    required.add_argument('-e', '--epsilon', type = str, required = True, help = "Target ratio, e.g. 0.05 or 1/20.")
    optional.add_argument('-r', '--r_max', type = int, default = 32, help = "Largest family index to try. Defaults to 32.")
    _addCommon(optional)
    p.set_defaults(func = _folner)

    p, positional, required, optional = _addGroups(subparsers, 'expand', 'Search for an expansion (2-to-1 map) certificate on a ball.')
    required.add_argument('-g', '--group', type = str, required = True, help = group_help)
    required.add_argument('-R', '--radius', type = int, required = True, help = "Region radius.")
    optional.add_argument('--xt', action = 'store_true', default = False, help = "Also write the X_T patch derived from the certificate.")
    _addCommon(optional)
    p.set_defaults(func = _expand)

    p, positional, required, optional = _addGroups(subparsers, 'xst', 'Build and verify the four-piece X_{S,T} certificate of a free group.')
    optional.add_argument('-g', '--group', type = str, default = 'F2', help = "Free group descriptor. Defaults to F2.")
    optional.add_argument('-R', '--radius', type = int, default = 6, help = "Patch radius. Defaults to 6.")
    _addCommon(optional)
    p.set_defaults(func = _xst)

    p, positional, required, optional = _addGroups(subparsers, 'build-compressible', 'Build a compressible-subshift witness and run its three checks.')
    required.add_argument('-g', '--group', type = str, required = True, help = group_help)
    optional.add_argument('-m', '--mode', type = str, choices = ['toy', 'strict'], default = 'toy', help = "Parameter mode. Defaults to toy.")
    optional.add_argument('--rho', type = int, default = 1, help = "Radius of S. Defaults to 1.")
    optional.add_argument('-n', '--n', type = int, default = None, help = "Power for T = S^n. Defaults to the configured toy value, or the least admissible value in strict mode.")
    optional.add_argument('-R', '--radius', type = int, default = None, help = "Witness radius. Defaults to the configured toy radius.")
    _addCommon(optional)
    p.set_defaults(func = _buildCompressible)

    p, positional, required, optional = _addGroups(subparsers, 'subshift-check', 'Check every window of a patch file against a spec.')
    required.add_argument('-g', '--group', type = str, required = True, help = group_help)
    required.add_argument('-s', '--spec', type = str, required = True, help = "golden-mean, hard-core, full:K or xt:t1,t2,...")
    positional.add_argument('patch', metavar = 'FILE', type = str, help = "Patch file.")
    _addCommon(optional, outputs = False)
    p.set_defaults(func = _subshiftCheck)

    p, positional, required, optional = _addGroups(subparsers, 'subshift-extend', 'Find the shortlex-first admissible patch on a ball, or prove there is none.')
    required.add_argument('-g', '--group', type = str, required = True, help = group_help)
    required.add_argument('-s', '--spec', type = str, required = True, help = "golden-mean, hard-core, full:K or xt:t1,t2,...")
    required.add_argument('-r', '--radius', type = int, required = True, help = "Ball radius.")
    optional.add_argument('-p', '--n_processes', type = int, metavar = 'N', default = 1, help = "Number of branches to search in parallel. Defaults to 1.")
    _addCommon(optional)
    p.set_defaults(func = _subshiftExtend)

    p, positional, required, optional = _addGroups(subparsers, 'gen-check', 'Finite-resolution clopen generator check of a cell labelling.')
    required.add_argument('-g', '--group', type = str, required = True, help = group_help)
    required.add_argument('-s', '--spec', type = str, required = True, help = "golden-mean, hard-core, full:K or xt:t1,t2,...")
    optional.add_argument('-d', '--depth', type = int, default = 0, help = "Cylinder radius of the labelling. Defaults to 0.")
    optional.add_argument('-w', '--width', type = int, default = 1, help = "Code radius. Defaults to 1.")
    optional.add_argument('--symbol', type = str, default = None, help = "Label by the indicator of this symbol at the identity. Defaults to the symbol itself.")
    _addCommon(optional, outputs = False)
    p.set_defaults(func = _genCheck)

    p, positional, required, optional = _addGroups(subparsers, 'verify', 'Re-verify a certificate file.')
    positional.add_argument('file', metavar = 'FILE', type = str, help = "Certificate file.")
    _addCommon(optional, outputs = False)
    p.set_defaults(func = _verify)

    p, positional, required, optional = _addGroups(subparsers, 'f2-orbit', 'Search the F2 prefix-rewrite orbit of a binary string.')
    positional.add_argument('x', type = str, help = "Start string.")
    positional.add_argument('y', type = str, help = "Target string.")
    optional.add_argument('-d', '--depth', type = int, default = 8, help = "Maximum word length. Defaults to 8.")
    _addCommon(optional, outputs = False)
    p.set_defaults(func = _f2Orbit)

    p, positional, required, optional = _addGroups(subparsers, 'odometer', 'Apply an odometer step or the odometer compression to a base-4 truncation.')
    positional.add_argument('x', type = str, help = "Little-endian digits 0..3, e.g. 3001.")
    optional.add_argument('--direction', type = int, choices = [1, -1], default = 1, help = "Add +1 or -1. Defaults to +1.")
    optional.add_argument('-c', '--compress', action = 'store_true', default = False, help = "Apply the compression instead of a step.")
    optional.add_argument('--tail', type = int, default = None, help = "Declared start of the {1,2} tail. Defaults to the end of the truncation.")
    _addCommon(optional, outputs = False)
    p.set_defaults(func = _odometer)

    return parser


def run(argv):
    '''
    Run one subcommand.

    Args:
        argv: List of command-line arguments, without the program name.

    Returns:
        The exit code (0: certificate produced or verified, 2: inconclusive, 1: invalid input or failed verification) and a pandas Series report.
    '''

    parser = _buildParser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        code = EXIT_OK if e.code == 0 else EXIT_INVALID
        return code, pd.Series({'subcommand': None, 'outcome': 'usage'})

    report = {'subcommand': args.command, 'group': getattr(args, 'group', None), 'parameters': '', 'outcome': None, 'files': []}

    start = time.time()

    try:
        code, outcome = args.func(args, report)
    except ResourceLimitError as e:
        print('WARNING: %s'%str(e))
        code, outcome = EXIT_INCONCLUSIVE, 'cap-exceeded'
    except (ValueError, AssertionError) as e:
        print('ERROR: %s'%str(e))
        code, outcome = EXIT_INVALID, 'invalid'

    report['outcome'] = outcome
    report['wall_time'] = round(time.time() - start, 3)

    return code, pd.Series(report)


if __name__ == '__main__':

    code, report = run(sys.argv[1:])

    print(report.to_string())

    sys.exit(code)
