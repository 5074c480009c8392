
import functools
import itertools
import numpy as np
import pandas as pd
from fractions import Fraction

import shiftcert.core
import shiftcert.groups
import shiftcert.matching
import shiftcert.multiprocess
from shiftcert.core import NotFound, VerificationError

### Certificates for both sides of the amenability dichotomy. All products are taken on the right (F·S).


def _exact(epsilon):
    '''
    Exact rational from an int, float, string or Fraction. Floats are read through their decimal representation.
    '''

    if isinstance(epsilon, Fraction):
        return epsilon

    return Fraction(str(epsilon))


def _defaultS(group, S):

    if S is None:
        return group.generatingSet()

    return list(S)


#################################
### Følner certificates       ###
#################################

def folnerRatio(group, F, S):
    '''
    The exact ratio |F·S △ F| / |F|.
    '''

    F = set(F)
    assert len(F) > 0, "Følner sets must be nonempty."

    FS = shiftcert.groups.setProduct(group, F, S)

    return Fraction(len(FS.symmetric_difference(F)), len(F))


class FolnerCertificate(object):
    '''
    A finite set F with |F·S △ F| / |F| < ε.
    '''

    kind = 'folner'

    def __init__(self, group, S, F, ratio, epsilon, index):
        '''
        Args:
            group: The Group.
            S: Generating set (list).
            F: The Følner set (list).
            ratio: Stored ratio (Fraction).
            epsilon: Target (Fraction).
            index: Member of the searched family (ball radius, or rectangle half-width for the lamplighter).
        '''

        self.group = group
        self.S = list(S)
        self.F = list(F)
        self.ratio = ratio
        self.epsilon = epsilon
        self.index = index

    def __bool__(self):
        return True

    def __repr__(self):
        return 'FolnerCertificate(%s, index %s, |F|=%s, ratio %s)'%(self.group.descriptor, str(self.index), str(len(self.F)), str(self.ratio))

    def verify(self):
        '''
        Recompute the ratio by brute-force set arithmetic. Raises VerificationError on mismatch, or when S is not symmetric with the identity.
        '''

        S = set(self.S)
        if self.group.identity not in S:
            raise VerificationError('S does not contain the identity.', point = self.group.identity)
        for s in self.S:
            if self.group.invert(s) not in S:
                raise VerificationError('S is not closed under inverses: %s'%self.group.format(s), point = s)

        F = set(self.F)
        FS = set()
        for f in self.F:
            for s in self.S:
                FS.add(self.group.multiply(f, s))

        ratio = Fraction(len(FS.symmetric_difference(F)), len(F))

        if ratio != self.ratio:
            raise VerificationError('Stored Følner ratio %s does not match recomputed ratio %s.'%(str(self.ratio), str(ratio)))
        if not ratio < self.epsilon:
            raise VerificationError('Følner ratio %s is not below %s.'%(str(ratio), str(self.epsilon)))

        return True


def _folnerAt(group, S, r):

    F = group.folnerSet(r)
    ratio = folnerRatio(group, F, S)

    return F, ratio


def folnerSearch(group, S, epsilon, r_max, verbose = False):
    '''
    Search the group's Følner family (balls, or rectangles for the lamplighter) in increasing order for a set with ratio below epsilon.

    Args:
        group: A Group.
        S: Symmetric generating set containing the identity. Set None for the standard ball of radius 1.
        epsilon: Target ratio (> 0).
        r_max: Largest family index to try.
        verbose: Set True to print each ratio.

    Returns:
        A FolnerCertificate, or NotFound (inconclusive: not a proof of non-amenability).
    '''

    S = _defaultS(group, S)
    epsilon = _exact(epsilon)

    assert epsilon > 0, "epsilon must be positive."
    assert group.identity in S, "S must contain the identity."

    for r in range(0, r_max + 1):

        F, ratio = _folnerAt(group, S, r)

        if verbose: print('Index %s: |F| = %s, ratio = %s'%(str(r), str(len(F)), str(ratio)))

        if ratio < epsilon:
            return FolnerCertificate(group, S, F, ratio, epsilon, r)

    return NotFound('no Følner set with ratio below %s up to index %s'%(str(epsilon), str(r_max)), radius = r_max)


###################################
### Expansion certificates      ###
###################################

class ExpansionCertificate(object):
    '''
    A 2-to-1 map p from D ⊆ ball(R+1) onto ball(R) with g⁻¹·p(g) ∈ S.
    '''

    kind = 'expansion'

    def __init__(self, group, S, R, assignment):
        '''
        Args:
            group: The Group.
            S: Generating set (list).
            R: Region radius.
            assignment: Dictionary g -> p(g).
        '''

        self.group = group
        self.S = list(S)
        self.R = R
        self.assignment = assignment

    def __bool__(self):
        return True

    def __repr__(self):
        return 'ExpansionCertificate(%s, R=%s, |D|=%s)'%(self.group.descriptor, str(self.R), str(len(self.assignment)))

    def domain(self):
        return self.group.sort(self.assignment.keys())

    def verify(self):
        '''
        Recount preimages and steps. Raises VerificationError naming the failing point.
        '''

        group = self.group
        S = set(self.S)
        outer = shiftcert.groups.ball(group, self.S, self.R + 1)
        inner = shiftcert.groups.ball(group, self.S, self.R)

        for g, h in self.assignment.items():
            if g not in outer:
                raise VerificationError('Domain element %s lies outside ball(%s).'%(group.format(g), str(self.R + 1)), point = g)
            if group.multiply(group.invert(g), h) not in S:
                raise VerificationError('Step from %s to %s is not in S.'%(group.format(g), group.format(h)), point = g)
            if h not in inner:
                raise VerificationError('Image of %s lies outside ball(%s).'%(group.format(g), str(self.R)), point = g)

        counts = np.bincount(np.array([inner.index[h] for h in self.assignment.values()], dtype = np.int64), minlength = len(inner))
        bad = np.nonzero(counts != 2)[0]
        if bad.shape[0] > 0:
            g = inner.elements[bad[0]]
            raise VerificationError('%s has %s preimages, expected 2.'%(group.format(g), str(counts[bad[0]])), point = g)

        return True


def expansionGraph(group, S, R):
    '''
    Bipartite graph with left ball(R+1), right ball(R) and edges g–h iff h ∈ g·S.
    '''

    left = shiftcert.groups.ball(group, S, R + 1)
    right = shiftcert.groups.ball(group, S, R)

    adjacency = {}
    for g in left.elements:
        adjacency[g] = [h for h in [group.multiply(g, s) for s in S] if h in right]

    return shiftcert.matching.BipartiteGraph(left.elements, right.elements, adjacency)


def expansionCertificate(group, S, R, verbose = False):
    '''
    Look for a 2-to-1 surjection from part of ball(R+1) onto ball(R) moving each point by an element of S. The domain is required to contain ball(R).

    Args:
        group: A Group.
        S: Symmetric generating set containing the identity. Set None for the standard ball of radius 1.
        R: Region radius.
        verbose: Set True to print progress.

    Returns:
        An ExpansionCertificate, or a HallViolator (inconclusive: not a proof of amenability).
    '''

    S = _defaultS(group, S)
    assert group.identity in S, "S must contain the identity."
    assert R >= 0, "Region radius must be non-negative."

    g = expansionGraph(group, S, R)

    if verbose: print('Expansion graph on %s: %s left, %s right, %s edges'%(group.descriptor, str(len(g.left)), str(len(g.right)), str(len(g.edges()))))

    result = shiftcert.matching.kToOneSurjection(g, 2, required = g.right, verbose = verbose)

    if not result:
        return result

    return ExpansionCertificate(group, S, R, dict(result.assignment))


def subsetExpansionScan(group, S, region, max_size):
    '''
    Check |F·S| ≥ 2|F| for every nonempty F ⊆ region with |F| ≤ max_size.

    Returns:
        The first failing F (as a list), or None.
    '''

    region = list(region)
    for size in range(1, max_size + 1):
        for F in itertools.combinations(region, size):
            if len(shiftcert.groups.setProduct(group, F, S)) < 2 * size:
                return list(F)

    return None


###########################################
### Paradoxical decomposition patches   ###
###########################################

class ParadoxCertificate(object):
    '''
    A finite patch of X_T (kind 'XT': symbols in T, two preimages under h ↦ h·x_h) or of X_{S,T} (kind 'XST': symbols (side, element), both sides partition) verified on an interior ball.
    '''

    def __init__(self, group, kind, S, T, cells, R, R0, pieces = None):
        '''
        Args:
            group: The Group.
            kind: 'XT' or 'XST'.
            S: The S set (list; empty for XT).
            T: The T set (list).
            cells: Dictionary element -> symbol. XT symbols are group elements; XST symbols are ('S', s) or ('T', t).
            R: Radius of the patch.
            R0: Verified interior radius.
            pieces: Optional piece descriptions for XST, as (label, predicate text) pairs.
        '''

        assert kind in ['XT', 'XST'], "Paradox certificate kind must be 'XT' or 'XST'."

        self.group = group
        self.kind = kind
        self.S = list(S)
        self.T = list(T)
        self.cells = cells
        self.R = R
        self.R0 = R0
        self.pieces = pieces

    def __bool__(self):
        return True

    def __repr__(self):
        return 'ParadoxCertificate(%s, %s, R=%s, R0=%s)'%(self.kind, self.group.descriptor, str(self.R), str(self.R0))

    def letters(self):
        '''
        Number of distinct translating elements (|T| for XT, |S ∪ T| for XST).
        '''

        if self.kind == 'XT':
            return len(set(self.T))

        return len(set(self.S) | set(self.T))

    def pieceCount(self):
        '''
        Number of pieces (|S| + |T| for XST).
        '''

        return len(self.S) + len(self.T)

    def _counts(self, side):
        '''
        Preimage counts on the interior ball for one side ('S', 'T' or None for XT).
        '''

        group = self.group
        interior = shiftcert.groups.ball(group, None, self.R0)

        targets = []
        for h, x in self.cells.items():
            if self.kind == 'XT':
                g = group.multiply(h, x)
            else:
                if x[0] != side:
                    continue
                g = group.multiply(h, x[1])
            if g in interior:
                targets.append(interior.index[g])

        return interior, np.bincount(np.array(targets, dtype = np.int64), minlength = len(interior))

    def violations(self):
        '''
        Interior points where the preimage count is wrong, as a list of (point, side, count).
        '''

        out = []
        if self.kind == 'XT':
            interior, counts = self._counts(None)
            for i in np.nonzero(counts != 2)[0]:
                out.append((interior.elements[i], 'T', int(counts[i])))
        else:
            for side in ['S', 'T']:
                interior, counts = self._counts(side)
                for i in np.nonzero(counts != 1)[0]:
                    out.append((interior.elements[i], side, int(counts[i])))

        return out

    def verify(self):
        '''
        Recount preimages on the interior ball. Raises VerificationError at the first failing point.
        '''

        allowed = set(self.T) if self.kind == 'XT' else set([('S', s) for s in self.S] + [('T', t) for t in self.T])
        for h, x in self.cells.items():
            if x not in allowed:
                raise VerificationError('Cell %s holds a symbol outside the alphabet.'%self.group.format(h), point = h)

        bad = self.violations()
        if len(bad) > 0:
            g, side, count = bad[0]
            expected = 2 if self.kind == 'XT' else 1
            raise VerificationError('Partition condition fails at %s (%s side: %s preimages, expected %s).'%(self.group.format(g), side, str(count), str(expected)), point = g)

        return True

    def patch(self):
        '''
        The certificate's cells as a shiftcert.subshift.Patch.
        '''

        import shiftcert.subshift

        return shiftcert.subshift.Patch(self.group, self.cells)


def xtPatchFromExpansion(cert, verbose = False):
    '''
    Turn an expansion certificate into an X_T patch with T = S and x_g = g⁻¹·p(g), verified on ball(R − max|s|).

    Args:
        cert: An ExpansionCertificate. It is re-verified first.

    Returns:
        A ParadoxCertificate of kind 'XT'.
    '''

    cert.verify()

    group = cert.group
    cells = dict((g, group.multiply(group.invert(g), h)) for g, h in cert.assignment.items())

    reach = max([group.wordLength(s) for s in cert.S])
    R0 = cert.R - reach
    assert R0 >= 0, "Region radius %s is smaller than the reach of S (%s)."%(str(cert.R), str(reach))

    out = ParadoxCertificate(group, 'XT', [], cert.S, cells, cert.R, R0)
    out.verify()

    if verbose: print('X_T patch on %s cells verified on interior radius %s'%(str(len(cells)), str(R0)))

    return out


def pieceMembership(group, text):
    '''
    Membership predicate from a piece description: 'ends:x', 'starts:x', 'power:x' (x^n, n ≥ 0), 'identity' or 'any'. Callables are returned unchanged.
    '''

    if callable(text):
        return text

    text = text.strip()

    if text == 'any':
        return lambda g: True
    if text == 'identity':
        return lambda g: g == group.identity

    kind, sep, symbol = text.partition(':')
    if sep == '' or kind not in ['ends', 'starts', 'power']:
        raise ValueError("Unknown piece description '%s'."%text)

    x = group.parse(symbol)

    if kind == 'power':
        def _power(g):
            h = group.identity
            for n in range(group.wordLength(g) + 1):
                if h == g:
                    return True
                h = group.multiply(h, x)
            return False
        return _power

    assert isinstance(group, shiftcert.groups.FreeGroup) and len(x) == 1, "'%s' pieces need a free group and a single letter."%kind

    if kind == 'ends':
        return lambda g: len(g) > 0 and g[-1] == x[0]

    return lambda g: len(g) > 0 and g[0] == x[0]


def classicalPieces(group, absorb_identity = True):
    '''
    Four-piece paradoxical decomposition of F2 with S = {e, a}, T = {e, b}.

    T side: x = e on words ending in b, x = b on words ending in b⁻¹. S side: x = e on words ending in a and on the powers a⁻ⁿ (n ≥ 0), x = a on the other words ending in a⁻¹. Set absorb_identity = False for the first-letter variant without the a⁻ⁿ shift, which fails at e.

    Returns:
        S, T and the ordered (label, description) piece list.
    '''

    assert isinstance(group, shiftcert.groups.FreeGroup) and group.k >= 2, "The classical decomposition needs a free group of rank ≥ 2."

    e, a, b = group.identity, group.parse('a'), group.parse('b')

    pieces = [(('T', e), 'ends:b'), (('T', b), 'ends:b⁻¹')]
    if absorb_identity:
        pieces += [(('S', e), 'power:a⁻¹'), (('S', e), 'ends:a'), (('S', a), 'ends:a⁻¹')]
    else:
        pieces += [(('S', e), 'ends:a'), (('S', a), 'ends:a⁻¹'), (('S', e), 'identity')]

    return [e, a], [e, b], pieces


def xstCertificate(group, S, T, pieces, R, verbose = False):
    '''
    Build an X_{S,T} patch on ball(R) from piece descriptions and verify both partition conditions on ball(R − max|s|).

    Args:
        group: A Group.
        S: List of S elements.
        T: List of T elements.
        pieces: Ordered list of (label, description) pairs with label ('S', s) or ('T', t); the first matching description labels each cell.
        R: Patch radius.
        verbose: Set True to print progress.

    Returns:
        A ParadoxCertificate of kind 'XST'. Raises VerificationError naming the first failing interior point.
    '''

    S, T = list(S), list(T)

    for (side, x), text in pieces:
        assert side in ['S', 'T'], "Piece labels must be ('S', s) or ('T', t)."
        assert x in (S if side == 'S' else T), "Piece label %s is not in %s."%(group.format(x), side)

    tests = [(label, pieceMembership(group, text)) for label, text in pieces]

    B = shiftcert.groups.ball(group, None, R)
    cells = {}
    for g in B.elements:
        for label, test in tests:
            if test(g):
                cells[g] = label
                break

    if len(cells) < len(B) and verbose:
        print('WARNING: %s cells of ball(%s) match no piece.'%(str(len(B) - len(cells)), str(R)))

    reach = max([group.wordLength(x) for x in S + T])
    R0 = R - reach
    assert R0 >= 0, "Radius %s is smaller than the reach of S ∪ T (%s)."%(str(R), str(reach))

    descriptions = [(label, text if not callable(text) else 'custom') for label, text in pieces]
    out = ParadoxCertificate(group, 'XST', S, T, cells, R, R0, pieces = descriptions)
    out.verify()

    if verbose: print('X_{S,T} patch verified on interior radius %s'%str(R0))

    return out


def tarskiReport(group, certs):
    '''
    Upper bounds on the Tarski numbers from verified paradox certificates.

    k ≤ min |S| + |T| over XST certificates; l ≤ min of |T| over XT certificates and |S ∪ T| over XST certificates. When both bounds are present, l ≤ k − 1 is applied.

    Args:
        group: A Group.
        certs: List of ParadoxCertificate objects.

    Returns:
        Dictionary with keys 'k' and 'l' (None where there is no bound) and 'table', a pandas DataFrame with one row per certificate.
    '''

    rows = []
    for cert in certs:
        assert cert.group == group, "Certificate for %s given for %s."%(cert.group.descriptor, group.descriptor)
        cert.verify()
        rows.append({'kind': cert.kind, 'pieces': cert.pieceCount() if cert.kind == 'XST' else np.nan, 'letters': cert.letters(), 'radius': cert.R, 'interior': cert.R0})

    table = pd.DataFrame(rows, columns = ['kind', 'pieces', 'letters', 'radius', 'interior'])

    k_bound, l_bound = None, None
    if len(table) > 0:
        xst = table[table['kind'] == 'XST']
        if len(xst) > 0:
            k_bound = int(xst['pieces'].min())
        l_bound = int(table['letters'].min())

    if k_bound is not None and l_bound is not None:
        l_bound = min(l_bound, k_bound - 1)
        assert l_bound <= k_bound - 1

    return {'group': group.descriptor, 'k': k_bound, 'l': l_bound, 'table': table}


###################################
### Interleaved probe           ###
###################################

def _probeJob(group, S, epsilon, offset, job):
    '''
    One half of a probe round: ('folner', r) or ('expansion', r).
    '''

    kind, r = job

    if kind == 'folner':
        F, ratio = _folnerAt(group, S, r)
        if ratio < epsilon:
            return FolnerCertificate(group, S, F, ratio, epsilon, r)
        return None

    result = expansionCertificate(group, S, r + offset)

    return result if result else None


def amenabilityProbe(group, budget = None, epsilon = None, S = None, offset = None, n_processes = 1, verbose = False):
    '''
    Alternate Følner and expansion searches with increasing radius. Round r tries Følner family member r, then an expansion certificate on ball(r + offset).

    Args:
        group: A Group.
        budget: Number of rounds. Defaults to the configured probe_budget.
        epsilon: Følner target. Defaults to the configured folner_epsilon.
        S: Generating set. Defaults to the standard ball of radius 1.
        offset: Expansion radius offset. Defaults to the configured probe_offset.
        n_processes: Number of rounds' searches to run concurrently. Results are chosen by round order, so output does not depend on this.
        verbose: Set True to print progress.

    Returns:
        A FolnerCertificate or ExpansionCertificate, or NotFound when the budget is exhausted.
    '''

    settings = shiftcert.core.getSettings()

    budget = shiftcert.core.resolveCap('probe_budget', budget)
    epsilon = _exact(epsilon if epsilon is not None else settings.folner_epsilon)
    offset = settings.probe_offset if offset is None else offset
    S = _defaultS(group, S)

    assert n_processes >= 1, "n_processes must be at least 1."

    job = functools.partial(_probeJob, group, S, epsilon, offset)

    rounds = list(range(1, budget + 1))
    for start in range(0, len(rounds), n_processes):

        batch = [(kind, r) for r in rounds[start:start + n_processes] for kind in ['folner', 'expansion']]

        if verbose: print('Probe rounds %s to %s on %s'%(str(batch[0][1]), str(batch[-1][1]), group.descriptor))

        results = shiftcert.multiprocess.runWorkers(job, n_processes, batch)

        for (kind, r), result in zip(batch, results):
            if result is not None:
                if verbose: print('Round %s: %s'%(str(r), repr(result)))
                result.verify()
                return result

    return NotFound('budget of %s rounds exhausted'%str(budget), radius = budget)


def verifyCertificate(cert):
    '''
    Re-verify any certificate from its raw data.
    '''

    return cert.verify()
