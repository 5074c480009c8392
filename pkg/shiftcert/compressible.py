import math
import numpy as np
import pandas as pd

import shiftcert.amenability
import shiftcert.core
import shiftcert.groups
import shiftcert.matching
import shiftcert.subshift
from shiftcert.core import VerificationError

### Finite witnesses for the compressible subshift of (T ⊔ {*})^Γ, T = S^n: support scaffold, 2-to-1 support map and binary code.

EMPTY = '*'


##################################
### Parameter arithmetic       ###
##################################

def parameterWindow(s):
    '''
    The integers n with 4 + 3·log₂(s) ≤ n ≤ (s − 6) / (3·log₂(s)), evaluated in exact integer arithmetic.

    The lower bound is n ≥ 4 + ⌈log₂(s³)⌉; the upper bound is the largest n with s^(3n) ≤ 2^(s − 6).

    Args:
        s: Size of the generating set, ≥ 2.

    Returns:
        A range, empty when the bounds cross.
    '''

    assert s >= 2, "Generating set size must be at least 2."

    lower = 4 + (s ** 3 - 1).bit_length()

    if s <= 6:
        return range(lower, lower)

    # Float estimate, then corrected exactly
    ceiling = 2 ** (s - 6)
    upper = int((s - 6) / (3 * math.log2(s)))
    while s ** (3 * (upper + 1)) <= ceiling:
        upper += 1
    while upper > 0 and s ** (3 * upper) > ceiling:
        upper -= 1

    return range(lower, max(lower, upper + 1))


class WordAlphabet(object):
    '''
    The symbols T ⊔ {*}, T the ball of radius tau, tested by word length instead of listed.
    '''

    symbolic = True

    def __init__(self, group, radius, extra = (EMPTY,)):
        self.group = group
        self.radius = radius
        self.extra = tuple(extra)

    def __contains__(self, x):

        if x in self.extra:
            return True
        if isinstance(x, str):
            return False
        try:
            return self.group.wordLength(x) <= self.radius
        except (TypeError, ValueError, AttributeError):
            return False

    def __len__(self):

        if isinstance(self.group, shiftcert.groups.FreeGroup):
            return shiftcert.groups.freeBallSize(self.group.k, self.radius) + len(self.extra)

        return len(shiftcert.groups.ball(self.group, None, self.radius)) + len(self.extra)

    def __iter__(self):

        for g in shiftcert.groups.ball(self.group, None, self.radius).elements:
            yield g
        for x in self.extra:
            yield x

    def description(self):
        return 'ball(%s)+%s'%(str(self.radius), ','.join([str(x) for x in self.extra]))


####################################
### Class for builder parameters ###
####################################

class BuilderParams(object):
    '''
    Parameters of a compressible-subshift construction: S = ball(ρ), T = S^n = ball(nρ), the generator r, the independent set S′ and the encoding φ.
    '''

    def __init__(self, group, S, n, r, S_prime, mode, phi = None):
        '''
        Args:
            group: The Group.
            S: The ball of radius ρ, as a list in ball order.
            n: Power defining T = S^n.
            r: Element of S with r² ≠ e.
            S_prime: Independent subset of S containing the identity and r.
            mode: 'strict' (n must lie in the parameter window) or 'toy'.
            phi: Optional PatternInjection.
        '''

        self.group = group
        self.mode = self.__getMode(mode)
        self.S = self.__getS(S)
        self.rho = max([group.wordLength(s) for s in self.S])
        self.n = self.__getN(n)
        self.r = self.__getR(r)
        self.S_prime = self.__getSPrime(S_prime)
        self.phi = phi

    def __getMode(self, mode):
        '''
        '''

        assert mode in ['strict', 'toy'], "mode must be 'strict' or 'toy'."

        return mode

    def __getS(self, S):
        '''
        '''

        S = list(S)
        group = self.group

        assert group.identity in S, "S must contain the identity."
        assert len(S) > 1, "S must contain a non-identity element."

        rho = max([group.wordLength(s) for s in S])
        assert set(S) == shiftcert.groups.ball(group, None, rho).elementSet(), "S must be the standard ball of radius %s."%str(rho)

        return S

    def __getN(self, n):
        '''
        '''

        assert n >= 1, "n must be at least 1."

        if self.mode == 'strict':
            window = parameterWindow(len(self.S))
            assert n in window, "n = %s lies outside the parameter window for |S| = %s."%(str(n), str(len(self.S)))

        return n

    def __getR(self, r):
        '''
        '''

        group = self.group

        assert r in self.S, "r must belong to S."
        assert not group.isIdentity(group.multiply(r, r)), "r must satisfy r² ≠ e."

        return r

    def __getSPrime(self, S_prime):
        '''
        '''

        S_prime = list(S_prime)

        assert self.group.identity in S_prime and self.r in S_prime, "S′ must contain the identity and r."
        assert set(S_prime) <= set(self.S), "S′ must be a subset of S."

        return S_prime

    @property
    def tau(self):
        '''
        Radius of T = S^n.
        '''
        return self.n * self.rho

    @property
    def sigma(self):
        '''
        Radius of S³.
        '''
        return 3 * self.rho

    def inT(self, t):
        return self.group.wordLength(t) <= self.tau

    def describe(self):
        '''
        Parameter record as a dictionary of strings and integers.
        '''

        group = self.group

        return {'group': group.descriptor,
                'mode': self.mode,
                'rho': self.rho,
                'n': self.n,
                'r': group.format(self.r),
                'S_size': len(self.S),
                'S_prime': [group.format(s) for s in self.S_prime],
                'tau': self.tau,
                'sigma': self.sigma}


def _firstNonInvolution(group, S):

    for s in S:
        if not group.isIdentity(s) and not group.isIdentity(group.multiply(s, s)):
            return s

    return None


def selectParameters(group, rho, mode = 'toy', n = None, verbose = False):
    '''
    Choose S = ball(ρ), n, r, S′ and φ.

    In strict mode an expansion certificate for the standard generators is required first (expansion for ball(1) implies expansion for ball(ρ) ⊇ ball(1)), and n is the least element of the parameter window.

    Args:
        group: A Group.
        rho: Radius of S, ≥ 1.
        mode: 'strict' or 'toy'.
        n: Power for T = S^n. Required range in strict mode; defaults to the configured toy_n in toy mode.
        verbose: Set True to print progress.

    Returns:
        A BuilderParams object.
    '''

    assert rho >= 1, "rho must be at least 1."

    settings = shiftcert.core.getSettings()

    S = shiftcert.groups.ball(group, None, rho).elements

    if mode == 'strict':

        R = settings.probe_offset + 1
        cert = shiftcert.amenability.expansionCertificate(group, None, R)
        if not cert:
            raise ValueError('No expansion certificate for %s at radius %s: %s'%(group.descriptor, str(R), repr(cert)))

        window = parameterWindow(len(S))
        if len(window) == 0:
            raise ValueError('The parameter window for |S| = %s is empty.'%str(len(S)))

        if n is None:
            n = window[0]

    elif n is None:
        n = settings.toy_n

    r = _firstNonInvolution(group, S)
    if r is None:
        raise ValueError('No element r of S with r² ≠ e in %s.'%group.descriptor)

    S_prime = independentSubset(group, S, r)

    params = BuilderParams(group, S, n, r, S_prime, mode)
    params.phi = patternInjection(params)

    if verbose: print('Parameters for %s: |S| = %s, n = %s, r = %s, |S′| = %s'%(group.descriptor, str(len(S)), str(n), group.format(r), str(len(S_prime))))

    return params


##################################
### Independent set S′         ###
##################################

def shiftGraphEdges(group, S, r):
    '''
    Edges {s, s′} of the graph on S with s′ = s·r^{±1} and {s, s′} ≠ {1, r}.
    '''

    S_set = set(S)
    r_inv = group.invert(r)
    excluded = frozenset([group.identity, r])

    edges = set()
    for s in S:
        for t in [group.multiply(s, r), group.multiply(s, r_inv)]:
            if t in S_set and t != s:
                edge = frozenset([s, t])
                if edge != excluded:
                    edges.add(edge)

    return edges


def independentSubset(group, S, r):
    '''
    Greedy independent set S′ ⊇ {1, r} in the r-shift graph on S, extended in shortlex order. The graph has degree ≤ 2, so |S′| ≥ |S|/3.
    '''

    assert group.identity in S, "S must contain the identity."
    assert r in S, "r must belong to S."
    assert not group.isIdentity(group.multiply(r, r)), "r must satisfy r² ≠ e."

    neighbours = dict((s, set()) for s in S)
    for edge in shiftGraphEdges(group, S, r):
        s, t = tuple(edge)
        neighbours[s].add(t)
        neighbours[t].add(s)

    chosen = [group.identity, r]
    blocked = neighbours[group.identity] | neighbours[r]

    for s in group.sort(S):
        if s in chosen or s in blocked:
            continue
        chosen.append(s)
        blocked |= neighbours[s]

    assert 3 * len(chosen) >= len(S)

    return group.sort(chosen)


##################################
### Encoding φ                 ###
##################################

class PatternInjection(object):
    '''
    The encoding φ of T-elements as bit vectors indexed by S′: coordinates 1 and r are 1, the others carry the base-2 digits (least significant first) of a shortlex rank.
    '''

    def __init__(self, group, S_prime, r, tau, symbols = None, capacity_check = None):
        '''
        Args:
            group: The Group.
            S_prime: Ordered list of coordinates.
            r: The forced coordinate besides the identity.
            tau: Radius of T.
            symbols: Optional list of T-elements to rank among. Defaults to ranking among all elements of length ≤ tau.
            capacity_check: Optional upper bound on the number of ranks, set for the strict-mode bound |S|^n.
        '''

        self.group = group
        self.coords = list(S_prime)
        self.position = dict((s, i) for i, s in enumerate(self.coords))
        self.r = r
        self.tau = tau
        self.free = [s for s in self.coords if s != group.identity and s != r]
        self.capacity = 2 ** len(self.free)

        if symbols is None:
            self.symbols = None
            self.ranks = None
            if capacity_check is not None:
                n_ranks = capacity_check
            elif isinstance(group, shiftcert.groups.FreeGroup):
                n_ranks = shiftcert.groups.freeBallSize(group.k, tau)
            else:
                n_ranks = len(shiftcert.groups.ball(group, None, tau))
        else:
            self.symbols = group.sort(set(symbols))
            self.ranks = dict((t, i) for i, t in enumerate(self.symbols))
            n_ranks = len(self.symbols)

        self.injective = n_ranks <= self.capacity

    def rank(self, t):

        if self.ranks is not None:
            if t not in self.ranks:
                raise ValueError('Symbol %s was not declared to the encoding.'%self.group.format(t))
            return self.ranks[t]

        return shiftcert.groups.shortlexRank(self.group, t)

    def code(self, t):
        '''
        φ(t) as a tuple of bits aligned with S′.
        '''

        assert self.group.wordLength(t) <= self.tau, "%s is not an element of T."%self.group.format(t)

        rank = self.rank(t) % self.capacity

        bits = dict((s, (rank >> j) & 1) for j, s in enumerate(self.free))
        bits[self.group.identity] = 1
        bits[self.r] = 1

        return tuple([bits[s] for s in self.coords])

    def bit(self, t, s):
        return self.code(t)[self.position[s]]

    def decode(self, code):
        '''
        Inverse of code, for injective encodings.
        '''

        assert self.injective, "The encoding is not injective."

        rank = sum([code[self.position[s]] << j for j, s in enumerate(self.free)])

        if self.symbols is not None:
            return self.symbols[rank]

        return shiftcert.groups.shortlexUnrank(self.group, rank)


def patternInjection(params, symbols = None):
    '''
    Build φ for a parameter record.

    Strict mode ranks each t among all words of length ≤ τ (closed form in free groups) and requires |S|^n ≤ 2^(|S′|−2). Toy mode ranks among the given symbols (or all of T when none are given); when there are more than 2^(|S′|−2) of them the rank is truncated and the encoding is flagged non-injective.

    Args:
        params: A BuilderParams object.
        symbols: T-elements used by a patch (toy mode).

    Returns:
        A PatternInjection.
    '''

    group = params.group

    if params.mode == 'strict':
        bound = len(params.S) ** params.n
        phi = PatternInjection(group, params.S_prime, params.r, params.tau, capacity_check = bound)
        if not phi.injective:
            raise ValueError('Encoding capacity exceeded: |S|^n = %s^%s needs more than %s free bits.'%(str(len(params.S)), str(params.n), str(len(phi.free))))
        return phi

    phi = PatternInjection(group, params.S_prime, params.r, params.tau, symbols = symbols)

    if symbols is not None and not phi.injective:
        print('WARNING: %s symbols exceed the %s codes of %s free bits; the encoding is not injective.'%(str(len(phi.symbols)), str(phi.capacity), str(len(phi.free))))

    return phi


##################################
### Support and witness        ###
##################################

def supportScaffold(group, params, R, cap = None, verbose = False):
    '''
    Greedy right S³-disjoint set A ⊆ ball(R): elements are taken in shortlex order unless they lie in a·S³ for an earlier a.

    Maximality is certified on ball(R − 3ρ): every element there lies in A·S³.

    Args:
        group: A Group.
        params: A BuilderParams object.
        R: Radius, ≥ 3ρ.
        cap: Ball cap. Defaults to the configured ball_cap.
        verbose: Set True to print progress.

    Returns:
        A list of elements in ball order.
    '''

    sigma = params.sigma
    assert R >= sigma, "Radius %s is below the S³ radius %s."%(str(R), str(sigma))

    B = shiftcert.groups.ball(group, None, R, cap = cap)
    S3 = shiftcert.groups.ball(group, None, sigma).elements

    A = []
    covered = set()
    for g in B.elements:
        if g in covered:
            continue
        A.append(g)
        for s in S3:
            covered.add(group.multiply(g, s))

    for g in shiftcert.groups.ball(group, None, R - sigma).elements:
        if g not in covered:
            raise VerificationError('%s is not covered by A·S³.'%group.format(g), point = g)

    if verbose: print('Support scaffold: %s points in ball(%s)'%(str(len(A)), str(R)))

    return A


class WitnessPatch(object):
    '''
    A patch over T ⊔ {*} on ball(R) with x_a = a⁻¹·p(a) for a 2-to-1 map p between scaffold points, valid on ball(R0).
    '''

    def __init__(self, params, patch, R, R0, assignment):
        '''
        Args:
            params: The BuilderParams.
            patch: The Patch, total on ball(R).
            R: Patch radius.
            R0: Interior radius on which every rule is verified.
            assignment: The KToOneAssignment giving p.
        '''

        self.params = params
        self.patch = patch
        self.R = R
        self.R0 = R0
        self.assignment = assignment

    def __bool__(self):
        return True

    def __repr__(self):
        return 'WitnessPatch(%s, radius %s, interior %s, %s support points)'%(self.params.group.descriptor, str(self.R), str(self.R0), str(len(self.support())))

    def support(self):
        return [g for g, x in self.patch.items() if x != EMPTY]

    def symbols(self):
        '''
        T-elements used by the patch.
        '''
        return set([x for x in self.patch.cells.values() if x != EMPTY])

    def verify(self):
        '''
        Rerun the three independent checks: the rule oracle on ball(R0), verifyCompression and codePatch. Raises VerificationError on failure.

        R0 is recomputed from R and the parameters, never taken as stored.
        '''

        group = self.params.group

        R0 = self.R - self.params.tau - self.params.sigma
        if self.R0 != R0:
            raise VerificationError('Stored interior radius %s does not match R - τ - σ = %s.'%(str(self.R0), str(R0)))
        if R0 < 0:
            raise VerificationError('Radius %s leaves no interior.'%str(self.R))

        for h in shiftcert.groups.ball(group, None, self.R).elements:
            if h not in self.patch.cells:
                raise VerificationError('Witness patch is not defined at %s.'%group.format(h), point = h)

        if self.params.phi is None or self.params.phi.symbols is None:
            self.params.phi = patternInjection(self.params, symbols = self.symbols())

        centers = shiftcert.groups.ball(group, None, self.R0).elements
        check = shiftcert.subshift.patchCheck(compressibleSpec(self.params), self.patch, centers = centers)
        if not check:
            raise VerificationError('Witness patch violates the rule at %s.'%group.format(check.gamma), point = check.gamma)

        verifyCompression(self, self.params)
        codePatch(self.params, self)

        return True


def witnessPatch(group, params, R, cap = None, verbose = False):
    '''
    Build a finite witness on ball(R).

    Left vertices are A ∩ ball(R), right vertices A ∩ ball(R − τ), edges a–a′ for a′ ∈ a·T. A 2-to-1 surjection p whose domain contains every right vertex gives x_a = a⁻¹·p(a) on the domain, * elsewhere.

    Args:
        group: A Group.
        params: A BuilderParams object.
        R: Patch radius, ≥ τ + 3ρ.
        cap: Ball cap. Defaults to the configured ball_cap.
        verbose: Set True to print progress.

    Returns:
        A WitnessPatch, or a HallViolator (inconclusive: enlarge R).
    '''

    tau, sigma = params.tau, params.sigma

    A = supportScaffold(group, params, R, cap = cap, verbose = verbose)
    if len(A) < 2:
        raise ValueError('Radius %s is too small for two support points.'%str(R))

    R0 = R - tau - sigma
    if R0 < 0:
        raise ValueError('Radius %s leaves no interior: at least %s is required.'%(str(R), str(tau + sigma)))

    right = [a for a in A if group.wordLength(a) <= R - tau]
    right_set = set(right)
    T = shiftcert.groups.ball(group, None, tau).elements

    adjacency = {}
    for a in A:
        adjacency[a] = [h for h in [group.multiply(a, t) for t in T] if h in right_set]

    g = shiftcert.matching.BipartiteGraph(A, right, adjacency)
    result = shiftcert.matching.kToOneSurjection(g, 2, required = right, verbose = verbose)

    if not result:
        return result

    cells = dict((h, EMPTY) for h in shiftcert.groups.ball(group, None, R).elements)
    for a, target in result.assignment.items():
        cells[a] = group.multiply(group.invert(a), target)

    out = WitnessPatch(params, shiftcert.subshift.Patch(group, cells), R, R0, result)

    if verbose: print(repr(out))

    return out


def compressibleSpec(params):
    '''
    The compressible subshift as an oracle rule on ball(max(τ, 3ρ)), centre at the identity: the support is S³-disjoint and maximal, a supported x_γ lies in T with γ·x_γ supported, and every supported cell has exactly two preimages h·x_h = γ.
    '''

    group = params.group
    tau, sigma = params.tau, params.sigma

    window = shiftcert.groups.ball(group, None, max(tau, sigma)).elements
    index = dict((w, i) for i, w in enumerate(window))
    near = [i for i, w in enumerate(window) if group.wordLength(w) <= sigma]

    def _oracle(pattern):

        hits = [i for i in near if pattern[i] != EMPTY]
        if len(hits) == 0:
            return False

        x = pattern[0]
        if x == EMPTY:
            return True

        if len(hits) > 1 or group.wordLength(x) > tau:
            return False
        if pattern[index[x]] == EMPTY:
            return False

        preimages = 0
        for w, y in zip(window, pattern):
            if y != EMPTY and group.isIdentity(group.multiply(w, y)):
                preimages += 1

        return preimages == 2

    return shiftcert.subshift.SubshiftSpec(group, WordAlphabet(group, tau), window, oracle = _oracle, name = 'compressible(rho=%s,n=%s)'%(str(params.rho), str(params.n)))


##################################
### Independent checks         ###
##################################

def verifyCompression(patch, params, R0 = None):
    '''
    Count preimages {h ∈ Supp : h·x_h = g} of every supported g in ball(R0) and require exactly 2.

    Args:
        patch: A WitnessPatch, or a Patch over T ⊔ {*} with R0 given.
        params: The BuilderParams.
        R0: Interior radius. Taken from the WitnessPatch when omitted.

    Returns:
        Dictionary with 'table' (pandas DataFrame of point, length, preimages), 'interior', 'support_points' and 'degenerate' (True when no interior point is supported).
    '''

    if isinstance(patch, WitnessPatch):
        R0 = patch.R0 if R0 is None else R0
        patch = patch.patch

    assert R0 is not None, "An interior radius is required."

    group = params.group

    interior = shiftcert.groups.ball(group, None, R0).elements
    for g in interior:
        assert g in patch.domain, "Interior point %s lies outside the patch."%group.format(g)

    points = [g for g in interior if patch.cells.get(g, EMPTY) != EMPTY]
    idx = dict((g, i) for i, g in enumerate(points))

    hits = []
    for h, x in patch.cells.items():
        if x != EMPTY:
            target = group.multiply(h, x)
            if target in idx:
                hits.append(idx[target])

    counts = np.bincount(np.array(hits, dtype = np.int64), minlength = len(points))

    table = pd.DataFrame({'point': [group.format(g) for g in points],
                          'length': [group.wordLength(g) for g in points],
                          'preimages': counts}, columns = ['point', 'length', 'preimages'])

    bad = np.nonzero(counts != 2)[0]
    if bad.shape[0] > 0:
        g = points[bad[0]]
        raise VerificationError('%s has %s preimages, expected 2.'%(group.format(g), str(counts[bad[0]])), point = g)

    return {'table': table, 'interior': R0, 'support_points': len(points), 'degenerate': len(points) == 0}


def codeLabeling(params):
    '''
    The labelling f on ball(ρ) patterns: f = φ(x_{s⁻¹})_s for the unique s ∈ S′ with x_{s⁻¹} supported, 0 when there is none.
    '''

    group = params.group
    inner = shiftcert.groups.ball(group, None, params.rho)
    slots = [(s, inner.index[group.invert(s)]) for s in params.S_prime]

    def _label(pattern):

        hits = [(s, pattern[i]) for s, i in slots if pattern[i] != EMPTY]

        if len(hits) > 1:
            raise VerificationError('Two supported cells %s near one point: the support is not S³-disjoint.'%', '.join([group.format(group.invert(s)) for s, x in hits]))
        if len(hits) == 0:
            return 0

        s, t = hits[0]

        return params.phi.bit(t, s)

    return _label


def codePatch(params, patch, R = None, verbose = False):
    '''
    Compute the binary code f of a patch, check γ ∈ Supp ⇔ f(γ⁻¹·x) = f((γr)⁻¹·x) = 1 wherever both values are defined, and run the generator check on translates of the patch.

    Codes with equal values on ball(ρ + 1) must give equal supports at the identity, and equal symbols when φ is injective.

    Args:
        params: The BuilderParams, with φ defined on every symbol in the patch.
        patch: A WitnessPatch, or a Patch over T ⊔ {*} on ball(R).
        R: Patch radius. Taken from the WitnessPatch when omitted.
        verbose: Set True to print progress.

    Returns:
        Dictionary with 'binary' (Patch of f values), 'table' (pandas DataFrame of point, supported, f, f_r), 'checked', 'injective', 'radius', 'separates' and 'separates_support' (GeneratorCheckResult objects).
    '''

    if isinstance(patch, WitnessPatch):
        R = patch.R if R is None else R
        patch = patch.patch

    assert R is not None, "A patch radius is required."
    assert params.phi is not None, "The encoding φ is not set."

    group = params.group
    rho = params.rho
    label = codeLabeling(params)

    inner = shiftcert.groups.ball(group, None, rho).elements
    values = {}
    for gamma in shiftcert.groups.ball(group, None, R - rho).elements:
        values[gamma] = label(patch.sequence([group.multiply(gamma, l) for l in inner]))

    binary = shiftcert.subshift.Patch(group, values)

    # γ·r must stay inside ball(R − ρ), where f is defined
    detect = R - rho - group.wordLength(params.r)
    if detect < 0:
        raise ValueError('Radius %s is too small to check support detection with r = %s.'%(str(R), group.format(params.r)))

    rows = []
    for gamma in shiftcert.groups.ball(group, None, detect).elements:
        supported = patch.cells[gamma] != EMPTY
        f, f_r = values[gamma], values[group.multiply(gamma, params.r)]
        if supported != (f == 1 and f_r == 1):
            raise VerificationError('Support detection fails at %s.'%group.format(gamma), point = gamma)
        rows.append({'point': group.format(gamma), 'supported': supported, 'f': f, 'f_r': f_r})

    table = pd.DataFrame(rows, columns = ['point', 'supported', 'f', 'f_r'])

    if verbose: print('Support detection holds at %s points'%str(len(rows)))

    # Translates of the patch to the identity, each covering ball(w + d)
    w = rho + 1
    reach = w + rho
    family = []
    local = shiftcert.groups.ball(group, None, reach).elements
    for gamma in shiftcert.groups.ball(group, None, R - reach).elements:
        region = [group.multiply(gamma, l) for l in local]
        family.append(shiftcert.subshift.translatePatch(patch.restrict(region), group.invert(gamma)))

    spec = compressibleSpec(params)
    separates = shiftcert.subshift.clopenGeneratorCheck(spec, label, rho, w, patches = family)
    separates_support = shiftcert.subshift.clopenGeneratorCheck(spec, label, rho, w, patches = family, observe = lambda p: p.cells.get(group.identity) != EMPTY)

    if not separates_support:
        raise VerificationError('Equal codes on ball(%s) with different support at the identity.'%str(w))
    if params.phi.injective and not separates:
        raise VerificationError('Equal codes on ball(%s) with different symbols at the identity.'%str(w))

    if verbose: print('Generator check on %s translates: %s'%(str(len(family)), repr(separates)))

    return {'binary': binary, 'table': table, 'checked': len(rows), 'injective': params.phi.injective, 'radius': w, 'separates': separates, 'separates_support': separates_support}


##################################
### Whole pipeline             ###
##################################

def runBuilder(group, rho = 1, mode = 'toy', n = None, R = None, verbose = False):
    '''
    Select parameters and, in toy mode, build a witness patch and run the three independent checks: the rule oracle on the interior, verifyCompression and codePatch.

    Args:
        group: A Group.
        rho: Radius of S.
        mode: 'strict' or 'toy'. Strict mode stops after the parameter arithmetic.
        n: Power for T = S^n.
        R: Witness radius. Defaults to the configured toy_radius.
        verbose: Set True to print progress.

    Returns:
        Dictionary with 'outcome' ('parameters', 'verified' or 'inconclusive'), 'params' and, as available, 'witness', 'violator', 'compression' and 'code'.
    '''

    params = selectParameters(group, rho, mode = mode, n = n, verbose = verbose)

    report = {'group': group.descriptor, 'params': params}

    if mode == 'strict':
        if verbose: print('Strict mode: parameter window %s, %s free bits'%(str(parameterWindow(len(params.S))), str(len(params.phi.free))))
        report['outcome'] = 'parameters'
        return report

    R = shiftcert.core.getSettings().toy_radius if R is None else R

    witness = witnessPatch(group, params, R, verbose = verbose)

    if not witness:
        if verbose: print('No witness on ball(%s): %s'%(str(R), repr(witness)))
        report['outcome'] = 'inconclusive'
        report['violator'] = witness
        return report

    params.phi = patternInjection(params, symbols = witness.symbols())

    centers = shiftcert.groups.ball(group, None, witness.R0).elements
    check = shiftcert.subshift.patchCheck(compressibleSpec(params), witness.patch, centers = centers)
    if not check:
        raise VerificationError('Witness patch violates the rule at %s.'%group.format(check.gamma), point = check.gamma)

    if verbose: print('Rule oracle holds at %s interior centres'%str(len(centers)))

    report['witness'] = witness
    report['compression'] = verifyCompression(witness, params)
    report['code'] = codePatch(params, witness, verbose = verbose)
    report['outcome'] = 'verified'

    return report
