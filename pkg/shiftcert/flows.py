import collections
import itertools
import re

import shiftcert.groups
import shiftcert.subshift
from shiftcert.core import NotFound, VerificationError

### Finite-window constructions on flows: coinduction, restricted wreath jumps, the prefix-rewrite F₂ action and the ℤ/4 odometer.


#############################
### Coinduction           ###
#############################

class CosetStructure(object):
    '''
    A subgroup Γ of an ambient group Δ with a transversal: every δ decomposes exactly as δ = representative·embed(γ).

    Supported pairs: the trivial subgroup of any Δ, mℤ ≤ ℤ, and Γ = Δ.
    '''

    def __init__(self, ambient, subgroup):
        '''
        Args:
            ambient: The Group Δ.
            subgroup: '1' (trivial), 'whole' (Γ = Δ), or 'mZ' for an integer m ≥ 1 when Δ = ℤ.
        '''

        self.ambient = ambient
        self.kind, self.m = self.__getKind(subgroup)

        if self.kind == 'trivial':
            self.inner_group = shiftcert.groups.CyclicGroup(1)
        elif self.kind == 'index':
            self.inner_group = shiftcert.groups.FreeAbelianGroup(1)
        else:
            self.inner_group = ambient

    def __getKind(self, subgroup):
        '''
        '''

        subgroup = str(subgroup).strip()

        if subgroup in ['1', 'e', 'trivial']:
            return 'trivial', None
        if subgroup in ['whole', 'all']:
            return 'whole', None

        match = re.match(r'^(\d+)Z$', subgroup)
        if match:
            if not (isinstance(self.ambient, shiftcert.groups.FreeAbelianGroup) and self.ambient.d == 1):
                raise ValueError('Finite-index subgroups %s are only supported in Z, not %s.'%(subgroup, self.ambient.descriptor))
            m = int(match.group(1))
            assert m >= 1, "Subgroup index must be at least 1."
            return 'index', m

        raise ValueError("Unsupported subgroup '%s' of %s. Use '1', 'whole' or 'mZ'."%(subgroup, self.ambient.descriptor))

    def __repr__(self):
        if self.kind == 'index':
            return 'CosetStructure(%sZ in Z)'%str(self.m)
        return 'CosetStructure(%s in %s)'%(self.kind, self.ambient.descriptor)

    def embed(self, gamma):
        '''
        Image of γ ∈ Γ in Δ.
        '''

        if self.kind == 'trivial':
            return self.ambient.identity
        if self.kind == 'index':
            return (self.m * gamma[0],)

        return gamma

    def decompose(self, delta):
        '''
        The pair (representative, γ) with δ = representative·embed(γ).
        '''

        if self.kind == 'trivial':
            return delta, self.inner_group.identity
        if self.kind == 'index':
            return (delta[0] % self.m,), (delta[0] // self.m,)

        return self.ambient.identity, delta

    def representatives(self, elements):
        '''
        The distinct coset representatives of a set of elements, in shortlex order.
        '''

        return self.ambient.sort(set([self.decompose(d)[0] for d in elements]))


def coinduce(inner, cosets):
    '''
    The coinduced Δ-subshift of an inner Γ-subshift.

    Configurations are stored by their identity coordinates z_δ = (x_δ)_e, so that (x_δ)_l = z_{δ·l}; then x_{δγ} = γ⁻¹·x_δ holds identically, and the rule reduces to the inner rule on each window δ·Γ-window.

    Args:
        inner: A SubshiftSpec over cosets.inner_group.
        cosets: A CosetStructure.

    Returns:
        A SubshiftSpec over the ambient group.
    '''

    assert inner.group == cosets.inner_group, "Inner spec is over %s, expected %s."%(inner.group.descriptor, cosets.inner_group.descriptor)

    window = [cosets.embed(w) for w in inner.window]
    name = 'CInd(%s;%s)'%(inner.name, repr(cosets))

    if inner.isExplicit():
        return shiftcert.subshift.SubshiftSpec(cosets.ambient, inner.alphabet, window, allowed = inner.allowed, prune = inner.prune, name = name)

    return shiftcert.subshift.SubshiftSpec(cosets.ambient, inner.alphabet, window, oracle = inner.oracle, prune = inner.prune, name = name)


def liftPatch(cosets, patch):
    '''
    Rebuild x_δ as a Γ-patch for every δ in the domain of a coinduced patch z: (x_δ)_γ = z_{δ·γ} wherever defined.

    Returns:
        Dictionary of δ to Patch over Γ.
    '''

    ambient = cosets.ambient
    inner_group = cosets.inner_group

    # Γ-elements whose embeddings reach the patch domain from some δ
    offsets = {}
    for delta in patch.cells:
        for other in patch.cells:
            rep, gamma = cosets.decompose(ambient.multiply(ambient.invert(delta), other))
            if rep == ambient.identity:
                offsets.setdefault(delta, []).append(gamma)

    lifted = {}
    for delta in patch.cells:
        cells = dict((gamma, patch.cells[ambient.multiply(delta, cosets.embed(gamma))]) for gamma in offsets.get(delta, []))
        lifted[delta] = shiftcert.subshift.Patch(inner_group, cells)

    return lifted


def checkCompatibility(cosets, lifted):
    '''
    Check x_{δγ} = γ⁻¹·x_δ, i.e. (x_{δγ})_l = (x_δ)_{γl}, for every pair of lifted coordinates where both sides are defined. Raises VerificationError at the first failure.

    Lifts made by liftPatch pass by construction, since they are all read off the same identity coordinates. The check is for coordinate families supplied from elsewhere, e.g. edited by hand or produced by another tool.

    Returns:
        The number of coordinate pairs compared.
    '''

    ambient = cosets.ambient
    G = cosets.inner_group

    checked = 0
    for delta, x in lifted.items():
        for gamma in x.cells:
            target = ambient.multiply(delta, cosets.embed(gamma))
            if target not in lifted:
                continue
            y = lifted[target]
            for l, value in y.cells.items():
                gl = G.multiply(gamma, l)
                if gl in x.cells:
                    checked += 1
                    if x.cells[gl] != value:
                        raise VerificationError('Coordinates at %s and %s are incompatible.'%(ambient.format(delta), ambient.format(target)), point = target)

    return checked


#############################
### Wreath jump           ###
#############################

class WreathJump(object):
    '''
    The Γ≀Λ action on X^Λ: Λ shifts, (λ·x)_l = x_{λ⁻¹l}, and Γ^{⊕Λ} acts coordinatewise. An element (φ, λ) acts as φ·(λ·x).

    Patches are finite cylinders: a lamp acting outside the domain leaves the (unknown) coordinate unknown.
    '''

    def __init__(self, gamma_group, lam_group, alphabet = None, action = None):
        '''
        Args:
            gamma_group: Finite group Γ (a CyclicGroup).
            lam_group: Λ, either Z or a free group.
            alphabet: Symbols X. Defaults to 0..m−1 for Γ = ℤ/m.
            action: Dictionary (g, x) -> g·x. Defaults to addition mod m on the default alphabet.
        '''

        self.gamma_group = self.__getGamma(gamma_group)
        self.lam_group = self.__getLambda(lam_group)
        self.alphabet = list(alphabet) if alphabet is not None else list(range(self.gamma_group.m))
        self.action = self.__getAction(action)
        self.symbols = self.__getSymbols()
        self.spec = shiftcert.subshift.fullShift(self.lam_group, self.alphabet)

    def __getGamma(self, gamma_group):
        '''
        '''

        if not isinstance(gamma_group, shiftcert.groups.CyclicGroup):
            raise ValueError('Wreath jumps need a finite cyclic Γ, not %s.'%gamma_group.descriptor)

        return gamma_group

    def __getLambda(self, lam_group):
        '''
        '''

        ok = isinstance(lam_group, shiftcert.groups.FreeGroup) or (isinstance(lam_group, shiftcert.groups.FreeAbelianGroup) and lam_group.d == 1)
        if not ok:
            raise ValueError('Wreath jumps over %s are not supported: use Z or a free group.'%lam_group.descriptor)

        return lam_group

    def __getAction(self, action):
        '''
        '''

        G = self.gamma_group
        elements = list(range(G.m))

        if action is None:
            assert self.alphabet == elements, "An action table is required for a custom alphabet."
            action = dict(((g, x), (g + x) % G.m) for g in elements for x in elements)

        action = dict(action)

        for x in self.alphabet:
            assert action[(G.identity, x)] == x, "The identity must act trivially."
            for g, h in itertools.product(elements, elements):
                assert action[(g, x)] in self.alphabet, "Action leaves the alphabet."
                assert action[(G.multiply(g, h), x)] == action[(g, action[(h, x)])], "The table is not a group action."

        return action

    def __getSymbols(self):
        '''
        '''

        symbols = collections.OrderedDict()
        for s, lam in self.lam_group.symbols:
            symbols[s] = ('shift', lam)

        for s, g in self.gamma_group.symbols:
            symbols[s.replace('c', 'f')] = ('lamp', g)

        return symbols

    def shift(self, lam, x):
        return shiftcert.subshift.translatePatch(x, lam)

    def lamps(self, phi, x):
        '''
        Coordinatewise action of φ: Λ -> Γ (finite support dictionary).
        '''

        cells = dict(x.cells)
        for l, g in phi.items():
            if l in cells:
                cells[l] = self.action[(g, cells[l])]

        return shiftcert.subshift.Patch(x.group, cells, x.domain)

    def actElement(self, element, x):
        '''
        Action of (φ, λ) = φ·λ.
        '''

        phi, lam = element

        return self.lamps(phi, self.shift(lam, x))

    def multiply(self, a, b):
        '''
        (φ, λ)(ψ, μ) = (φ·(λψ), λμ) with (λψ)(l) = ψ(λ⁻¹l).
        '''

        (phi, lam), (psi, mu) = a, b
        Lam, G = self.lam_group, self.gamma_group

        out = dict(phi)
        for l, g in psi.items():
            k = Lam.multiply(lam, l)
            out[k] = G.multiply(out.get(k, G.identity), g)

        out = dict((l, g) for l, g in out.items() if g != G.identity)

        return (out, Lam.multiply(lam, mu))

    def generator(self, symbol):
        '''
        The wreath element of a generator symbol.
        '''

        if symbol not in self.symbols:
            raise ValueError("Unknown generator '%s'. Known: %s."%(symbol, ', '.join(self.symbols.keys())))

        kind, value = self.symbols[symbol]

        if kind == 'shift':
            return ({}, value)

        return ({self.lam_group.identity: value}, self.lam_group.identity)

    def fromLamplighter(self, g):
        '''
        Convert an element (lamps, cursor) of the lamplighter group, for Γ = ℤ/2 and Λ = ℤ.
        '''

        assert self.gamma_group.m == 2 and isinstance(self.lam_group, shiftcert.groups.FreeAbelianGroup), "Lamplighter elements need Γ = ℤ/2 and Λ = ℤ."

        A, p = g

        return (dict(((a,), 1) for a in A), (p,))

    def applyWord(self, word, x):
        '''
        Action of a generator word w = s₁…s_k, read left to right as a group element: w·x = s₁·(…(s_k·x)).

        Args:
            word: List of generator symbols, or a whitespace-separated string. The empty word acts trivially.
            x: A Patch over Λ.
        '''

        if isinstance(word, str):
            word = word.split()

        element = ({}, self.lam_group.identity)
        for s in word:
            element = self.multiply(element, self.generator(s))

        return self.actElement(element, x)


def wreathJump(gamma_group, lam_group, alphabet = None, action = None):
    '''
    Build the restricted jump of the full shift X^Λ under Γ≀Λ.
    '''

    return WreathJump(gamma_group, lam_group, alphabet = alphabet, action = action)


#############################
### The F₂ tail action    ###
#############################

class Boundary(object):
    '''
    Outcome of a prefix rewrite on a string too short to determine the rule. Falsy.
    '''

    outcome = 'boundary'

    def __init__(self, string, generator):
        self.string = string
        self.generator = generator

    def __bool__(self):
        return False

    def __repr__(self):
        return "Boundary(%s on '%s')"%(self.generator, self.string)


def _isCompletePrefixCode(words):

    words = list(words)
    for u, v in itertools.permutations(words, 2):
        if v.startswith(u):
            return False

    # Kraft equality
    return sum([2 ** (max(map(len, words)) - len(w)) for w in words]) == 2 ** max(map(len, words))


class PrefixMap(object):
    '''
    A bijection of binary sequences rewriting a prefix: source_i + rest -> target_i + rest. Sources and targets are complete prefix codes.
    '''

    def __init__(self, rules, name = 'g'):
        '''
        Args:
            rules: List of (source, target) binary strings.
            name: Generator name, used in outcomes.
        '''

        self.rules = self.__getRules(rules)
        self.name = name

    def __getRules(self, rules):
        '''
        '''

        rules = [(str(s), str(t)) for s, t in rules]

        for s, t in rules:
            assert re.match('^[01]+$', s) and re.match('^[01]+$', t), "Rules must rewrite nonempty binary strings."

        assert _isCompletePrefixCode([s for s, t in rules]), "Sources do not form a complete prefix code."
        assert _isCompletePrefixCode([t for s, t in rules]), "Targets do not form a complete prefix code."

        return rules

    def __repr__(self):
        return 'PrefixMap(%s: %s)'%(self.name, ', '.join(['%s->%s'%(s, t) for s, t in self.rules]))

    def apply(self, x):
        '''
        Rewrite the prefix of x. Returns the new string, or a Boundary when x is a proper prefix of a source.
        '''

        for s, t in self.rules:
            if x.startswith(s):
                return t + x[len(s):]

        return Boundary(x, self.name)

    def match(self, x):
        '''
        The (source, target) rule applying to x, or None.
        '''

        for s, t in self.rules:
            if x.startswith(s):
                return s, t

        return None

    def inverse(self):

        name = self.name[:-2] if self.name.endswith('⁻¹') else self.name + '⁻¹'

        return PrefixMap([(t, s) for s, t in self.rules], name = name)


def f2Generators():
    '''
    The prefix maps g₁ (first-bit flip), g₂ (0->00, 11->1, 10->01) and their inverses, by name.
    '''

    g1 = PrefixMap([('0', '1'), ('1', '0')], name = 'g1')
    g2 = PrefixMap([('0', '00'), ('11', '1'), ('10', '01')], name = 'g2')

    return collections.OrderedDict([('g1', g1), ('g1⁻¹', g1.inverse()), ('g2', g2), ('g2⁻¹', g2.inverse())])


def _parseF2Word(word):

    if not isinstance(word, str):
        return list(word)

    word = word.replace('^-1', '⁻¹').replace(' ', '')
    tokens = re.findall(r'g[12](?:⁻¹)?', word)

    if ''.join(tokens) != word:
        raise ValueError("Malformed word '%s': use g1, g2, g1⁻¹ and g2⁻¹."%word)

    return tokens


def f2TailAction(x, word):
    '''
    Act on a finite binary string by a word in g₁, g₂ and their inverses: w = s₁…s_k acts as s₁·(…(s_k·x)).

    Args:
        x: Binary string (a prefix of a point in 2^ℕ; the unseen remainder is left untouched).
        word: String such as 'g2⁻¹g2', or a list of generator names.

    Returns:
        The resulting string, or a Boundary when some step needs bits beyond x.
    '''

    generators = f2Generators()

    for s in reversed(_parseF2Word(word)):
        if s not in generators:
            raise ValueError("Unknown generator '%s'."%s)
        x = generators[s].apply(x)
        if not x:
            return x

    return x


class OrbitResult(object):
    '''
    Outcome of f2OrbitCheck. Truthy when the target was reached.
    '''

    def __init__(self, connected, depth, path = None, tail_consistent = None, boundaries = 0):
        '''
        Args:
            connected: True if the target string was reached.
            depth: Search depth (or path length when connected).
            path: List of generator names, applied in order, leading from x to y.
            tail_consistent: Whether x and y agree on the suffix no step of the path touched.
            boundaries: Number of generator applications that hit the end of the string.
        '''

        self.connected = connected
        self.outcome = 'connected' if connected else 'not-within-depth'
        self.depth = depth
        self.path = path
        self.tail_consistent = tail_consistent
        self.boundaries = boundaries

    def __bool__(self):
        return self.connected

    def __repr__(self):
        if self.connected:
            return 'OrbitResult(connected by %s, tail consistent: %s)'%(' '.join(self.path) if self.path else 'e', str(self.tail_consistent))
        return 'OrbitResult(not within depth %s)'%str(self.depth)


def tailAgreement(x, y, m, n):
    '''
    Finite-data tail condition: x_{m+k} = y_{n+k} for every k where both are defined.
    '''

    return all([a == b for a, b in zip(x[m:], y[n:])])


def f2OrbitCheck(x, y, depth, verbose = False):
    '''
    Breadth-first search for y in the orbit of x under g₁, g₂ and their inverses, up to the given depth.

    Each string carries the length of its suffix untouched so far; when y is reached the untouched suffixes of x and y are compared (the E_t tail condition on finite data).

    Args:
        x, y: Nonempty binary strings.
        depth: Maximum word length.
        verbose: Set True to print layer sizes.

    Returns:
        An OrbitResult.
    '''

    assert len(x) > 0 and len(y) > 0, "Strings must be nonempty."

    generators = f2Generators()

    parents = {x: None}
    untouched = {x: len(x)}
    layer = [x]
    boundaries = 0

    for k in range(depth + 1):

        if y in parents:
            path = []
            node = y
            while parents[node] is not None:
                node, s = parents[node]
                path.append(s)
            path.reverse()

            keep = untouched[y]
            consistent = tailAgreement(x, y, len(x) - keep, len(y) - keep)

            return OrbitResult(True, len(path), path = path, tail_consistent = consistent, boundaries = boundaries)

        if k == depth:
            break

        next_layer = []
        for z in layer:
            for name, g in generators.items():
                rule = g.match(z)
                if rule is None:
                    boundaries += 1
                    continue
                w = g.apply(z)
                if w not in parents:
                    parents[w] = (z, name)
                    untouched[w] = min(untouched[z], len(z) - len(rule[0]))
                    next_layer.append(w)

        if verbose: print('Depth %s: %s new strings'%(str(k + 1), str(len(next_layer))))
        layer = next_layer

    return OrbitResult(False, depth, boundaries = boundaries)


def f2GeneratorCheck(length, radius, verbose = False):
    '''
    Check that the first-bit partition separates points: for every pair of distinct strings of equal length ≤ length (sharing an arbitrary continuation), some word of length ≤ radius, defined on both, gives them different first bits.

    Returns:
        A GeneratorCheckResult (subshift module) naming the first pair left unseparated, if any.
    '''

    generators = list(f2Generators().values())

    checked = 0
    for L in range(1, length + 1):
        strings = [''.join(bits) for bits in itertools.product('01', repeat = L)]
        for x, y in itertools.combinations(strings, 2):
            checked += 1

            seen = set([(x, y)])
            layer = [(x, y)]
            separated = x[0] != y[0]
            k = 0
            while not separated and k < radius and len(layer) > 0:
                next_layer = []
                for u, v in layer:
                    for g in generators:
                        u2, v2 = g.apply(u), g.apply(v)
                        if not u2 or not v2 or (u2, v2) in seen:
                            continue
                        if u2[0] != v2[0]:
                            separated = True
                            break
                        seen.add((u2, v2))
                        next_layer.append((u2, v2))
                    if separated:
                        break
                layer = next_layer
                k += 1

            if not separated:
                if verbose: print("Strings '%s' and '%s' are not separated within radius %s"%(x, y, str(radius)))
                return shiftcert.subshift.GeneratorCheckResult(False, radius, pair = (x, y), checked = checked)

    if verbose: print('%s pairs separated within radius %s'%(str(checked), str(radius)))

    return shiftcert.subshift.GeneratorCheckResult(True, radius, checked = checked)


#############################
### Odometer              ###
#############################

class CarryOverflow(object):
    '''
    Outcome of an odometer step whose carry passes the end of the truncation. Falsy.
    '''

    outcome = 'overflow'

    def __init__(self, x, direction):
        self.x = tuple(x)
        self.direction = direction

    def __bool__(self):
        return False

    def __repr__(self):
        return 'CarryOverflow(%s, %+d)'%(str(self.x), self.direction)


def odometerStep(x, direction = 1, base = 4):
    '''
    Add ±1 with carry to a little-endian truncation over ℤ/base.

    Returns:
        The new tuple, or CarryOverflow when the carry passes position L − 1.
    '''

    assert len(x) >= 1, "Truncations must have length at least 1."
    assert direction in [1, -1], "direction must be +1 or -1."

    out = list(x)
    for i in range(len(out)):
        out[i] = (out[i] + direction) % base
        # No carry unless the digit wrapped
        if (direction == 1 and out[i] != 0) or (direction == -1 and out[i] != base - 1):
            return tuple(out)

    return CarryOverflow(x, direction)


def stableTailStart(x, tail = None):
    '''
    Least n with x_k ∈ {1, 2} for every n ≤ k < tail; the entries from tail on are declared to lie in {1, 2}.
    '''

    tail = len(x) if tail is None else tail
    assert 0 <= tail <= len(x), "Tail marker must lie in 0..%s."%str(len(x))

    for k in range(tail, len(x)):
        if x[k] not in (1, 2):
            raise ValueError('Entry %s at position %s contradicts the declared tail from %s.'%(str(x[k]), str(k), str(tail)))

    n = tail
    while n > 0 and x[n - 1] in (1, 2):
        n -= 1

    return n


def odometerCompression(x, tail = None):
    '''
    The compression of the ℤ/4 odometer relation: add 2 (mod 4) at n_x, the least index from which x stays in {1, 2}.

    Args:
        x: Tuple over 0..3, little-endian.
        tail: Declared start of the {1, 2} tail, ≤ len(x). Defaults to len(x) (only the unseen remainder is declared).

    Returns:
        The image tuple. Raises ValueError when n_x does not lie inside the truncation.
    '''

    x = tuple(x)
    n = stableTailStart(x, tail = tail)

    if n >= len(x):
        raise ValueError('No stable tail start inside the truncation %s.'%str(x))

    out = list(x)
    out[n] = (out[n] + 2) % 4

    return tuple(out)


def odometerDecompression(y):
    '''
    Inverse of odometerCompression on its image: the modified coordinate sits just before the stable tail of y.
    '''

    y = tuple(y)
    n = stableTailStart(y) - 1

    if n < 0 or y[n] not in (3, 0):
        raise ValueError('%s is not in the image of the compression.'%str(y))

    out = list(y)
    out[n] = (out[n] - 2) % 4

    return tuple(out)
