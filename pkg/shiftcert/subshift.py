
import functools
import hashlib
import itertools
import numpy as np

import shiftcert.core
import shiftcert.groups
import shiftcert.multiprocess
from shiftcert.core import NotFound, ResourceLimitError, VerificationError

### Finite-window engine for subshifts over finitely generated groups. Shift convention: (γ·x)_l = x_{γ⁻¹·l}.


####################
### Patches      ###
####################

class Patch(object):
    '''
    A finite partial configuration: cells maps part of a finite domain of group elements to symbols.
    '''

    def __init__(self, group, cells, domain = None):
        '''
        Args:
            group: The Group.
            cells: Dictionary of element to symbol.
            domain: Optional domain (iterable of elements) containing the keys of cells. Defaults to the keys of cells.
        '''

        self.group = group
        self.cells = dict(cells)
        self.domain = frozenset(domain) if domain is not None else frozenset(self.cells.keys())

        for g in self.cells:
            assert g in self.domain, "Cell %s lies outside the patch domain."%group.format(g)

    def __eq__(self, other):
        return isinstance(other, Patch) and self.group == other.group and self.domain == other.domain and self.cells == other.cells

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.group.descriptor, self.domain, frozenset(self.cells.items())))

    def __len__(self):
        return len(self.domain)

    def __repr__(self):
        return 'Patch(%s, %s cells)'%(self.group.descriptor, str(len(self.cells)))

    def isTotal(self):
        return len(self.cells) == len(self.domain)

    def items(self):
        '''
        (element, symbol) pairs in shortlex order.
        '''

        return [(g, self.cells[g]) for g in self.group.sort(self.cells.keys())]

    def restrict(self, domain):
        '''
        Restriction to a subset of the domain.
        '''

        domain = frozenset(domain)
        assert domain <= self.domain, "Restriction domain is not contained in the patch domain."

        return Patch(self.group, dict((g, x) for g, x in self.cells.items() if g in domain), domain)

    def sequence(self, elements):
        '''
        Symbols at the given elements, as a tuple (None where unassigned).
        '''

        return tuple([self.cells.get(g) for g in elements])


def translatePatch(patch, gamma):
    '''
    The translate γ·x: domain γ·domain, with (γ·x)_l = x_{γ⁻¹·l}.
    '''

    group = patch.group
    cells = dict((group.multiply(gamma, g), x) for g, x in patch.cells.items())

    return Patch(group, cells, [group.multiply(gamma, g) for g in patch.domain])


###########################
### Subshift specs      ###
###########################

class SubshiftSpec(object):
    '''
    A subshift of finite type given by an alphabet, a window W and a rule on W-patterns.

    The pattern of x at γ is the tuple (x_{γ·w})_{w ∈ W}, i.e. the pattern of γ⁻¹·x on W. The rule is either an explicit allowed set of such tuples or an oracle (a total predicate on them).
    '''

    def __init__(self, group, alphabet, window, allowed = None, oracle = None, prune = None, name = 'custom'):
        '''
        Args:
            group: The Group.
            alphabet: Ordered list of symbols, or a symbolic alphabet (an object with symbolic = True supporting 'in' and description()).
            window: Ordered list of group elements W.
            allowed: Explicit set of allowed W-patterns (tuples aligned with window).
            oracle: Function of a W-pattern returning True when it is allowed. Exactly one of allowed and oracle must be given.
            prune: Optional function of a partial W-pattern (None for unknown cells) returning False when no completion can be allowed.
            name: Short description, used in reports and integrity hashes.
        '''

        self.group = group
        self.alphabet = self.__getAlphabet(alphabet)
        self.window = self.__getWindow(window)
        self.allowed = self.__getAllowed(allowed, oracle)
        self.oracle = oracle
        self.prune = prune
        self.name = name

    def __getAlphabet(self, alphabet):
        '''
        '''

        if getattr(alphabet, 'symbolic', False):
            return alphabet

        alphabet = list(alphabet)
        assert len(set(alphabet)) == len(alphabet), "Alphabet contains repeated symbols."

        return alphabet

    def __getWindow(self, window):
        '''
        '''

        window = list(window)
        assert len(window) > 0, "Window must be nonempty."
        assert len(set(window)) == len(window), "Window contains repeated elements."

        return window

    def __getAllowed(self, allowed, oracle):
        '''
        '''

        assert (allowed is None) != (oracle is None), "Give exactly one of an allowed pattern set and a rule oracle."

        if allowed is None:
            return None

        symbols = set(self.alphabet)
        allowed = frozenset([tuple(p) for p in allowed])
        for p in allowed:
            assert len(p) == len(self.window), "Allowed pattern %s does not match the window size."%str(p)
            for x in p:
                assert x in symbols, "Allowed pattern %s uses a symbol outside the alphabet."%str(p)

        return allowed

    def isAllowed(self, pattern):
        '''
        Whether a complete W-pattern satisfies the rule.
        '''

        if self.allowed is not None:
            return tuple(pattern) in self.allowed

        return bool(self.oracle(tuple(pattern)))

    def isExplicit(self):
        return self.allowed is not None

    def windowRadius(self):
        return max([self.group.wordLength(w) for w in self.window])

    def description(self):
        '''
        Stable text description, used for integrity hashes.
        '''

        group = self.group
        if getattr(self.alphabet, 'symbolic', False):
            symbols = self.alphabet.description()
        else:
            symbols = ','.join([_symbolText(group, a) for a in self.alphabet])

        text = '%s|%s|%s|%s'%(group.descriptor, self.name, symbols, ','.join([group.format(w) for w in self.window]))

        if self.allowed is not None:
            text += '|' + ';'.join(sorted([','.join([_symbolText(group, a) for a in p]) for p in self.allowed]))

        return text

    def digest(self):
        '''
        sha256 digest of the description.
        '''

        return hashlib.sha256(self.description().encode('utf-8')).hexdigest()


def _symbolText(group, x):
    '''
    Text form of a symbol: (side, element) labels and group elements are formatted, other values use str().
    '''

    if isinstance(x, tuple) and len(x) == 2 and x[0] in ('S', 'T'):
        return '%s:%s'%(x[0], group.format(x[1]))
    if isinstance(x, (str, int)):
        return str(x)
    try:
        return group.format(x)
    except Exception:
        return str(x)


class WindowViolation(object):
    '''
    Outcome of patchCheck naming the centre γ of a violated window. Falsy.
    '''

    def __init__(self, gamma, pattern):
        self.gamma = gamma
        self.pattern = pattern

    def __bool__(self):
        return False

    def __repr__(self):
        return 'WindowViolation(%s)'%str(self.gamma)


class Unsatisfiable(object):
    '''
    Outcome of an exhaustive extension search with no solution. Falsy, and conclusive.
    '''

    outcome = 'unsat'

    def __init__(self, nodes):
        self.nodes = nodes

    def __bool__(self):
        return False

    def __repr__(self):
        return 'Unsatisfiable(%s nodes)'%str(self.nodes)


def windowCenters(spec, domain):
    '''
    All γ with γ·W ⊆ domain, in shortlex order.
    '''

    group = spec.group
    domain = set(domain)

    candidates = set()
    inverses = [group.invert(w) for w in spec.window]
    for d in domain:
        for w_inv in inverses:
            candidates.add(group.multiply(d, w_inv))

    centers = [g for g in candidates if all([group.multiply(g, w) in domain for w in spec.window])]

    return group.sort(centers)


def patchCheck(spec, patch, centers = None):
    '''
    Check every window of the rule inside the patch.

    Args:
        spec: A SubshiftSpec.
        patch: A Patch.
        centers: Optional list of window centres to check. Defaults to every γ with γ·W inside the assigned cells.

    Returns:
        True, or a WindowViolation at the first violating centre in shortlex order.
    '''

    group = spec.group

    if centers is None:
        centers = windowCenters(spec, patch.cells.keys())
    else:
        centers = group.sort(centers)

    for gamma in centers:
        pattern = patch.sequence([group.multiply(gamma, w) for w in spec.window])
        assert None not in pattern, "Window at %s is not covered by the patch."%group.format(gamma)
        if not spec.isAllowed(pattern):
            return WindowViolation(gamma, pattern)

    return True


###################################
### Backtracking engine         ###
###################################

class _Backtracker(object):
    '''
    Deterministic backtracking over the free cells in a fixed order, symbols in alphabet order. Each window is checked when its last cell is assigned; partial windows are tested with the spec's prune function.
    '''

    def __init__(self, spec, order, fixed, cap):

        group = spec.group

        self.spec = spec
        self.order = list(order)
        self.fixed = dict(fixed)
        self.cap = cap
        self.nodes = 0

        position = dict((g, i) for i, g in enumerate(self.order))
        domain = set(self.order) | set(self.fixed.keys())

        n = len(self.order)
        self.windows = []
        self.check_at = [[] for i in range(n)]
        self.touching = [[] for i in range(n)]
        self.initial = []

        for gamma in windowCenters(spec, domain):
            slots = []
            for w in spec.window:
                g = group.multiply(gamma, w)
                slots.append(position[g] if g in position else ('fixed', self.fixed[g]))
            idx = len(self.windows)
            self.windows.append((gamma, slots))

            free = [s for s in slots if not isinstance(s, tuple)]
            if len(free) == 0:
                self.initial.append(idx)
                continue
            self.check_at[max(free)].append(idx)
            if spec.prune is not None:
                for s in set(free):
                    if s != max(free):
                        self.touching[s].append(idx)

    def _pattern(self, idx, values):

        return tuple([s[1] if isinstance(s, tuple) else values[s] for s in self.windows[idx][1]])

    def _ok(self, i, values):

        for idx in self.check_at[i]:
            if not self.spec.isAllowed(self._pattern(idx, values)):
                return False

        for idx in self.touching[i]:
            if not self.spec.prune(self._pattern(idx, values)):
                return False

        return True

    def solutions(self):
        '''
        Generator over admissible assignments, as tuples aligned with order.
        '''

        for idx in self.initial:
            if not self.spec.isAllowed(self._pattern(idx, [])):
                return

        alphabet = self.spec.alphabet
        n = len(self.order)

        if n == 0:
            yield ()
            return

        if len(alphabet) == 0:
            return

        values = [None] * n
        choice = [-1] * n
        i = 0

        while i >= 0:

            choice[i] += 1

            if choice[i] >= len(alphabet):
                choice[i] = -1
                values[i] = None
                i -= 1
                continue

            values[i] = alphabet[choice[i]]
            self.nodes += 1
            if self.nodes > self.cap:
                raise ResourceLimitError('Backtracking search exceeded %s nodes.'%str(self.cap))

            if not self._ok(i, values):
                continue

            if i == n - 1:
                yield tuple(values)
            else:
                i += 1


def _searchOrder(spec, patch, target):

    target = set(target)
    assert set(patch.cells.keys()) <= target, "Patch cells must lie inside the target."

    return spec.group.sort([g for g in target if g not in patch.cells])


def _extendBranch(spec, fixed, order, cap, symbol):
    '''
    Worker job: first solution with the first free cell set to symbol.
    '''

    fixed = dict(fixed)
    fixed[order[0]] = symbol
    engine = _Backtracker(spec, order[1:], fixed, cap)

    for values in engine.solutions():
        return dict(zip(order[1:], values))

    return None


def extendSearch(spec, patch, target, cap = None, n_processes = 1, verbose = False):
    '''
    Find the first admissible total assignment on target extending patch, backtracking over cells in shortlex order and symbols in alphabet order.

    Args:
        spec: A SubshiftSpec.
        patch: A Patch (its cells are kept fixed).
        target: Iterable of elements containing the patch's cells.
        cap: Maximum number of search nodes. Defaults to the configured pattern_cap.
        n_processes: Split the search over the symbols of the first free cell. The shortlex-first solution is returned regardless.
        verbose: Set True to print progress.

    Returns:
        A Patch on target, or Unsatisfiable.
    '''

    cap = shiftcert.core.resolveCap('pattern_cap', cap)
    order = _searchOrder(spec, patch, target)
    fixed = dict(patch.cells)
    domain = set(target)

    if verbose: print('Extending a patch of %s cells to %s cells'%(str(len(fixed)), str(len(domain))))

    if n_processes > 1 and len(order) > 0:

        job = functools.partial(_extendBranch, spec, fixed, order, cap)
        results = shiftcert.multiprocess.runWorkers(job, n_processes, spec.alphabet)

        for symbol, result in zip(spec.alphabet, results):
            if result is not None:
                cells = dict(fixed)
                cells[order[0]] = symbol
                cells.update(result)
                return Patch(spec.group, cells, domain)

        return Unsatisfiable(None)

    engine = _Backtracker(spec, order, fixed, cap)

    for values in engine.solutions():
        cells = dict(fixed)
        cells.update(zip(order, values))
        if verbose: print('Solution found after %s nodes'%str(engine.nodes))
        return Patch(spec.group, cells, domain)

    if verbose: print('Unsatisfiable after %s nodes'%str(engine.nodes))

    return Unsatisfiable(engine.nodes)


def admissiblePatterns(spec, domain, cap = None):
    '''
    Generator over all admissible total assignments on domain, as tuples aligned with the shortlex-sorted domain.
    '''

    cap = shiftcert.core.resolveCap('pattern_cap', cap)
    order = spec.group.sort(domain)

    return _Backtracker(spec, order, {}, cap).solutions()


def countPatterns(spec, domain, cap = None):
    '''
    Exact number of admissible total assignments on domain.

    Args:
        spec: A SubshiftSpec.
        domain: Iterable of elements.
        cap: Bound on |alphabet|^|domain|. Defaults to the configured pattern_cap.

    Returns:
        An integer.
    '''

    cap = shiftcert.core.resolveCap('pattern_cap', cap)
    domain = list(set(domain))

    if len(spec.alphabet) ** len(domain) > cap:
        raise ResourceLimitError('%s candidate patterns on %s cells exceed the cap of %s.'%(str(len(spec.alphabet) ** len(domain)), str(len(domain)), str(cap)))

    count = 0
    for values in admissiblePatterns(spec, domain, cap = cap):
        count += 1

    return count


def emptyOnBall(spec, r, cap = None, verbose = False):
    '''
    True iff no admissible pattern exists on the standard ball of radius r (then the subshift is empty). False is evidence of nonemptiness up to radius r only.
    '''

    B = shiftcert.groups.ball(spec.group, None, r)
    result = extendSearch(spec, Patch(spec.group, {}), B.elements, cap = cap, verbose = verbose)

    return not result


def productSpec(spec1, spec2):
    '''
    Product subshift: alphabet of pairs, rule = both component rules on the union window.
    '''

    assert spec1.group == spec2.group, "Product specs must be over the same group."

    group = spec1.group
    window = list(spec1.window) + [w for w in spec2.window if w not in spec1.window]
    index1 = [window.index(w) for w in spec1.window]
    index2 = [window.index(w) for w in spec2.window]

    alphabet = [(a, b) for a in spec1.alphabet for b in spec2.alphabet]

    def _oracle(pattern):
        return spec1.isAllowed([pattern[i][0] for i in index1]) and spec2.isAllowed([pattern[i][1] for i in index2])

    def _prune(pattern):
        if spec1.prune is not None and not spec1.prune(tuple([pattern[i][0] if pattern[i] is not None else None for i in index1])):
            return False
        if spec2.prune is not None and not spec2.prune(tuple([pattern[i][1] if pattern[i] is not None else None for i in index2])):
            return False
        return True

    prune = _prune if (spec1.prune is not None or spec2.prune is not None) else None

    return SubshiftSpec(group, alphabet, window, oracle = _oracle, prune = prune, name = '(%s)x(%s)'%(spec1.name, spec2.name))


############################
### Named subshifts      ###
############################

def fullShift(group, alphabet):
    '''
    The full shift over alphabet.
    '''

    return SubshiftSpec(group, alphabet, [group.identity], allowed = [(a,) for a in alphabet], name = 'full(%s)'%str(len(alphabet)))


def forbiddenPatterns(group, alphabet, window, forbidden, name = 'forbidden'):
    '''
    Explicit spec allowing every W-pattern except those listed.
    '''

    forbidden = set([tuple(p) for p in forbidden])
    allowed = [p for p in itertools.product(alphabet, repeat = len(window)) if p not in forbidden]

    return SubshiftSpec(group, alphabet, window, allowed = allowed, name = name)


def goldenMean(group):
    '''
    Golden mean shift: no 1 followed by 1 along the first generator.
    '''

    return forbiddenPatterns(group, [0, 1], [group.identity, group.generators()[0]], [(1, 1)], name = 'golden-mean')


def hardCore(group):
    '''
    Hard-core shift: a 1 at a cell forces 0 at every standard neighbour. Window is the standard ball of radius 1, identity first.
    '''

    window = group.generatingSet()

    def _oracle(pattern):
        return pattern[0] != 1 or all([x == 0 for x in pattern[1:]])

    def _prune(pattern):
        return pattern[0] != 1 or all([x != 1 for x in pattern[1:]])

    return SubshiftSpec(group, [0, 1], window, oracle = _oracle, prune = _prune, name = 'hard-core')


def xtSpec(group, T):
    '''
    X_T: configurations x ∈ T^Γ for which h ↦ h·x_h is 2-to-1. Window T⁻¹; at γ exactly two t ∈ T have x_{γ·t⁻¹} = t.
    '''

    T = group.sort(set(T))
    window = [group.invert(t) for t in T]

    def _oracle(pattern):
        return sum([1 for x, t in zip(pattern, T) if x == t]) == 2

    def _prune(pattern):
        hits = sum([1 for x, t in zip(pattern, T) if x == t])
        unknown = sum([1 for x in pattern if x is None])
        return hits <= 2 and hits + unknown >= 2

    return SubshiftSpec(group, T, window, oracle = _oracle, prune = _prune, name = 'XT{%s}'%','.join([group.format(t) for t in T]))


def xstSpec(group, S, T):
    '''
    X_{S,T}: symbols ('S', s) and ('T', t); at every γ exactly one s with x_{γ·s⁻¹} = ('S', s) and exactly one t with x_{γ·t⁻¹} = ('T', t).
    '''

    S = group.sort(set(S))
    T = group.sort(set(T))
    alphabet = [('S', s) for s in S] + [('T', t) for t in T]

    window = []
    for x in S + T:
        if group.invert(x) not in window:
            window.append(group.invert(x))

    checks = [(window.index(group.invert(s)), ('S', s)) for s in S] + [(window.index(group.invert(t)), ('T', t)) for t in T]

    def _counts(pattern):
        s_hits = sum([1 for i, label in checks if label[0] == 'S' and pattern[i] == label])
        t_hits = sum([1 for i, label in checks if label[0] == 'T' and pattern[i] == label])
        return s_hits, t_hits

    def _oracle(pattern):
        return _counts(pattern) == (1, 1)

    def _prune(pattern):
        s_hits, t_hits = _counts(pattern)
        s_open = sum([1 for i, label in checks if label[0] == 'S' and pattern[i] is None])
        t_open = sum([1 for i, label in checks if label[0] == 'T' and pattern[i] is None])
        return s_hits <= 1 and t_hits <= 1 and s_hits + s_open >= 1 and t_hits + t_open >= 1

    return SubshiftSpec(group, alphabet, window, oracle = _oracle, prune = _prune, name = 'XST')


##################################
### Clopen generators          ###
##################################

class GeneratorCheckResult(object):
    '''
    Outcome of clopenGeneratorCheck. Truthy when the labelling separates at the given radius.
    '''

    def __init__(self, separates, radius, pair = None, checked = 0):
        '''
        Args:
            separates: True if no counterexample was found.
            radius: The radius w checked.
            pair: Counterexample pair of Patch objects with equal codes on ball(w) but different identity cells.
            checked: Number of patches compared.
        '''

        self.separates = separates
        self.radius = radius
        self.pair = pair
        self.checked = checked

    def __bool__(self):
        return self.separates

    def __repr__(self):
        if self.separates:
            return 'GeneratorCheckResult(separates at radius %s, %s patches)'%(str(self.radius), str(self.checked))
        return 'GeneratorCheckResult(counterexample at radius %s)'%str(self.radius)


def _label(labeling, pattern):

    if callable(labeling):
        return labeling(pattern)

    return labeling[pattern]


def labelCode(group, patch, labeling, d, w):
    '''
    The code of a patch: γ ↦ label of γ⁻¹·x on ball(d), for γ in ball(w) (in ball order).
    '''

    inner = shiftcert.groups.ball(group, None, d).elements
    outer = shiftcert.groups.ball(group, None, w).elements

    code = []
    for gamma in outer:
        pattern = patch.sequence([group.multiply(gamma, l) for l in inner])
        code.append(_label(labeling, pattern))

    return tuple(code)


def clopenGeneratorCheck(spec, labeling, d, w, patches = None, observe = None, cap = None, verbose = False):
    '''
    Finite-resolution generator check: any two admissible patches on ball(w + d) whose label codes agree on ball(w) must agree at the identity.

    Args:
        spec: A SubshiftSpec.
        labeling: Function (or dictionary) from ball(d) patterns, aligned with the ball order, to labels.
        d: Cylinder radius of the labelling.
        w: Code radius.
        patches: Optional list of Patch objects to compare instead of enumerating every admissible ball(w + d) patch. Each must cover ball(w + d).
        observe: Optional function of a Patch giving the value that equal codes must determine. Defaults to the symbol at the identity.
        cap: Search cap for the enumeration. Defaults to the configured pattern_cap.
        verbose: Set True to print progress.

    Returns:
        A GeneratorCheckResult.
    '''

    group = spec.group
    domain = shiftcert.groups.ball(group, None, w + d).elements

    if observe is None:
        observe = lambda patch: patch.cells.get(group.identity)

    if patches is None:
        order = group.sort(domain)
        patches = (Patch(group, dict(zip(order, values))) for values in admissiblePatterns(spec, domain, cap = cap))

    seen = {}
    checked = 0
    for patch in patches:
        code = labelCode(group, patch, labeling, d, w)
        checked += 1
        if code in seen:
            other = seen[code]
            if observe(other) != observe(patch):
                if verbose: print('Counterexample after %s patches'%str(checked))
                return GeneratorCheckResult(False, w, pair = (other, patch), checked = checked)
        else:
            seen[code] = patch

    if verbose: print('%s patches, %s distinct codes'%(str(checked), str(len(seen))))

    return GeneratorCheckResult(True, w, checked = checked)


###################################
### Clopen paradox search       ###
###################################

class ClopenDecomposition(object):
    '''
    Pieces given by depth-d cylinders (atoms) with translations, verified on all admissible depth-D patterns.

    mode 'compression': one translation per atom, translated pieces disjoint, some depth-D pattern uncovered.
    mode 'paradox': each atom in one of two families, each family's translated pieces partitioning the patterns.
    '''

    def __init__(self, mode, d, D, atoms, pieces, uncovered, search_translations):
        '''
        Args:
            mode: 'compression' or 'paradox'.
            d: Atom depth.
            D: Verification depth.
            atoms: List of ball(d) patterns.
            pieces: List of (atom index, family, translation).
            uncovered: Number of depth-D patterns missed (compression), or 0.
            search_translations: The translation set searched, which fixes D.
        '''

        self.mode = mode
        self.d = d
        self.D = D
        self.atoms = atoms
        self.pieces = pieces
        self.uncovered = uncovered
        self.search_translations = list(search_translations)

    def __bool__(self):
        return True

    def __repr__(self):
        return 'ClopenDecomposition(%s, depth %s, %s pieces)'%(self.mode, str(self.d), str(len(self.pieces)))

    def translations(self):
        return [gamma for a, f, gamma in self.pieces]

    def verify(self, spec, cap = None):
        '''
        Rebuild the depth-D patterns from spec and recheck the pieces. Raises VerificationError on failure.
        '''

        cap = shiftcert.core.resolveCap('pattern_cap', cap)
        images = _AtomImages(spec, self.d, self.search_translations, cap)

        if images.atoms != self.atoms:
            raise VerificationError('Atoms at depth %s do not match the admissible patterns.'%str(self.d))

        uncovered = _verifyChoice(images, self.mode, [(f, gamma) for a, f, gamma in self.pieces])
        if uncovered is None or uncovered != self.uncovered:
            raise VerificationError('Pieces do not form a %s at depth %s.'%(self.mode, str(self.D)))

        return True


class _AtomImages(object):
    '''
    Depth-D patterns and, for each atom a and translation γ, the set of patterns in γ·[a] as an integer bitset.
    '''

    def __init__(self, spec, d, translations, cap):

        group = spec.group

        self.d = d
        self.D = d + max([group.wordLength(g) for g in translations])
        self.inner = shiftcert.groups.ball(group, None, d).elements
        outer = group.sort(shiftcert.groups.ball(group, None, self.D).elements)
        position = dict((g, i) for i, g in enumerate(outer))

        patterns = list(admissiblePatterns(spec, outer, cap = cap))

        self.n_patterns = len(patterns)
        self.full = (1 << self.n_patterns) - 1

        identity_slots = [position[l] for l in self.inner]
        atoms = sorted(set([tuple([p[i] for i in identity_slots]) for p in patterns]), key = lambda a: [spec.alphabet.index(x) for x in a])
        self.atoms = atoms
        atom_index = dict((a, i) for i, a in enumerate(atoms))

        self.translations = list(translations)
        self.images = {}

        for gamma in self.translations:
            slots = [position[group.multiply(gamma, l)] for l in self.inner]
            members = np.array([atom_index[tuple([p[i] for i in slots])] for p in patterns], dtype = np.int64)
            for a in range(len(atoms)):
                mask = np.packbits(members == a, bitorder = 'little')
                self.images[(a, gamma)] = int.from_bytes(mask.tobytes(), 'little')

    def image(self, a, gamma):
        return self.images[(a, gamma)]


def _verifyChoice(images, mode, choice):
    '''
    Check a full choice [(family, γ)] per atom. Returns the number of uncovered patterns, or None if invalid.
    '''

    used = [0, 0]
    for a, (family, gamma) in enumerate(choice):
        img = images.image(a, gamma)
        if used[family] & img:
            return None
        used[family] |= img

    if mode == 'compression':
        missing = images.full & ~used[0]
        return bin(missing).count('1') if missing else None

    return 0 if used[0] == images.full and used[1] == images.full else None


def clopenParadoxSearch(spec, d, translations, mode, seed = None, cap = None, search_cap = None, verbose = False):
    '''
    Bounded search for a compression or paradoxical decomposition with pieces that are unions of depth-d cylinders.

    Atoms are the ball(d) restrictions of admissible ball(D) patterns, D = d + max|γ|. Images γ·[a] are exact unions of depth-D cylinders, so the decomposition is checked exactly on the admissible depth-D patterns.

    Args:
        spec: A SubshiftSpec.
        d: Atom depth.
        translations: List of group elements.
        mode: 'compression' or 'paradox'.
        seed: Optional dictionary (or function) atom pattern -> translation (compression) or -> (family, translation) (paradox), verified before searching.
        cap: Pattern cap. Defaults to the configured pattern_cap.
        search_cap: Node budget. Defaults to the configured search_cap.
        verbose: Set True to print progress.

    Returns:
        A ClopenDecomposition, or NotFound (inconclusive).
    '''

    assert mode in ['compression', 'paradox'], "mode must be 'compression' or 'paradox'."
    assert len(translations) > 0, "At least one translation is required."

    cap = shiftcert.core.resolveCap('pattern_cap', cap)
    search_cap = shiftcert.core.resolveCap('search_cap', search_cap)

    images = _AtomImages(spec, d, translations, cap)
    atoms = images.atoms

    if verbose: print('%s atoms at depth %s, %s patterns at depth %s'%(str(len(atoms)), str(d), str(images.n_patterns), str(images.D)))

    if images.n_patterns == 0:
        return NotFound('no admissible patterns at depth %s'%str(images.D), radius = images.D)

    def _result(choice, uncovered):
        pieces = [(a, family, gamma) for a, (family, gamma) in enumerate(choice)]
        return ClopenDecomposition(mode, d, images.D, atoms, pieces, uncovered, translations)

    if seed is not None:
        choice = []
        for a in atoms:
            value = seed(a) if callable(seed) else seed[a]
            choice.append((0, value) if mode == 'compression' else tuple(value))
        uncovered = _verifyChoice(images, mode, choice)
        if uncovered is not None:
            if verbose: print('Seed decomposition verified')
            return _result(choice, uncovered)
        print('WARNING: Seed decomposition failed verification, searching.')

    families = [0] if mode == 'compression' else [0, 1]
    options = [(f, gamma) for f in families for gamma in images.translations]

    n = len(atoms)
    choice = [-1] * n
    used = [[0, 0] for i in range(n + 1)]
    nodes = 0
    i = 0

    while i >= 0:

        choice[i] += 1
        if choice[i] >= len(options):
            choice[i] = -1
            i -= 1
            continue

        nodes += 1
        if nodes > search_cap:
            return NotFound('search budget of %s nodes exhausted'%str(search_cap), radius = images.D)

        family, gamma = options[choice[i]]
        img = images.image(i, gamma)
        if used[i][family] & img:
            continue

        used[i + 1] = list(used[i])
        used[i + 1][family] |= img

        if i < n - 1:
            i += 1
            continue

        full_choice = [options[c] for c in choice]
        uncovered = _verifyChoice(images, mode, full_choice)
        if uncovered is not None:
            if verbose: print('Decomposition found after %s nodes'%str(nodes))
            return _result(full_choice, uncovered)

    return NotFound('no decomposition at depth %s (exhaustive)'%str(d), radius = images.D)


def xtSplitSeed(spec, d):
    '''
    Compression seed for an X_T spec: on the atom where t is the lesser (in T order) of the two t with x_{t⁻¹} = t, translate by t.

    Args:
        spec: A spec built by xtSpec.
        d: Atom depth; ball(d) must contain T⁻¹.

    Returns:
        Function from atom patterns (aligned with ball(d)) to translations.
    '''

    group = spec.group
    T = spec.alphabet
    inner = shiftcert.groups.ball(group, None, d)

    for t in T:
        assert group.invert(t) in inner, "Atom depth %s does not cover T⁻¹."%str(d)

    slots = [inner.index[group.invert(t)] for t in T]

    def _seed(atom):
        hits = [t for t, i in zip(T, slots) if atom[i] == t]
        assert len(hits) == 2, "Atom %s is not admissible for X_T."%str(atom)
        return hits[0]

    return _seed
