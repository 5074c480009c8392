
import re

import shiftcert.core
from shiftcert.core import ResourceLimitError

### Canonical-form arithmetic and ball enumeration for the built-in group families

_SUPERSCRIPTS = {'⁰':'0', '¹':'1', '²':'2', '³':'3', '⁴':'4', '⁵':'5', '⁶':'6', '⁷':'7', '⁸':'8', '⁹':'9', '⁻':'-'}

##########################
### Group base class   ###
##########################

class Group(object):
    '''
    Base class for finitely generated groups given by canonical forms and arithmetic oracles.

    Subclasses set self.family, self.params, self.descriptor, self.identity and self.symbols (an ordered list of (symbol, element) pairs of standard generators), and implement multiply, invert, key, wordLength, format and _parseCanonical.
    '''

    def __eq__(self, other):
        return isinstance(other, Group) and self.descriptor == other.descriptor

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return 'Group(%s)'%self.descriptor

    def isIdentity(self, g):
        return g == self.identity

    def power(self, g, n):
        '''
        g to the power n, by repeated squaring.
        '''

        if n < 0:
            g, n = self.invert(g), -n

        out = self.identity
        while n:
            if n & 1: out = self.multiply(out, g)
            g = self.multiply(g, g)
            n >>= 1

        return out

    def sortKey(self, g):
        '''
        Deterministic total order on elements: word length w.r.t. the standard generators, then canonical form.
        '''

        return (self.wordLength(g), self.key(g))

    def sort(self, elements):
        '''
        Return a list of elements sorted by sortKey.
        '''

        return sorted(elements, key = self.sortKey)

    def generators(self):
        '''
        Standard symmetric generators in their fixed order, excluding the identity.
        '''

        return [g for s, g in self.symbols]

    def generatingSet(self, identity = True):
        '''
        The standard symmetric generating set, optionally with the identity first (this equals ball(1)).
        '''

        out = [self.identity] if identity else []
        for g in self.generators():
            if g not in out: out.append(g)

        return out

    def symbolTable(self):
        return dict(self.symbols)

    def evaluate(self, expr):
        '''
        Evaluate a word over the generator symbols, e.g. 'ab⁻¹a', 't f t^-1', '(ab)^3'.

        Args:
            expr: String expression. Juxtaposition is multiplication; powers are written '^n' or as superscripts; 'e' is the identity unless it is a generator symbol.

        Returns:
            The canonical form of the product.
        '''

        tokens = _tokenize(expr)
        value, pos = _parseProduct(self, tokens, 0)

        if pos != len(tokens):
            raise ValueError("Unexpected token '%s' in expression '%s'."%(str(tokens[pos][1]), expr))

        return value

    def parse(self, text):
        '''
        Parse an element string: the family's canonical format, or any generator expression.
        '''

        text = text.strip()

        value = self._parseCanonical(text)
        if value is not None:
            return value

        return self.evaluate(text)

    def folnerSet(self, N):
        '''
        Member N of the family of finite sets searched for Følner certificates. Defaults to the standard ball of radius N.
        '''

        return ball(self, None, N).elements

    def _parseCanonical(self, text):
        return None


##########################
### Built-in families  ###
##########################

class FreeAbelianGroup(Group):
    '''
    The free abelian group ℤ^d. Elements are integer tuples of length d.
    '''

    def __init__(self, d):
        '''
        Args:
            d: Rank, an integer ≥ 1.
        '''

        assert type(d) == int and d >= 1, "Rank of a free abelian group must be an integer ≥ 1."

        self.d = d
        self.family = 'free-abelian'
        self.params = {'d': d}
        self.descriptor = 'Z' if d == 1 else 'Z^%s'%str(d)
        self.identity = tuple([0] * d)

        names = ['x', 'y', 'z', 'w'] if d <= 4 else ['x%s'%str(i + 1) for i in range(d)]

        self.symbols = []
        for i in range(d):
            unit = tuple([1 if j == i else 0 for j in range(d)])
            self.symbols.append((names[i], unit))
            self.symbols.append((names[i] + '⁻¹', self.invert(unit)))

        self.names = names[:d]

    def multiply(self, g, h):
        return tuple([a + b for a, b in zip(g, h)])

    def invert(self, g):
        return tuple([-a for a in g])

    def key(self, g):
        return g

    def wordLength(self, g):
        return sum([abs(a) for a in g])

    def format(self, g):
        return '(%s)'%','.join([str(a) for a in g])

    def _parseCanonical(self, text):

        if re.match(r'^\(\s*-?\d+(\s*,\s*-?\d+)*\s*\)$', text):
            values = tuple([int(v) for v in text[1:-1].split(',')])
        elif self.d == 1 and re.match(r'^-?\d+$', text):
            values = (int(text),)
        else:
            return None

        if len(values) != self.d:
            raise ValueError("Element '%s' does not have %s coordinates."%(text, str(self.d)))

        return values


class FreeGroup(Group):
    '''
    The free group on k generators. Elements are reduced words, stored as tuples of nonzero integers (i for the i-th letter, -i for its inverse).
    '''

    def __init__(self, k):
        '''
        Args:
            k: Number of free generators, 1 ≤ k ≤ 25.
        '''

        assert type(k) == int and 1 <= k <= 25, "Free groups are supported on 1 to 25 generators."

        self.k = k
        self.family = 'free'
        self.params = {'k': k}
        self.descriptor = 'F%s'%str(k)
        self.identity = ()

        # 'e' is reserved for the identity
        self.letters = [l for l in 'abcdfghijklmnopqrstuvwxyz'][:k]

        self.symbols = []
        for i in range(k):
            self.symbols.append((self.letters[i], (i + 1,)))
            self.symbols.append((self.letters[i] + '⁻¹', (-(i + 1),)))

    def multiply(self, g, h):

        g = list(g)
        i = 0
        while i < len(h) and len(g) > 0 and g[-1] == -h[i]:
            g.pop()
            i += 1

        return tuple(g) + tuple(h[i:])

    def invert(self, g):
        return tuple([-a for a in reversed(g)])

    def letterCode(self, a):
        '''
        Position of a letter in the order a < a⁻¹ < b < b⁻¹ < ...
        '''

        return 2 * (abs(a) - 1) + (1 if a < 0 else 0)

    def key(self, g):
        return tuple([self.letterCode(a) for a in g])

    def wordLength(self, g):
        return len(g)

    def format(self, g):

        if len(g) == 0:
            return 'e'

        return ''.join([self.letters[abs(a) - 1] + ('⁻¹' if a < 0 else '') for a in g])

    def firstLetter(self, g):
        return g[0] if len(g) > 0 else None

    def lastLetter(self, g):
        return g[-1] if len(g) > 0 else None


class LamplighterGroup(Group):
    '''
    The lamplighter group ℤ/2 ≀ ℤ. Elements are pairs (lit lamps as a frozenset of integers, cursor position).

    Generators: t moves the cursor by +1, f toggles the lamp under the cursor.
    '''

    def __init__(self):

        self.family = 'lamplighter'
        self.params = {}
        self.descriptor = 'L'
        self.identity = (frozenset(), 0)

        t = (frozenset(), 1)
        self.symbols = [('t', t), ('t⁻¹', self.invert(t)), ('f', (frozenset([0]), 0))]

    def multiply(self, g, h):
        (A, p), (B, q) = g, h
        return (A.symmetric_difference([b + p for b in B]), p + q)

    def invert(self, g):
        A, p = g
        return (frozenset([a - p for a in A]), -p)

    def key(self, g):
        A, p = g
        return (p, tuple(sorted(A)))

    def wordLength(self, g):
        '''
        Lamps plus the shortest cursor tour from 0 visiting every lit lamp and ending at the cursor.
        '''

        A, p = g
        points = list(A) + [0, p]
        m, M = min(points), max(points)

        return len(A) + 2 * (M - m) - abs(p)

    def format(self, g):
        A, p = g
        return '({%s};%s)'%(','.join([str(a) for a in sorted(A)]), str(p))

    def _parseCanonical(self, text):

        match = re.match(r'^\(\{([-\d,\s]*)\};\s*(-?\d+)\)$', text)
        if match is None:
            return None

        lamps = [int(a) for a in match.group(1).split(',') if a.strip() != '']
        assert len(set(lamps)) == len(lamps), "Repeated lamp in '%s'."%text

        return (frozenset(lamps), int(match.group(2)))

    def folnerSet(self, N):
        '''
        The rectangle {lamps ⊆ [−N,N], cursor ∈ [−N,N]}, of size (2N+1)·2^(2N+1).
        '''

        assert N >= 0, "Rectangle half-width must be non-negative."

        width = 2 * N + 1
        cap = shiftcert.core.resolveCap('ball_cap')
        if width * 2 ** width > cap:
            raise ResourceLimitError('Lamplighter rectangle of half-width %s exceeds the ball cap (%s).'%(str(N), str(cap)))

        out = []
        for p in range(-N, N + 1):
            for mask in range(2 ** width):
                lamps = frozenset([i - N for i in range(width) if (mask >> i) & 1])
                out.append((lamps, p))

        return self.sort(out)


class CyclicGroup(Group):
    '''
    The cyclic group ℤ/m. Elements are integers 0 ≤ a < m.
    '''

    def __init__(self, m):
        '''
        Args:
            m: Order of the group, an integer ≥ 1.
        '''

        assert type(m) == int and m >= 1, "Order of a cyclic group must be an integer ≥ 1."

        self.m = m
        self.family = 'cyclic'
        self.params = {'m': m}
        self.descriptor = 'C%s'%str(m)
        self.identity = 0

        self.symbols = []
        if m > 1: self.symbols.append(('c', 1))
        if m > 2: self.symbols.append(('c⁻¹', m - 1))

    def multiply(self, g, h):
        return (g + h) % self.m

    def invert(self, g):
        return (-g) % self.m

    def key(self, g):
        return g

    def wordLength(self, g):
        return min(g, self.m - g)

    def format(self, g):
        return str(g)

    def _parseCanonical(self, text):

        if re.match(r'^-?\d+$', text):
            return int(text) % self.m

        return None


def _renameSymbols(taken, symbols):
    '''
    Append primes to symbols that clash with those already taken.
    '''

    out = []
    for s, g in symbols:
        base = s.replace('⁻¹', '')
        inverse = s.endswith('⁻¹')
        while base in taken:
            base = base + "'"
        out.append((base + ('⁻¹' if inverse else ''), g))

    return out


class DirectProduct(Group):
    '''
    Direct product G × H. Elements are pairs (g, h).
    '''

    def __init__(self, G, H):
        '''
        Args:
            G: First factor (a Group).
            H: Second factor (a Group).
        '''

        assert isinstance(G, Group) and isinstance(H, Group), "Direct product factors must be Group objects."

        self.factors = (G, H)
        self.family = 'direct-product'
        self.params = {'left': G.descriptor, 'right': H.descriptor}
        self.descriptor = '(%s)x(%s)'%(G.descriptor, H.descriptor)
        self.identity = (G.identity, H.identity)

        left = [(s, (g, H.identity)) for s, g in G.symbols]
        taken = set([s.replace('⁻¹', '') for s, g in left])
        right = _renameSymbols(taken, [(s, (G.identity, h)) for s, h in H.symbols])

        self.symbols = left + right

    def multiply(self, g, h):
        G, H = self.factors
        return (G.multiply(g[0], h[0]), H.multiply(g[1], h[1]))

    def invert(self, g):
        G, H = self.factors
        return (G.invert(g[0]), H.invert(g[1]))

    def key(self, g):
        G, H = self.factors
        return (G.sortKey(g[0]), H.sortKey(g[1]))

    def wordLength(self, g):
        G, H = self.factors
        return G.wordLength(g[0]) + H.wordLength(g[1])

    def format(self, g):
        G, H = self.factors
        return '<%s|%s>'%(G.format(g[0]), H.format(g[1]))

    def _parseCanonical(self, text):

        if not (text.startswith('<') and text.endswith('>')):
            return None

        parts = _splitTopLevel(text[1:-1], '|')
        if len(parts) != 2:
            raise ValueError("Direct product element '%s' must have the form <g|h>."%text)

        G, H = self.factors
        return (G.parse(parts[0]), H.parse(parts[1]))

    def folnerSet(self, N):
        G, H = self.factors
        return self.sort([(g, h) for g in G.folnerSet(N) for h in H.folnerSet(N)])


class FreeProduct(Group):
    '''
    Free product G * H. Elements are alternating tuples of syllables (side, factor element), side 0 or 1, no syllable trivial.
    '''

    def __init__(self, G, H):
        '''
        Args:
            G: First factor (a Group).
            H: Second factor (a Group).
        '''

        assert isinstance(G, Group) and isinstance(H, Group), "Free product factors must be Group objects."

        self.factors = (G, H)
        self.family = 'free-product'
        self.params = {'left': G.descriptor, 'right': H.descriptor}
        self.descriptor = '(%s)*(%s)'%(G.descriptor, H.descriptor)
        self.identity = ()

        left = [(s, ((0, g),)) for s, g in G.symbols]
        taken = set([s.replace('⁻¹', '') for s, g in left])
        right = _renameSymbols(taken, [(s, ((1, h),)) for s, h in H.symbols])

        self.symbols = left + right

    def multiply(self, g, h):

        out = list(g)
        for side, x in h:
            if len(out) > 0 and out[-1][0] == side:
                y = self.factors[side].multiply(out[-1][1], x)
                out.pop()
                if y != self.factors[side].identity:
                    out.append((side, y))
            else:
                out.append((side, x))

        return tuple(out)

    def invert(self, g):
        return tuple([(side, self.factors[side].invert(x)) for side, x in reversed(g)])

    def key(self, g):
        return tuple([(side, self.factors[side].sortKey(x)) for side, x in g])

    def wordLength(self, g):
        return sum([self.factors[side].wordLength(x) for side, x in g])

    def format(self, g):

        if len(g) == 0:
            return 'e'

        return ''.join(['[%s:%s]'%(str(side + 1), self.factors[side].format(x)) for side, x in g])

    def _parseCanonical(self, text):

        if not text.startswith('['):
            return None

        out = self.identity
        for piece in _splitBrackets(text):
            side, sep, body = piece.partition(':')
            if sep == '' or side.strip() not in ('1', '2'):
                raise ValueError("Free product syllable '[%s]' must have the form [1:g] or [2:h]."%piece)
            side = int(side) - 1
            x = self.factors[side].parse(body)
            if x != self.factors[side].identity:
                out = self.multiply(out, ((side, x),))

        return out


###############################
### Expression parsing      ###
###############################

def _splitTopLevel(text, sep):
    '''
    Split text at sep, ignoring separators nested inside brackets.
    '''

    parts, depth, current = [], 0, ''
    for ch in text:
        if ch in '<([{': depth += 1
        if ch in '>)]}': depth -= 1
        if ch == sep and depth == 0:
            parts.append(current)
            current = ''
        else:
            current += ch
    parts.append(current)

    return parts


def _splitBrackets(text):
    '''
    Split '[..][..]' into the bodies of its top-level bracket groups.
    '''

    out, depth, current = [], 0, ''
    for ch in text.strip():
        if ch == '[':
            if depth > 0: current += ch
            depth += 1
        elif ch == ']':
            depth -= 1
            if depth > 0:
                current += ch
            else:
                out.append(current)
                current = ''
        elif depth > 0:
            current += ch
        elif not ch.isspace():
            raise ValueError("Unexpected character '%s' outside brackets in '%s'."%(ch, text))

    if depth != 0:
        raise ValueError("Unbalanced brackets in '%s'."%text)

    return out


def _tokenize(expr):
    '''
    Split a generator expression into symbol, bracket and power tokens.
    '''

    tokens = []
    i = 0
    while i < len(expr):
        ch = expr[i]

        if ch.isspace() or ch in '·.*':
            i += 1

        elif ch in '()':
            tokens.append((ch, ch))
            i += 1

        elif ch == '^':
            match = re.match(r'\^\s*([+-]?\d+)', expr[i:])
            if match is None:
                raise ValueError("Malformed power in expression '%s'."%expr)
            tokens.append(('pow', int(match.group(1))))
            i += len(match.group(0))

        elif ch in _SUPERSCRIPTS:
            j = i
            while j < len(expr) and expr[j] in _SUPERSCRIPTS:
                j += 1
            digits = ''.join([_SUPERSCRIPTS[c] for c in expr[i:j]])
            if digits == '-':
                digits = '-1'
            tokens.append(('pow', int(digits)))
            i = j

        elif ch.isalpha():
            j = i + 1
            while j < len(expr) and (expr[j] in "0123456789'′"):
                j += 1
            tokens.append(('sym', expr[i:j].replace('′', "'")))
            i = j

        elif ch == '1' and (i + 1 == len(expr) or not expr[i + 1].isdigit()):
            tokens.append(('sym', 'e'))
            i += 1

        else:
            raise ValueError("Unexpected character '%s' in expression '%s'."%(ch, expr))

    return tokens


def _parseProduct(group, tokens, pos):

    value = group.identity
    while pos < len(tokens) and tokens[pos][0] != ')':
        factor, pos = _parseFactor(group, tokens, pos)
        value = group.multiply(value, factor)

    return value, pos


def _parseFactor(group, tokens, pos):

    kind, text = tokens[pos]

    if kind == 'sym':
        table = group.symbolTable()
        if text in table:
            value = table[text]
        elif text == 'e':
            value = group.identity
        else:
            raise ValueError("Unknown generator symbol '%s' for group %s. Known symbols: %s."%(text, group.descriptor, ', '.join([s for s, g in group.symbols if not s.endswith('⁻¹')])))
        pos += 1

    elif kind == '(':
        value, pos = _parseProduct(group, tokens, pos + 1)
        if pos >= len(tokens) or tokens[pos][0] != ')':
            raise ValueError("Unbalanced parentheses in expression.")
        pos += 1

    elif kind == 'pow':
        raise ValueError("Power with no base in expression.")

    else:
        raise ValueError("Unexpected ')' in expression.")

    while pos < len(tokens) and tokens[pos][0] == 'pow':
        value = group.power(value, tokens[pos][1])
        pos += 1

    return value, pos


def evaluate(group, expr):
    '''
    Evaluate a word over the generators of group and its inverses.

    Args:
        group: A Group.
        expr: Expression string, e.g. 'ab⁻¹a' or 't f t^-1'.

    Returns:
        The canonical form of the product. Raises ValueError on unknown symbols.
    '''

    return group.evaluate(expr)


def parseGroup(text):
    '''
    Build a group from a descriptor string: 'Z', 'Z^d' (or 'Zd'), 'Fk', 'L', 'Cm', '(A)x(B)' or '(A)*(B)'.

    Args:
        text: Group descriptor.

    Returns:
        A Group object. Raises ValueError for unsupported descriptors.
    '''

    text = text.strip()

    if text.startswith('('):
        depth = 0
        for i, ch in enumerate(text):
            if ch == '(': depth += 1
            if ch == ')': depth -= 1
            if depth == 0: break

        if depth != 0:
            raise ValueError("Unbalanced parentheses in group descriptor '%s'."%text)

        rest = text[i + 1:].strip()

        # Redundant outer parentheses
        if rest == '':
            return parseGroup(text[1:-1])

        right = rest[1:].strip()
        if rest[0] not in 'x*' or not (right.startswith('(') and right.endswith(')')):
            raise ValueError("Malformed product descriptor '%s'. Use '(A)x(B)' or '(A)*(B)'."%text)

        G = parseGroup(text[1:i])
        H = parseGroup(right[1:-1])

        return DirectProduct(G, H) if rest[0] == 'x' else FreeProduct(G, H)

    match = re.match(r'^Z(?:\^?(\d+))?$', text)
    if match:
        return FreeAbelianGroup(int(match.group(1)) if match.group(1) else 1)

    match = re.match(r'^F(\d+)$', text)
    if match:
        return FreeGroup(int(match.group(1)))

    match = re.match(r'^C(\d+)$', text)
    if match:
        return CyclicGroup(int(match.group(1)))

    if text in ('L', 'lamplighter'):
        return LamplighterGroup()

    raise ValueError("Unsupported group descriptor '%s'. Built-in families are Z^d, Fk, L, Cm and their direct ('x') and free ('*') products."%text)


#################################
### Balls and set arithmetic  ###
#################################

class Ball(object):
    '''
    The elements of S-word length ≤ radius, in shortlex order of their least geodesic words.
    '''

    def __init__(self, group, S, radius, elements, lengths):
        '''
        Args:
            group: The Group enumerated.
            S: The generating set used, as an ordered list.
            radius: Ball radius.
            elements: Ordered list of elements.
            lengths: Dictionary of element to S-word length.
        '''

        self.group = group
        self.S = tuple(S)
        self.radius = radius
        self.elements = elements
        self.lengths = lengths
        self.index = dict((g, i) for i, g in enumerate(elements))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.index

    def sphere(self, k):
        '''
        Elements at S-distance exactly k.
        '''

        return [g for g in self.elements if self.lengths[g] == k]

    def elementSet(self):
        return frozenset(self.elements)


_ball_cache = {}

def _checkSymmetric(group, S):

    S_set = set(S)
    for s in S:
        assert group.invert(s) in S_set, "Generating set is not symmetric: the inverse of %s is missing."%group.format(s)


def ball(group, S, r, cap = None, verbose = False):
    '''
    Enumerate the ball of radius r in the Cayley graph of group w.r.t. S, breadth first.

    Args:
        group: A Group.
        S: Symmetric list of elements, in the order defining shortlex. Set None to use the standard generators.
        r: Radius, ≥ 0.
        cap: Maximum number of elements. Defaults to the configured ball_cap.
        verbose: Set True to print layer sizes.

    Returns:
        A Ball object.
    '''

    assert r >= 0, "Ball radius must be non-negative."

    cap = shiftcert.core.resolveCap('ball_cap', cap)

    if S is None:
        S = group.generators()
    S = [s for s in S if s != group.identity]
    _checkSymmetric(group, S)

    cache_key = (group.descriptor, tuple(S), r)
    if cache_key in _ball_cache:
        return _ball_cache[cache_key]

    elements = [group.identity]
    lengths = {group.identity: 0}
    layer = [group.identity]

    for k in range(1, r + 1):
        next_layer = []
        for g in layer:
            for s in S:
                h = group.multiply(g, s)
                if h not in lengths:
                    lengths[h] = k
                    next_layer.append(h)
        elements.extend(next_layer)

        if len(elements) > cap:
            raise ResourceLimitError('Ball of radius %s in %s exceeds the cap of %s elements.'%(str(r), group.descriptor, str(cap)))

        if verbose: print('Radius %s: %s new elements, %s in total'%(str(k), str(len(next_layer)), str(len(elements))))

        if len(next_layer) == 0:
            break
        layer = next_layer

    out = Ball(group, S, r, elements, lengths)

    if len(_ball_cache) > 32: _ball_cache.clear()
    _ball_cache[cache_key] = out

    return out


def setProduct(group, F, S):
    '''
    The product set F·S = {f·s : f ∈ F, s ∈ S}.
    '''

    return set([group.multiply(f, s) for f in F for s in S])


def sphereSizes(B):
    '''
    Number of elements at each distance 0..radius of a Ball.
    '''

    sizes = [0] * (B.radius + 1)
    for g in B.elements:
        sizes[B.lengths[g]] += 1

    return sizes


def freeBallSize(k, r):
    '''
    Closed-form size of the radius r ball of the free group on k generators.
    '''

    if r == 0:
        return 1
    if k == 1:
        return 2 * r + 1

    return 2 * k * ((2 * k - 1) ** r - 1) // (2 * k - 2) + 1


def shortlexRank(group, g, cap = None):
    '''
    Position of g among all elements of group in shortlex order. Closed form for free groups, ball enumeration otherwise.
    '''

    if isinstance(group, FreeGroup):

        L = len(g)
        rank = freeBallSize(group.k, L - 1) if L > 0 else 0
        n_letters = 2 * group.k

        for i, a in enumerate(g):
            code = group.letterCode(a)
            smaller = code
            if i > 0:
                forbidden = group.letterCode(-g[i - 1])
                if forbidden < code:
                    smaller -= 1
            rank += smaller * (n_letters - 1) ** (L - 1 - i)

        return rank

    B = ball(group, None, group.wordLength(g), cap = cap)

    return B.index[g]


def shortlexUnrank(group, rank):
    '''
    Inverse of shortlexRank for free groups.
    '''

    assert isinstance(group, FreeGroup), "Unranking is only available for free groups."
    assert rank >= 0, "Rank must be non-negative."

    L = 0
    while freeBallSize(group.k, L) <= rank:
        L += 1

    rank -= freeBallSize(group.k, L - 1) if L > 0 else 0
    order = sorted([a for i in range(1, group.k + 1) for a in (i, -i)], key = group.letterCode)

    word = []
    for i in range(L):
        block = (2 * group.k - 1) ** (L - 1 - i)
        choices = [a for a in order if not (len(word) > 0 and a == -word[-1])]
        word.append(choices[rank // block])
        rank = rank % block

    return tuple(word)

