
import itertools
import numpy as np
import scipy.sparse
from scipy.sparse.csgraph import maximum_bipartite_matching

from shiftcert.core import VerificationError

### Bipartite matching and k-to-1 surjections


####################################
### Class describing the graph   ###
####################################

class BipartiteGraph(object):
    '''
    A simple bipartite graph with ordered vertex lists. Vertex order fixes every deterministic choice made by the matching functions.
    '''

    def __init__(self, left, right, adjacency):
        '''
        Args:
            left: List of left vertices (hashable, duplicate-free).
            right: List of right vertices (hashable, duplicate-free).
            adjacency: Dictionary mapping left vertices to an iterable of right vertices. Repeated edges are collapsed.
        '''

        self.left = self.__getVertices(left, 'left')
        self.right = self.__getVertices(right, 'right')

        self.left_index = dict((v, i) for i, v in enumerate(self.left))
        self.right_index = dict((v, i) for i, v in enumerate(self.right))

        self.adjacency = self.__getAdjacency(adjacency)

    def __getVertices(self, vertices, side):
        '''
        '''

        vertices = list(vertices)
        assert len(set(vertices)) == len(vertices), "The %s vertex list contains duplicates."%side

        return vertices

    def __getAdjacency(self, adjacency):
        '''
        '''

        out = {}
        for v in self.left:
            out[v] = []

        for v, neighbours in adjacency.items():
            assert v in self.left_index, "Adjacency refers to undeclared left vertex %s."%str(v)
            neighbours = set(neighbours)
            for w in neighbours:
                assert w in self.right_index, "Adjacency refers to undeclared right vertex %s."%str(w)
            out[v] = sorted(neighbours, key = lambda w: self.right_index[w])

        return out

    def edges(self):
        '''
        All (left, right) edges, in vertex order.
        '''

        return [(v, w) for v in self.left for w in self.adjacency[v]]

    def leftNeighbours(self, right_vertices):
        '''
        Left vertices adjacent to any of right_vertices.
        '''

        right_vertices = set(right_vertices)

        return [v for v in self.left if any([w in right_vertices for w in self.adjacency[v]])]

    def rightNeighbours(self, left_vertices):
        '''
        Right vertices adjacent to any of left_vertices.
        '''

        out = set()
        for v in left_vertices:
            out.update(self.adjacency[v])

        return [w for w in self.right if w in out]

    def biadjacency(self, k = 1, extra = None):
        '''
        Sparse biadjacency matrix with each right vertex cloned k times (column i*k + j is clone j of right vertex i).

        Args:
            k: Number of clones per right vertex.
            extra: Optional dictionary of left vertex to a list of extra column indices (appended after the clones).

        Returns:
            A scipy.sparse.csr_matrix with one row per left vertex.
        '''

        rows, cols = [], []
        for i, v in enumerate(self.left):
            for w in self.adjacency[v]:
                j = self.right_index[w]
                for c in range(k):
                    rows.append(i)
                    cols.append(j * k + c)
            if extra is not None and v in extra:
                for c in extra[v]:
                    rows.append(i)
                    cols.append(c)

        n_cols = k * len(self.right)
        if extra is not None:
            n_cols += max([0] + [c - n_cols + 1 for cs in extra.values() for c in cs])

        rows = np.array(rows, dtype = np.int64)
        cols = np.array(cols, dtype = np.int64)
        data = np.ones(rows.shape[0], dtype = np.int8)

        return scipy.sparse.csr_matrix((data, (rows, cols)), shape = (len(self.left), n_cols))


###########################
### Matching outcomes   ###
###########################

class KToOneAssignment(object):
    '''
    A k-to-1 surjection from a domain D ⊆ left onto the right side, with p(v) adjacent to v.
    '''

    def __init__(self, graph, k, assignment, clones):
        '''
        Args:
            graph: The BipartiteGraph.
            k: Number of preimages of each right vertex.
            assignment: Dictionary of left vertex to right vertex.
            clones: Dictionary of left vertex to clone index (0..k-1) it was matched through.
        '''

        self.graph = graph
        self.k = k
        self.assignment = assignment
        self.clones = clones

    def __bool__(self):
        return True

    def domain(self):
        '''
        Left vertices in the domain D, in vertex order.
        '''

        return [v for v in self.graph.left if v in self.assignment]

    def isTotal(self):
        return len(self.assignment) == len(self.graph.left)

    def matchings(self):
        '''
        The k disjoint matchings making up the assignment, each saturating the right side.
        '''

        out = [dict() for c in range(self.k)]
        for v in self.domain():
            out[self.clones[v]][v] = self.assignment[v]

        return out

    def preimageCounts(self):
        '''
        Number of preimages of each right vertex, as a numpy array in right vertex order.
        '''

        idx = np.array([self.graph.right_index[w] for w in self.assignment.values()], dtype = np.int64)

        return np.bincount(idx, minlength = len(self.graph.right))

    def verify(self):
        '''
        Recheck adjacency and preimage counts. Raises VerificationError on failure.
        '''

        for v, w in self.assignment.items():
            if w not in self.graph.adjacency.get(v, []):
                raise VerificationError('Assigned vertex %s is not adjacent to %s.'%(str(w), str(v)), point = v)

        counts = self.preimageCounts()
        for i in np.nonzero(counts != self.k)[0]:
            w = self.graph.right[i]
            raise VerificationError('Right vertex %s has %s preimages, expected %s.'%(str(w), str(counts[i]), str(self.k)), point = w)

        return True


class HallViolator(object):
    '''
    Evidence that no k-to-1 surjection exists. Falsy.

    side = 'right': a set F of right vertices with |N(F)| < k|F|.
    side = 'left': a set of left vertices, containing required vertices, that cannot all be assigned.
    '''

    outcome = 'inconclusive'

    def __init__(self, side, vertices, neighbours, k, required = None):
        '''
        Args:
            side: 'right' or 'left'.
            vertices: The deficient vertex set, as a list.
            neighbours: Its neighbourhood on the other side, as a list.
            k: Multiplicity requested.
            required: For side 'left', the required left vertices within the set.
        '''

        assert side in ['right', 'left'], "Violator side must be 'right' or 'left'."

        self.side = side
        self.vertices = vertices
        self.neighbours = neighbours
        self.k = k
        self.required = required if required is not None else []

    def __bool__(self):
        return False

    def __repr__(self):
        return 'HallViolator(side=%s, |F|=%s, |N(F)|=%s, k=%s)'%(self.side, str(len(self.vertices)), str(len(self.neighbours)), str(self.k))

    def deficiency(self):
        '''
        k|F| − |N(F)| for a right-side violator.
        '''

        if self.side == 'right':
            return self.k * len(self.vertices) - len(self.neighbours)

        return len(self.vertices) - len(self.neighbours)


###############################
### Matching functions      ###
###############################

def _matchRows(matrix):
    '''
    Maximum matching of rows into columns. Returns (column of each row, row of each column), -1 where unmatched.
    '''

    n_rows, n_cols = matrix.shape

    if n_rows == 0 or n_cols == 0 or matrix.nnz == 0:
        return np.full(n_rows, -1, dtype = np.int64), np.full(n_cols, -1, dtype = np.int64)

    row_match = np.asarray(maximum_bipartite_matching(matrix, perm_type = 'column'), dtype = np.int64)

    col_match = np.full(n_cols, -1, dtype = np.int64)
    matched = np.nonzero(row_match >= 0)[0]
    col_match[row_match[matched]] = matched

    return row_match, col_match


def maximumMatching(g):
    '''
    Maximum cardinality matching, computed with scipy's Hopcroft-Karp implementation.

    Args:
        g: A BipartiteGraph.

    Returns:
        Dictionary of matched left vertex to right vertex.
    '''

    row_match, col_match = _matchRows(g.biadjacency())

    return dict((g.left[i], g.right[row_match[i]]) for i in range(len(g.left)) if row_match[i] >= 0)


def _rightViolator(g, k, matrix, row_match, col_match):
    '''
    Alternating search from unmatched clones. The originals of reached clones form a Hall-deficient set.
    '''

    csc = matrix.tocsc()

    reached_cols = set([int(c) for c in np.nonzero(col_match < 0)[0]])
    reached_rows = set()
    frontier = list(reached_cols)

    while len(frontier) > 0:
        next_frontier = []
        for c in frontier:
            for r in csc.indices[csc.indptr[c]:csc.indptr[c + 1]]:
                r = int(r)
                if r in reached_rows:
                    continue
                reached_rows.add(r)
                c2 = int(row_match[r])
                if c2 >= 0 and c2 not in reached_cols:
                    reached_cols.add(c2)
                    next_frontier.append(c2)
        frontier = next_frontier

    F = sorted(set([c // k for c in reached_cols]))
    vertices = [g.right[j] for j in F]
    neighbours = g.leftNeighbours(vertices)

    assert len(neighbours) < k * len(vertices), "Internal error: alternating search did not produce a deficient set."

    return HallViolator('right', vertices, neighbours, k)


def hallViolator(g, k):
    '''
    Find a set F of right vertices with |N(F)| < k|F|.

    Args:
        g: A BipartiteGraph.
        k: Required multiplicity, ≥ 1.

    Returns:
        A HallViolator (side 'right'), or None if the k-fold Hall condition holds.
    '''

    assert k >= 1, "k must be at least 1."

    matrix = g.biadjacency(k = k)
    row_match, col_match = _matchRows(matrix)

    if np.all(col_match >= 0):
        return None

    return _rightViolator(g, k, matrix, row_match, col_match)


def kToOneSurjection(g, k, required = None, verbose = False):
    '''
    Find a k-to-1 surjection p from a subset D of the left side onto the right side, with p(v) adjacent to v.

    Each right vertex is cloned k times and a single maximum matching is computed. With required left vertices, |left| − k|right| dummy columns adjacent to the optional left vertices absorb the left vertices outside D and a perfect matching is sought.

    Args:
        g: A BipartiteGraph.
        k: Number of preimages of each right vertex, ≥ 1.
        required: Optional iterable of left vertices that must lie in D.
        verbose: Set True to print progress.

    Returns:
        A KToOneAssignment, or a HallViolator when none exists.
    '''

    assert k >= 1, "k must be at least 1."

    if verbose: print('Matching %s left vertices onto %s right vertices (k = %s)'%(str(len(g.left)), str(len(g.right)), str(k)))

    matrix = g.biadjacency(k = k)
    row_match, col_match = _matchRows(matrix)

    if not np.all(col_match >= 0):
        violator = _rightViolator(g, k, matrix, row_match, col_match)
        if verbose: print('No surjection: %s'%repr(violator))
        return violator

    if required is not None:
        required = set(required)
        for v in required:
            assert v in g.left_index, "Required vertex %s is not a left vertex."%str(v)

        n_clones = k * len(g.right)
        n_dummies = len(g.left) - n_clones
        extra = dict((v, list(range(n_clones, n_clones + n_dummies))) for v in g.left if v not in required)

        matrix = g.biadjacency(k = k, extra = extra)
        row_match, col_match = _matchRows(matrix)

        if not np.all(row_match >= 0):
            violator = _leftViolator(g, k, matrix, row_match, col_match, required)
            if verbose: print('No surjection covering the required vertices: %s'%repr(violator))
            return violator

    assignment, clones = {}, {}
    for i, v in enumerate(g.left):
        c = int(row_match[i])
        if 0 <= c < k * len(g.right):
            assignment[v] = g.right[c // k]
            clones[v] = c % k

    out = KToOneAssignment(g, k, assignment, clones)
    out.verify()

    if verbose: print('Found surjection with domain of %s vertices'%str(len(assignment)))

    return out


def _leftViolator(g, k, matrix, row_match, col_match, required):
    '''
    Alternating search from an unmatched left vertex in the graph with dummy columns.
    '''

    n_clones = k * len(g.right)

    start = int(np.nonzero(row_match < 0)[0][0])
    reached_rows = set([start])
    reached_cols = set()
    frontier = [start]

    while len(frontier) > 0:
        next_frontier = []
        for r in frontier:
            for c in matrix.indices[matrix.indptr[r]:matrix.indptr[r + 1]]:
                c = int(c)
                if c in reached_cols:
                    continue
                reached_cols.add(c)
                r2 = int(col_match[c])
                if r2 >= 0 and r2 not in reached_rows:
                    reached_rows.add(r2)
                    next_frontier.append(r2)
        frontier = next_frontier

    vertices = [g.left[i] for i in sorted(reached_rows)]
    neighbours = [g.right[j] for j in sorted(set([c // k for c in reached_cols if c < n_clones]))]

    return HallViolator('left', vertices, neighbours, k, required = [v for v in vertices if v in required])


def kToOneSurjectionExists(g, k):
    '''
    Exhaustive Hall condition check over all subsets of the right side. Used as an oracle for small graphs.
    '''

    for size in range(1, len(g.right) + 1):
        for F in itertools.combinations(g.right, size):
            if len(g.leftNeighbours(F)) < k * size:
                return False

    return True


def bruteForceAssignment(g, k, required = None):
    '''
    Exhaustive search for a k-to-1 surjection (first in vertex order). Used as an oracle for small graphs.

    Returns:
        Dictionary of left vertex to right vertex, or None.
    '''

    required = set(required) if required is not None else set()
    load = dict((w, 0) for w in g.right)
    assignment = {}
    n = len(g.left)

    def _search(i, remaining):

        # Remaining capacity must be reachable by the unassigned left vertices
        if remaining > n - i:
            return False
        if i == n:
            return remaining == 0

        v = g.left[i]
        for w in g.adjacency[v]:
            if load[w] < k:
                load[w] += 1
                assignment[v] = w
                if _search(i + 1, remaining - 1):
                    return True
                load[w] -= 1
                del assignment[v]

        if v not in required:
            return _search(i + 1, remaining)

        return False

    if _search(0, k * len(g.right)):
        return dict(assignment)

    return None
