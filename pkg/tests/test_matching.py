import numpy as np
import pytest

from shiftcert.core import VerificationError
from shiftcert.matching import BipartiteGraph, HallViolator, KToOneAssignment, bruteForceAssignment, hallViolator, kToOneSurjection, kToOneSurjectionExists, maximumMatching


def _randomGraph(rng, max_left = 8, max_right = 4, p = None):

    n_left = int(rng.integers(0, max_left + 1))
    n_right = int(rng.integers(1, max_right + 1))
    p = rng.uniform(0.2, 0.8) if p is None else p

    left = list(range(n_left))
    right = ['w%s'%str(j) for j in range(n_right)]
    adjacency = dict((v, [w for w in right if rng.random() < p]) for v in left)

    return BipartiteGraph(left, right, adjacency)


def test_two_to_one_small():

    g = BipartiteGraph([1, 2, 3, 4], ['a', 'b'], {1: ['a'], 2: ['a', 'b'], 3: ['b'], 4: ['a', 'b']})

    result = kToOneSurjection(g, 2)

    assert result
    assert result.isTotal()
    assert list(result.preimageCounts()) == [2, 2]
    assert result.verify()

    matchings = result.matchings()
    assert len(matchings) == 2
    for m in matchings:
        assert sorted(m.values()) == ['a', 'b']


def test_hall_violator_is_right_side():

    g = BipartiteGraph([1, 2, 3], ['a', 'b'], {1: ['a'], 2: ['a', 'b'], 3: ['a']})

    result = kToOneSurjection(g, 2)

    assert not result
    assert isinstance(result, HallViolator)
    assert result.side == 'right'
    assert result.vertices == ['b']
    assert result.neighbours == [2]
    assert result.deficiency() == 1


def test_hall_violator_function():

    g = BipartiteGraph([1, 2], ['a', 'b'], {1: ['a', 'b'], 2: ['a', 'b']})

    assert hallViolator(g, 1) is None

    violator = hallViolator(g, 2)
    assert len(violator.neighbours) < 2 * len(violator.vertices)


def test_required_vertices():

    # 3 can only reach b, and b is also needed by 1 and 2
    g = BipartiteGraph([1, 2, 3], ['b'], {1: ['b'], 2: ['b'], 3: ['b']})

    result = kToOneSurjection(g, 2, required = [3])
    assert result
    assert 3 in result.domain()
    assert len(result.domain()) == 2

    g = BipartiteGraph([1, 2, 3], ['a', 'b'], {1: ['a', 'b'], 2: ['a'], 3: ['a'], })
    assert kToOneSurjection(g, 1)

    g = BipartiteGraph([1, 2, 3, 4], ['a'], {1: ['a'], 2: ['a'], 3: [], 4: []})
    result = kToOneSurjection(g, 1, required = [3])
    assert not result
    assert result.side == 'left'
    assert 3 in result.required


def test_maximum_matching():

    g = BipartiteGraph([1, 2, 3], ['a', 'b'], {1: ['a'], 2: ['a'], 3: ['a', 'b']})

    matching = maximumMatching(g)

    assert len(matching) == 2
    assert len(set(matching.values())) == 2


def test_tampered_assignment():

    g = BipartiteGraph([1, 2, 3, 4], ['a', 'b'], {1: ['a'], 2: ['a', 'b'], 3: ['b'], 4: ['a', 'b']})

    bad = KToOneAssignment(g, 2, {1: 'a', 2: 'a', 3: 'b', 4: 'a'}, {1: 0, 2: 1, 3: 0, 4: 1})

    with pytest.raises(VerificationError) as excinfo:
        bad.verify()

    assert excinfo.value.point == 'a'


def test_random_graphs_against_hall_scan():

    rng = np.random.default_rng(2024)

    for i in range(10000):

        g = _randomGraph(rng)
        k = int(rng.integers(1, 4))

        result = kToOneSurjection(g, k)
        exists = kToOneSurjectionExists(g, k)

        assert bool(result) == exists

        if result:
            assert result.verify()
        else:
            assert result.side == 'right'
            assert result.neighbours == g.leftNeighbours(result.vertices)
            assert len(result.neighbours) < k * len(result.vertices)


def test_random_graphs_against_brute_force():

    rng = np.random.default_rng(7)

    for i in range(2000):

        g = _randomGraph(rng, max_left = 7, max_right = 3)
        k = int(rng.integers(1, 3))
        required = [v for v in g.left if rng.random() < 0.3]

        result = kToOneSurjection(g, k, required = required)
        brute = bruteForceAssignment(g, k, required = required)

        assert bool(result) == (brute is not None)

        if result:
            assert set(required) <= set(result.domain())
            assert result.verify()
