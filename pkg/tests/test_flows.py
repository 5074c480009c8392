import itertools

import numpy as np
import pytest

from shiftcert.core import VerificationError
from shiftcert.flows import Boundary, CarryOverflow, CosetStructure, PrefixMap, checkCompatibility, coinduce, f2GeneratorCheck, f2Generators, f2OrbitCheck, f2TailAction, liftPatch, odometerCompression, odometerDecompression, odometerStep, stableTailStart, tailAgreement, wreathJump
from shiftcert.groups import CyclicGroup, ball, parseGroup
from shiftcert.subshift import Patch, countPatterns, extendSearch, forbiddenPatterns, fullShift, goldenMean, hardCore, patchCheck


###################
### Coinduction ###
###################

def test_coset_decomposition(Z):

    cosets = CosetStructure(Z, '3Z')

    for k in range(-7, 8):
        rep, gamma = cosets.decompose((k,))
        assert Z.multiply(rep, cosets.embed(gamma)) == (k,)
        assert rep[0] in [0, 1, 2]

    assert cosets.representatives([(k,) for k in range(10)]) == [(0,), (1,), (2,)]


def test_coinduced_golden_mean(Z):

    cosets = CosetStructure(Z, '2Z')
    spec = coinduce(goldenMean(cosets.inner_group), cosets)

    # Two independent golden mean rows of length 2
    assert countPatterns(spec, [(k,) for k in range(4)]) == 9


def test_lifted_coordinates_are_compatible(Z):

    cosets = CosetStructure(Z, '2Z')
    spec = coinduce(goldenMean(cosets.inner_group), cosets)

    z = extendSearch(spec, Patch(Z, {(0,): 1, (1,): 1}), [(k,) for k in range(8)])
    assert z
    assert patchCheck(spec, z)

    lifted = liftPatch(cosets, z)
    assert lifted[(1,)].cells[(1,)] == z.cells[(3,)]
    assert checkCompatibility(cosets, lifted) > 0


def test_incompatible_lift_is_detected(Z):

    cosets = CosetStructure(Z, '2Z')
    z = Patch(Z, dict(((k,), 0) for k in range(6)))

    lifted = liftPatch(cosets, z)
    cells = dict(lifted[(2,)].cells)
    cells[(1,)] = 1
    lifted[(2,)] = Patch(cosets.inner_group, cells)

    with pytest.raises(VerificationError):
        checkCompatibility(cosets, lifted)


def test_coinduction_from_trivial_subgroup(F2):

    cosets = CosetStructure(F2, '1')
    spec = coinduce(fullShift(cosets.inner_group, [0, 1]), cosets)

    assert countPatterns(spec, ball(F2, None, 1).elements) == 32


def test_coinduction_from_whole_group(F2):

    cosets = CosetStructure(F2, 'whole')
    spec = coinduce(hardCore(F2), cosets)

    assert countPatterns(spec, ball(F2, None, 1).elements) == 17


def test_coinduction_from_whole_group_preserves_counts(Z, F2):

    rng = np.random.default_rng(7)

    cases = [(Z, [(0,), (1,)], [(k,) for k in range(8)]),
             (Z, [(0,), (1,), (2,)], [(k,) for k in range(8)]),
             (F2, [F2.identity, F2.parse('a'), F2.parse('b')], ball(F2, None, 1).elements)]

    for i in range(10):
        group, window, domain = cases[i % len(cases)]

        patterns = list(itertools.product([0, 1], repeat = len(window)))
        picks = rng.choice(len(patterns), size = int(rng.integers(1, 4)), replace = False)
        spec = forbiddenPatterns(group, [0, 1], window, [patterns[j] for j in picks], name = 'random-%s'%str(i))

        lifted = coinduce(spec, CosetStructure(group, 'whole'))

        assert countPatterns(lifted, domain) == countPatterns(spec, domain), spec.name


def test_unsupported_subgroups(F2, Z):

    with pytest.raises(ValueError):
        CosetStructure(F2, '2Z')

    with pytest.raises(ValueError):
        CosetStructure(Z, 'half')

    with pytest.raises(AssertionError):
        coinduce(goldenMean(F2), CosetStructure(Z, '2Z'))


###################
### Wreath jump ###
###################

def test_lamplighter_word_lights_one_lamp(Z):

    W = wreathJump(CyclicGroup(2), Z)
    x = Patch(Z, dict(((k,), 0) for k in range(4)))

    y = W.applyWord('x f x⁻¹', x)

    assert y.cells == {(0,): 0, (1,): 1, (2,): 0, (3,): 0}
    assert W.applyWord('', x) == x


def test_wreath_shift_moves_domain(Z):

    W = wreathJump(CyclicGroup(2), Z)
    x = Patch(Z, {(0,): 1, (1,): 0})

    y = W.applyWord('x', x)

    assert y.cells == {(1,): 1, (2,): 0}


def test_lamps_outside_domain_are_ignored(Z):

    W = wreathJump(CyclicGroup(2), Z)
    x = Patch(Z, {(0,): 0})

    assert W.applyWord('x⁻¹ f x', x) == x


def test_wreath_matches_lamplighter_group(Z):

    L = parseGroup('L')
    W = wreathJump(CyclicGroup(2), Z)
    x = Patch(Z, dict(((k,), k % 2) for k in range(-3, 4)))

    elements = ball(L, None, 2).elements
    for g, h in itertools.product(elements, elements):
        a, b = W.fromLamplighter(g), W.fromLamplighter(h)
        assert W.multiply(a, b) == W.fromLamplighter(L.multiply(g, h))
        assert W.actElement(W.multiply(a, b), x) == W.actElement(a, W.actElement(b, x))


def test_cyclic_lamps_over_free_group(F2):

    W = wreathJump(CyclicGroup(3), F2)
    x = Patch(F2, dict((g, 0) for g in ball(F2, None, 1).elements))

    assert W.applyWord('f f f', x) == x
    assert W.applyWord('f', x).cells[F2.identity] == 1
    assert W.applyWord('f⁻¹', x).cells[F2.identity] == 2
    assert W.applyWord('a f a⁻¹', x).cells[F2.parse('a')] == 1


def test_wreath_rejects_unsupported_groups(Z):

    with pytest.raises(ValueError):
        wreathJump(CyclicGroup(2), parseGroup('Z^2'))

    with pytest.raises(ValueError):
        wreathJump(Z, Z)

    W = wreathJump(CyclicGroup(2), Z)
    with pytest.raises(ValueError):
        W.applyWord('q', Patch(Z, {}))


######################
### F2 tail action ###
######################

def test_tail_action():

    assert f2TailAction('0110', 'g2⁻¹g2') == '0110'
    assert f2TailAction('0110', 'g1') == '1110'
    assert f2TailAction('0110', 'g2') == '00110'
    assert f2TailAction('110', 'g2') == '10'
    assert f2TailAction('10', 'g2') == '01'


def test_tail_action_boundary():

    result = f2TailAction('1', 'g2')

    assert not result
    assert isinstance(result, Boundary)
    assert result.generator == 'g2'


def test_tail_action_malformed_word():

    with pytest.raises(ValueError):
        f2TailAction('01', 'g3')


def test_prefix_maps_are_inverse():

    generators = f2Generators()
    inverses = {'g1': 'g1⁻¹', 'g1⁻¹': 'g1', 'g2': 'g2⁻¹', 'g2⁻¹': 'g2'}

    assert generators['g2'].inverse().name == 'g2⁻¹'

    used = set()
    for L in range(1, 11):
        for bits in itertools.product('01', repeat = L):
            x = ''.join(bits)
            for name, g in generators.items():
                y = g.apply(x)
                if not y:
                    assert isinstance(y, Boundary)
                    continue
                assert generators[inverses[name]].apply(y) == x
                if name == 'g2':
                    used.add(g.match(x))

    assert used == set([('0', '00'), ('11', '1'), ('10', '01')])


def test_prefix_map_needs_complete_code():

    with pytest.raises(AssertionError):
        PrefixMap([('0', '0'), ('10', '1')])


def test_orbit_check():

    result = f2OrbitCheck('0', '1', 1)
    assert result
    assert result.path == ['g1']

    result = f2OrbitCheck('00', '0', 1)
    assert result
    assert result.path == ['g2⁻¹']

    result = f2OrbitCheck('0', '1', 0)
    assert not result
    assert result.outcome == 'not-within-depth'


def test_orbit_path_replays():

    x = '0110'
    y = f2TailAction(x, 'g1g2')
    assert y == '10110'

    result = f2OrbitCheck(x, y, 2)

    assert result
    assert len(result.path) <= 2
    assert f2TailAction(x, list(reversed(result.path))) == y


def test_connected_pairs_are_tail_consistent():

    names = list(f2Generators().keys())
    words = [list(w) for k in range(3) for w in itertools.product(names, repeat = k)]

    pairs = 0
    for L in range(1, 9):
        for bits in itertools.product('01', repeat = L):
            x = ''.join(bits)

            reached = set()
            for word in words:
                y = f2TailAction(x, word)
                if y and len(y) <= 8:
                    reached.add(y)

            for y in reached:
                result = f2OrbitCheck(x, y, 2)
                assert result, (x, y)
                assert result.tail_consistent, (x, y)
                pairs += 1

    assert pairs > 510


def test_tail_agreement():

    assert tailAgreement('00101', '101', 2, 0)
    assert not tailAgreement('00101', '111', 2, 0)


def test_generator_check():

    assert f2GeneratorCheck(5, 8)

    # Every pair of distinct strings of length at most 8
    result = f2GeneratorCheck(8, 14)
    assert result
    assert result.checked == sum([2 ** L * (2 ** L - 1) // 2 for L in range(1, 9)])

    result = f2GeneratorCheck(2, 0)
    assert not result
    assert result.pair == ('00', '01')


################
### Odometer ###
################

def test_odometer_step_exhaustive():

    for x in itertools.product(range(4), repeat = 6):

        up = odometerStep(x, 1)
        if x == (3,) * 6:
            assert isinstance(up, CarryOverflow)
        else:
            assert up
            assert odometerStep(up, -1) == x

        down = odometerStep(x, -1)
        if x == (0,) * 6:
            assert not down
        else:
            assert odometerStep(down, 1) == x


def test_odometer_compression_exhaustive():

    images = set()
    starts_at_zero = set()

    for x in itertools.product(range(4), repeat = 6):

        if stableTailStart(x) == 0:
            starts_at_zero.add(x)

        if x[-1] not in (1, 2):
            with pytest.raises(ValueError):
                odometerCompression(x)
            continue

        y = odometerCompression(x)
        assert odometerDecompression(y) == x
        images.add(y)

        n = stableTailStart(x)
        assert [k for k in range(6) if x[k] != y[k]] == [n]
        assert stableTailStart(y) == n + 1

    assert len(images) == 2 * 4 ** 5

    # No image has its stable tail starting at 0
    assert len(starts_at_zero) == 2 ** 6
    assert images.isdisjoint(starts_at_zero)


def test_stable_tail_start():

    assert stableTailStart((0, 1, 2, 1)) == 1
    assert stableTailStart((0, 1, 2, 1), tail = 2) == 1
    assert stableTailStart((3, 0, 0, 1)) == 3
    assert stableTailStart((1, 2, 0), tail = 3) == 3

    with pytest.raises(ValueError):
        stableTailStart((1, 0, 1), tail = 1)


def test_odometer_compression_examples():

    assert odometerCompression((3, 0, 0, 1)) == (3, 0, 0, 3)
    assert odometerCompression((0, 1, 2, 1)) == (0, 3, 2, 1)

    with pytest.raises(ValueError):
        odometerCompression((1, 2, 0))

    with pytest.raises(ValueError):
        odometerDecompression((1, 2, 1))
