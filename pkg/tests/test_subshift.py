import itertools

import pytest

from shiftcert.core import NotFound, ResourceLimitError
from shiftcert.groups import ball, parseGroup
from shiftcert.subshift import ClopenDecomposition, Patch, Unsatisfiable, WindowViolation, clopenGeneratorCheck, clopenParadoxSearch, countPatterns, emptyOnBall, extendSearch, forbiddenPatterns, fullShift, goldenMean, hardCore, patchCheck, productSpec, translatePatch, windowCenters, xstSpec, xtSpec, xtSplitSeed


def _interval(n):
    return [(i,) for i in range(n)]


def _directCheck(spec, patch):
    '''
    Enumerate every window inside the patch directly.
    '''

    group = spec.group
    for gamma in patch.cells:
        cells = [group.multiply(gamma, w) for w in spec.window]
        if all([c in patch.cells for c in cells]):
            if not spec.isAllowed(tuple([patch.cells[c] for c in cells])):
                return False

    return True


def test_golden_mean_counts(Z):

    fibonacci = [1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377]

    for n in range(1, 13):
        assert countPatterns(goldenMean(Z), _interval(n)) == fibonacci[n]


def test_hard_core_counts(Z, F2):

    assert countPatterns(hardCore(Z), _interval(5)) == 13

    # Independent sets of the star with 4 leaves: 2^4 + 1
    assert countPatterns(hardCore(F2), ball(F2, None, 1).elements) == 17


def test_full_shift_count(F2):

    assert countPatterns(fullShift(F2, [0, 1]), ball(F2, None, 1).elements) == 32


def test_count_cap(F2):

    with pytest.raises(ResourceLimitError):
        countPatterns(fullShift(F2, [0, 1]), ball(F2, None, 3).elements, cap = 1000)


def test_patch_check_names_violation(Z):

    spec = goldenMean(Z)
    patch = Patch(Z, {(0,): 0, (1,): 1, (2,): 1, (3,): 0})

    result = patchCheck(spec, patch)

    assert not result
    assert isinstance(result, WindowViolation)
    assert result.gamma == (1,)

    assert patchCheck(spec, Patch(Z, {(0,): 1, (1,): 0, (2,): 1}))


def test_patch_check_agrees_with_direct_enumeration():

    Z2 = parseGroup('Z^2')
    spec = hardCore(Z2)
    domain = ball(Z2, None, 1).elements

    for values in itertools.product([0, 1], repeat = len(domain)):
        patch = Patch(Z2, dict(zip(domain, values)))
        assert bool(patchCheck(spec, patch)) == _directCheck(spec, patch)


def test_window_centers(Z):

    centers = windowCenters(goldenMean(Z), _interval(4))

    assert centers == [(0,), (1,), (2,)]


def test_extend_search_first_solution(Z):

    spec = goldenMean(Z)
    target = ball(Z, None, 3).elements

    result = extendSearch(spec, Patch(Z, {(0,): 1}), target)

    assert result
    assert result.cells[(0,)] == 1
    assert result.cells[(1,)] == 0
    assert result.cells[(-1,)] == 0
    assert set(result.cells.keys()) == set(target)
    assert patchCheck(spec, result)


def test_extend_search_matches_counts():

    Z2 = parseGroup('Z^2')

    domain = ball(Z2, None, 1).elements

    for spec in [goldenMean(Z2), hardCore(Z2), xtSpec(Z2, Z2.generatingSet()), xtSpec(Z2, [Z2.identity])]:
        result = extendSearch(spec, Patch(Z2, {}), domain)
        assert bool(result) == (countPatterns(spec, domain) > 0)
        if result:
            assert patchCheck(spec, result)


def test_unsatisfiable(Z):

    spec = xtSpec(Z, [Z.identity])

    result = extendSearch(spec, Patch(Z, {}), ball(Z, None, 1).elements)

    assert not result
    assert isinstance(result, Unsatisfiable)
    assert emptyOnBall(spec, 0)
    assert not emptyOnBall(goldenMean(Z), 4)


def test_extend_search_respects_fixed_violation(Z):

    spec = goldenMean(Z)

    result = extendSearch(spec, Patch(Z, {(0,): 1, (1,): 1}), ball(Z, None, 2).elements)

    assert isinstance(result, Unsatisfiable)


def test_xt_spec_on_free_group(F2):

    spec = xtSpec(F2, F2.generatingSet())

    result = extendSearch(spec, Patch(F2, {}), ball(F2, None, 2).elements)

    assert result
    assert patchCheck(spec, result)


def test_xst_spec_accepts_classical_patch(F2):

    import shiftcert.amenability

    S, T, pieces = shiftcert.amenability.classicalPieces(F2)
    cert = shiftcert.amenability.xstCertificate(F2, S, T, pieces, 4)

    spec = xstSpec(F2, S, T)
    patch = cert.patch()
    centers = ball(F2, None, cert.R0).elements

    assert patchCheck(spec, patch, centers = centers)


def test_product_spec(Z):

    spec = productSpec(goldenMean(Z), fullShift(Z, ['p', 'q']))

    assert countPatterns(spec, _interval(3)) == 5 * 8


def test_forbidden_patterns(Z):

    spec = forbiddenPatterns(Z, [0, 1], [Z.identity, (1,)], [(0, 0), (1, 1)], name = 'alternating')

    assert countPatterns(spec, _interval(6)) == 2


def test_translate_patch(F2):

    a = F2.parse('a')
    patch = Patch(F2, {F2.identity: 1, F2.parse('b'): 0})

    moved = translatePatch(patch, a)

    assert moved.cells == {a: 1, F2.parse('ab'): 0}
    assert translatePatch(moved, F2.invert(a)) == patch


def test_spec_digest_changes_with_rule(Z):

    assert goldenMean(Z).digest() == goldenMean(Z).digest()
    assert goldenMean(Z).digest() != fullShift(Z, [0, 1]).digest()


def test_generator_check_identity_labelling(Z):

    spec = goldenMean(Z)

    result = clopenGeneratorCheck(spec, lambda pattern: pattern[0], 0, 1)

    assert result
    assert result.checked == 5


def test_generator_check_counterexample(Z):

    spec = fullShift(Z, [0, 1, 2])

    # Labels 1 and 2 together; nothing distinguishes them at any radius
    result = clopenGeneratorCheck(spec, lambda pattern: int(pattern[0] > 0), 0, 2)

    assert not result
    x, y = result.pair
    assert x.cells[Z.identity] != y.cells[Z.identity]


def test_generator_check_shift_recovers_symbol(Z):

    spec = fullShift(Z, [0, 1])

    # Each label is the right neighbour, so x_e is read off the code at -1
    label = dict(((a, b, c), b) for a, b, c in itertools.product([0, 1], repeat = 3))

    assert clopenGeneratorCheck(spec, label, 1, 1)


def test_full_shift_has_no_clopen_compression(F2):

    spec = fullShift(F2, [0, 1])

    result = clopenParadoxSearch(spec, 0, F2.generatingSet(), 'compression')

    assert not result
    assert isinstance(result, NotFound)


def test_xt_split_seed_compresses(F2):

    T = [F2.identity, F2.parse('a'), F2.parse('b')]
    spec = xtSpec(F2, T)

    seed = xtSplitSeed(spec, 1)
    result = clopenParadoxSearch(spec, 1, spec.alphabet, 'compression', seed = seed)

    assert isinstance(result, ClopenDecomposition)
    assert result.uncovered > 0
    assert result.verify(spec)
