import pytest

from shiftcert.compressible import EMPTY, BuilderParams, WitnessPatch, codePatch, compressibleSpec, independentSubset, parameterWindow, patternInjection, runBuilder, selectParameters, shiftGraphEdges, supportScaffold, verifyCompression, witnessPatch
from shiftcert.core import VerificationError
from shiftcert.groups import ball, parseGroup
from shiftcert.matching import HallViolator
from shiftcert.subshift import Patch


def test_parameter_window():

    assert parameterWindow(4373) == range(41, 121)
    assert len(parameterWindow(64)) == 0
    assert len(parameterWindow(2)) == 0
    assert len(parameterWindow(6)) == 0


def test_parameter_window_stays_open():

    first = None
    for s in range(2, 10001):
        window = parameterWindow(s)
        if first is None and len(window) > 0:
            first = s
        if first is not None:
            assert len(window) > 0, "Window closes again at s = %s"%str(s)

    assert first is not None and first < 4373


def test_parameter_window_bounds_exact():

    for s in [100, 1000, 4373, 9999]:
        for n in parameterWindow(s):
            assert s ** (3 * n) <= 2 ** (s - 6)
            assert n >= 4 + (s ** 3 - 1).bit_length()


def test_independent_subset_f2(F2):

    S = ball(F2, None, 1).elements
    a = F2.parse('a')

    assert independentSubset(F2, S, a) == [F2.identity, a, F2.parse('b'), F2.parse('b⁻¹')]
    assert frozenset([F2.identity, F2.parse('a⁻¹')]) in shiftGraphEdges(F2, S, a)
    assert frozenset([F2.identity, a]) not in shiftGraphEdges(F2, S, a)


def test_independent_subset_is_independent():

    for descriptor, rho in [('F2', 2), ('Z^2', 2), ('L', 2), ('(Z)*(C3)', 2)]:
        G = parseGroup(descriptor)
        S = ball(G, None, rho).elements
        params = selectParameters(G, rho, mode = 'toy', n = 4)
        S_prime = set(params.S_prime)
        for edge in shiftGraphEdges(G, S, params.r):
            assert not edge <= S_prime, "%s: edge inside S′"%descriptor
        assert 3 * len(S_prime) >= len(S)


def test_select_parameters_toy(F2):

    params = selectParameters(F2, 1)

    assert params.mode == 'toy'
    assert params.n == 4
    assert params.r == F2.parse('a')
    assert params.tau == 4
    assert params.sigma == 3
    assert params.describe()['S_size'] == 5


def test_no_element_of_order_above_two():

    with pytest.raises(ValueError):
        selectParameters(parseGroup('(C2)x(C2)'), 1)


def test_strict_mode_rejects_empty_window(F2):

    with pytest.raises(ValueError):
        selectParameters(F2, 1, mode = 'strict')


def test_strict_mode_parameters(F2):

    params = selectParameters(F2, 7, mode = 'strict')

    assert len(params.S) == 4373
    assert params.n == 41
    assert params.phi.injective

    for t in ball(F2, None, 2).elements:
        assert params.phi.decode(params.phi.code(t)) == t
        assert params.phi.bit(t, F2.identity) == 1
        assert params.phi.bit(t, params.r) == 1


def test_builder_params_validation(F2):

    S = ball(F2, None, 1).elements
    a = F2.parse('a')

    with pytest.raises(AssertionError):
        BuilderParams(F2, S[:3], 4, a, [F2.identity, a], 'toy')

    with pytest.raises(AssertionError):
        BuilderParams(F2, S, 4, a, [F2.identity, a], 'strict')

    with pytest.raises(AssertionError):
        BuilderParams(F2, S, 4, a, [F2.identity], 'toy')


def test_scaffold_in_z(Z):

    params = selectParameters(Z, 1, n = 4)
    A = supportScaffold(Z, params, 20)

    points = sorted([g[0] for g in A])
    assert points[0] == -20 and points[-1] == 20
    for p, q in zip(points[:-1], points[1:]):
        assert q - p >= 4

    for g in ball(Z, None, 17).elements:
        assert min([abs(g[0] - p) for p in points]) <= 3


def test_scaffold_is_disjoint(F2):

    params = selectParameters(F2, 1)
    A = supportScaffold(F2, params, 7)

    for i, g in enumerate(A):
        for h in A[:i]:
            assert F2.wordLength(F2.multiply(F2.invert(h), g)) > 3


def test_toy_witness_f2(toy_build):

    assert toy_build['outcome'] == 'verified'

    witness = toy_build['witness']
    assert isinstance(witness, WitnessPatch)
    assert witness.R == 8
    assert witness.R0 == 1

    compression = toy_build['compression']
    assert not compression['degenerate']
    assert list(compression['table']['preimages'].unique()) == [2]

    code = toy_build['code']
    assert code['separates_support']
    assert code['checked'] == len(ball(witness.params.group, None, 6))
    assert set(code['table']['f']) <= set([0, 1])


def test_toy_witness_reverifies(toy_build):

    assert toy_build['witness'].verify()


def test_removed_support_point_is_detected(toy_build):

    witness = toy_build['witness']
    group = witness.params.group

    cells = dict(witness.patch.cells)
    cells[group.identity] = EMPTY
    bad = WitnessPatch(witness.params, Patch(group, cells), witness.R, witness.R0, None)

    with pytest.raises(VerificationError):
        bad.verify()


def test_compression_count_failure(toy_build):

    witness = toy_build['witness']
    params = witness.params
    group = params.group

    # Redirect one preimage of the identity to itself
    source = [h for h, x in witness.patch.cells.items() if x != EMPTY and group.isIdentity(group.multiply(h, x)) and h != group.identity][0]
    cells = dict(witness.patch.cells)
    cells[source] = group.identity

    with pytest.raises(VerificationError) as excinfo:
        verifyCompression(Patch(group, cells), params, R0 = witness.R0)

    assert excinfo.value.point == group.identity


def test_short_reach_gives_hall_violator(F2):

    out = runBuilder(F2, rho = 1, mode = 'toy', n = 2, R = 8)

    assert out['outcome'] == 'inconclusive'
    assert isinstance(out['violator'], HallViolator)


def test_witness_radius_too_small(F2):

    params = selectParameters(F2, 1)

    with pytest.raises(ValueError):
        witnessPatch(F2, params, 5)


def test_strict_mode_stops_after_parameters(F2):

    out = runBuilder(F2, rho = 7, mode = 'strict')

    assert out['outcome'] == 'parameters'
    assert 'witness' not in out


def test_spec_window(F2):

    params = selectParameters(F2, 1)
    spec = compressibleSpec(params)

    assert len(spec.window) == len(ball(F2, None, 4))
    assert EMPTY in spec.alphabet
    assert F2.parse('abab') in spec.alphabet
    assert F2.parse('ababa') not in spec.alphabet


def test_code_patch_rejects_wrong_radius(toy_build):

    witness = toy_build['witness']
    params = witness.params

    with pytest.raises(AssertionError):
        codePatch(params, witness.patch)

    phi = patternInjection(params, symbols = witness.symbols())
    assert phi.capacity == 4


def test_code_patch_with_long_relator():

    D = parseGroup('(C2)*(C2)')
    params = selectParameters(D, 2, n = 1)
    assert D.wordLength(params.r) == 2

    patch = Patch(D, dict((g, EMPTY) for g in ball(D, None, 8).elements))
    out = codePatch(params, patch, R = 8)

    # Points γ with γ·r inside ball(6)
    assert out['checked'] == len(ball(D, None, 4))
    assert not out['table']['supported'].any()

    with pytest.raises(ValueError):
        codePatch(params, Patch(D, dict((g, EMPTY) for g in ball(D, None, 3).elements)), R = 3)
