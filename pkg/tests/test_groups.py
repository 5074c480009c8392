import pytest

import shiftcert.groups
from shiftcert.core import ResourceLimitError
from shiftcert.groups import ball, freeBallSize, parseGroup, shortlexRank, shortlexUnrank, sphereSizes


def test_free_group_ball_sizes():

    for k, r_max in [(1, 8), (2, 8), (3, 5)]:
        G = parseGroup('F%s'%str(k))
        for r in range(r_max + 1):
            assert len(ball(G, None, r)) == freeBallSize(k, r)

    F2 = parseGroup('F2')
    for r in range(9):
        assert len(ball(F2, None, r)) == 2 * 3 ** r - 1


def test_free_abelian_ball_sizes():

    Z2 = parseGroup('Z^2')

    for r in range(21):
        assert len(ball(Z2, None, r)) == 2 * r * r + 2 * r + 1

    assert sphereSizes(ball(Z2, None, 3)) == [1, 4, 8, 12]


def test_infinite_dihedral_ball_sizes():

    D = parseGroup('(C2)*(C2)')

    for r in range(6):
        assert len(ball(D, None, r)) == 2 * r + 1


def test_ball_lengths_match_word_length():

    for descriptor in ['L', 'F2', 'Z^3', '(Z)x(C5)', '(C2)*(C3)']:
        G = parseGroup(descriptor)
        B = ball(G, None, 4)
        for g in B.elements:
            assert B.lengths[g] == G.wordLength(g), "%s in %s"%(G.format(g), descriptor)


def test_ball_is_right_closed():

    G = parseGroup('F2')
    B = ball(G, None, 3)
    inner = ball(G, None, 2)

    for g in inner.elements:
        for s in G.generators():
            assert G.multiply(g, s) in B


def test_free_group_arithmetic(F2):

    a, b = F2.parse('a'), F2.parse('b')

    assert F2.parse('ab⁻¹') == (1, -2)
    assert F2.format((1, -2)) == 'ab⁻¹'
    assert F2.multiply(F2.parse('ab'), F2.parse('b⁻¹a')) == (1, 1)
    assert F2.evaluate('(ab)^2') == (1, 2, 1, 2)
    assert F2.evaluate('a^-2') == (-1, -1)
    assert F2.multiply(a, F2.invert(a)) == F2.identity
    assert F2.power(b, 3) == (2, 2, 2)
    assert F2.parse('e') == F2.identity


def test_lamplighter_arithmetic():

    L = parseGroup('L')

    g = L.evaluate('t f t⁻¹')
    assert g == (frozenset([1]), 0)
    assert L.format(g) == '({1};0)'
    assert L.parse('({1};0)') == g
    assert L.wordLength(g) == 3
    assert L.multiply(g, g) == L.identity


def test_product_formats():

    P = parseGroup('(Z)x(C3)')
    g = P.parse('<(2)|1>')
    assert g == ((2,), 1)
    assert P.format(g) == '<(2)|1>'

    Q = parseGroup('(Z)*(C2)')
    h = Q.parse('[1:(1)][2:1][1:(-1)]')
    assert len(h) == 3
    assert Q.multiply(h, Q.invert(h)) == Q.identity
    assert Q.format(h) == '[1:(1)][2:1][1:(-1)]'


def test_parse_group_descriptors():

    assert parseGroup('Z').descriptor == 'Z'
    assert parseGroup('Z^3').descriptor == 'Z^3'
    assert parseGroup('F3').descriptor == 'F3'
    assert parseGroup('((F2)x(Z))*(C2)').descriptor == '((F2)x(Z))*(C2)'

    with pytest.raises(ValueError):
        parseGroup('Q')

    with pytest.raises(ValueError):
        parseGroup('(Z)+(Z)')


def test_bad_element_strings(F2):

    with pytest.raises(ValueError):
        F2.parse('aq')

    with pytest.raises(ValueError):
        parseGroup('Z^2').parse('(1,2,3)')


def test_shortlex_rank_matches_ball_order(F2):

    B = ball(F2, None, 4)

    for g in B.elements:
        rank = shortlexRank(F2, g)
        assert rank == B.index[g]
        assert shortlexUnrank(F2, rank) == g


def test_ball_cap(F2):

    with pytest.raises(ResourceLimitError):
        ball(F2, None, 10, cap = 1000)


def test_asymmetric_generators_rejected(F2):

    with pytest.raises(AssertionError):
        ball(F2, [F2.parse('a')], 2)


def test_custom_generating_set(F2):

    S = [F2.parse(s) for s in ['a', 'a⁻¹', 'ab', 'b⁻¹a⁻¹']]
    B = ball(F2, S, 2)

    assert F2.parse('abab') in B
    assert F2.parse('b') in B
    assert F2.parse('b^2') not in B


def test_folner_sets():

    L = parseGroup('L')

    assert len(L.folnerSet(2)) == 5 * 2 ** 5
    assert len(parseGroup('Z').folnerSet(3)) == 7
