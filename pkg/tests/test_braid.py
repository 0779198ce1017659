import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from jumploci.braid import (
    BraidWord,
    artin_action,
    artin_presentation,
    component_count,
    components,
    delete_component,
    linking_matrix,
)
from jumploci.errors import ComponentUnderflowError, InvalidComponentError, MalformedBraidError
from jumploci.fox import abelianize, free_reduce

HOPF = BraidWord(2, (1, 1))
TANGENT = BraidWord(2, (1, 1, 1, 1))
THREE_LINES = BraidWord(3, (1, 2) * 3)


@st.composite
def braids(draw, positive=False, min_strands=1):
    n = draw(st.integers(min_strands, 5))
    if n == 1:
        return BraidWord(1, ())
    letter = st.integers(1, n - 1) if positive else st.integers(1, n - 1).flatmap(
        lambda k: st.sampled_from([k, -k])
    )
    return BraidWord(n, tuple(draw(st.lists(letter, max_size=12))))


def test_letter_range_is_validated():
    with pytest.raises(MalformedBraidError):
        BraidWord(2, (2,))
    with pytest.raises(MalformedBraidError):
        BraidWord(3, (0,))
    with pytest.raises(MalformedBraidError):
        BraidWord(0, ())


def test_json_round_trip_and_validation():
    b = BraidWord.from_json({"strands": 3, "word": [1, -2, 1]})
    assert b == BraidWord(3, (1, -2, 1))
    assert BraidWord.from_json(b.to_json()) == b
    with pytest.raises(MalformedBraidError):
        BraidWord.from_json({"strands": 2, "word": [0]})
    with pytest.raises(MalformedBraidError):
        BraidWord.from_json({"strands": 2})


# --- components -----------------------------------------------------------------

def test_components_examples():
    assert component_count(BraidWord(2, (1,))) == 1
    assert component_count(HOPF) == 2
    assert components(THREE_LINES) == (1, 2, 3)


def test_cusp_line_components():
    # the half twist cubed swaps the outer strands and fixes the middle one
    assert components(BraidWord(3, (1, 2, 1) * 3)) == (1, 2, 1)


# --- linking ----------------------------------------------------------------------

def test_linking_examples():
    assert linking_matrix(HOPF).entries == ((0, 1), (1, 0))
    assert linking_matrix(TANGENT).entries == ((0, 2), (2, 0))
    assert linking_matrix(THREE_LINES).entries == ((0, 1, 1), (1, 0, 1), (1, 1, 0))


def test_negative_crossings_count_negatively():
    assert linking_matrix(BraidWord(2, (-1, -1))).entries == ((0, -1), (-1, 0))
    assert linking_matrix(BraidWord(2, (1, -1))).entries == ((0, 0), (0, 0))


@settings(max_examples=150, deadline=None)
@given(braids())
def test_linking_matrix_symmetric_zero_diagonal(b):
    L = linking_matrix(b)
    r = component_count(b)
    assert L.size == r
    for i in range(1, r + 1):
        assert L(i, i) == 0
        for j in range(1, r + 1):
            assert L(i, j) == L(j, i)


@settings(max_examples=150, deadline=None)
@given(braids(positive=True))
def test_positive_linking_total_is_half_the_mixed_crossings(b):
    labels = components(b)
    occupant = list(range(b.strands))
    mixed = 0
    for k in b.letters:
        a = k - 1
        mixed += labels[occupant[a]] != labels[occupant[a + 1]]
        occupant[a], occupant[a + 1] = occupant[a + 1], occupant[a]
    L = linking_matrix(b)
    r = L.size
    assert 2 * sum(L(i, j) for i in range(1, r + 1) for j in range(i + 1, r + 1)) == mixed


# --- Artin action and presentation -----------------------------------------------

def test_trivial_braid_presentation():
    p = artin_presentation(BraidWord(1, ()))
    assert p.generators == 1 and p.relators == () and p.labels == (1,)


def test_hopf_presentation_is_commutator():
    p = artin_presentation(HOPF)
    # (x1 x2) x1 (x1 x2)^-1 x1^-1
    assert p.relators == ((1, 2, 1, -2, -1, -1),)
    assert p.labels == (1, 2)


def test_trefoil_presentation_has_one_relator_and_infinite_cyclic_abelianization():
    p = artin_presentation(BraidWord(2, (1, 1, 1)))
    assert len(p.relators) == 1
    assert p.components == 1
    assert abelianize(p, p.relators[0]) == [0]


def test_artin_action_respects_braid_relations():
    assert artin_action(BraidWord(3, (1, 2, 1))) == artin_action(BraidWord(3, (2, 1, 2)))
    assert artin_action(BraidWord(4, (1, 3))) == artin_action(BraidWord(4, (3, 1)))
    assert artin_action(BraidWord(3, (1, -1, -2, 2))) == [[1], [2], [3]]


@settings(max_examples=100, deadline=None)
@given(braids())
def test_artin_action_fixes_the_boundary_word(b):
    images = artin_action(b)
    assert free_reduce([g for w in images for g in w]) == list(range(1, b.strands + 1))


@settings(max_examples=100, deadline=None)
@given(braids(), st.data())
def test_abelianization_is_free_on_meridians(b, data):
    drop = data.draw(st.integers(1, b.strands))
    p = artin_presentation(b, drop=drop)
    r = p.components
    for w in p.relators:
        assert abelianize(p, w) == [0] * r
    if not p.relators:
        assert p.generators == r
        return
    # relation matrix in the generator basis: Z^n / rows must be Z^r
    rel = Matrix([[sum(1 if g == j else -1 if g == -j else 0 for g in w) for j in range(1, p.generators + 1)] for w in p.relators])
    snf = smith_normal_form(rel, domain=ZZ)
    diag = [snf[i, i] for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert all(abs(d) == 1 for d in diag)
    assert p.generators - len(diag) == r


# --- deletion ---------------------------------------------------------------------

def test_delete_from_hopf_leaves_unknot():
    assert delete_component(HOPF, 1) == BraidWord(1, ())
    assert delete_component(HOPF, 2) == BraidWord(1, ())


def test_delete_from_three_lines():
    assert delete_component(THREE_LINES, 3) == BraidWord(2, (1, 1))
    for c in (1, 2):
        assert delete_component(THREE_LINES, c) == BraidWord(2, (1, 1))


def test_delete_from_tangent_pair():
    assert delete_component(TANGENT, 2) == BraidWord(1, ())


def test_delete_line_from_cusp_line_leaves_trefoil():
    assert delete_component(BraidWord(3, (1, 2, 1) * 3), 2) == BraidWord(2, (1, 1, 1))


def test_delete_errors():
    with pytest.raises(InvalidComponentError):
        delete_component(HOPF, 3)
    with pytest.raises(ComponentUnderflowError):
        delete_component(BraidWord(2, (1, 1, 1)), 1)


@settings(max_examples=150, deadline=None)
@given(braids(min_strands=2), st.data())
def test_delete_component_drops_a_row_and_column(b, data):
    r = component_count(b)
    assume(r >= 2)
    c = data.draw(st.integers(1, r))
    smaller = delete_component(b, c)
    assert component_count(smaller) == r - 1
    assert linking_matrix(smaller) == linking_matrix(b).minor(c)
