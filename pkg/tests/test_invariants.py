import pytest

from app.backend.algebra import LaurentPoly, evaluate, invert_variable, normalize_up_to_units, parse_laurent
from app.backend.errors import InvalidOperationError, LinkNotSupportedError, SizeLimitExceeded
from app.backend.homology import cube_of_resolutions
from app.backend.invariants import (abelianization, alexander_polynomial, bracket_states, count_s3_homomorphisms,
                                    fox_colorings_count, genus_lower_bound, jones_polynomial, kauffman_bracket,
                                    knot_determinant, naive_kauffman_bracket, seifert_genus_upper_bound,
                                    unnormalized_jones, wirtinger_presentation)
from app.backend.knots import UNKNOT, Move, apply_reidemeister, mirror, reidemeister_sites


@pytest.mark.parametrize('name, expected', [
    ('unknot', '1'),
    ('kink', '1'),
    ('right-trefoil', 't^2 - t + 1'),
    ('left-trefoil', 't^2 - t + 1'),
    ('figure-eight', 't^2 - 3*t + 1'),
])
def test_alexander_small_knots(small_knots, name, expected):
    assert alexander_polynomial(small_knots[name]) == parse_laurent(expected)


def test_alexander_properties_across_catalog(catalog):
    """Delta(1) = +-1 and Delta is symmetric up to units."""
    for record in catalog:
        delta = alexander_polynomial(record.pd)
        assert abs(evaluate(delta, 1)) == 1, record.name
        assert normalize_up_to_units(invert_variable(delta)) == delta, record.name


def test_alexander_independent_of_deleted_column(figure_eight):
    reference = alexander_polynomial(figure_eight)
    n_arcs = wirtinger_presentation(figure_eight).n_generators
    for column in range(n_arcs):
        assert alexander_polynomial(figure_eight, column=column) == reference


def test_conway_and_kt_have_trivial_alexander(catalog):
    for name in ('conway', 'kt'):
        assert alexander_polynomial(catalog.lookup(name).pd) == 1
        assert knot_determinant(catalog.lookup(name).pd) == 1


def test_determinants(small_knots):
    assert knot_determinant(small_knots['unknot']) == 1
    assert knot_determinant(small_knots['right-trefoil']) == 3
    assert knot_determinant(small_knots['figure-eight']) == 5


def test_links_are_rejected(hopf_link):
    with pytest.raises(LinkNotSupportedError):
        alexander_polynomial(hopf_link)
    with pytest.raises(LinkNotSupportedError):
        jones_polynomial(hopf_link)


def test_presentation_text(trefoil):
    presentation = wirtinger_presentation(trefoil)
    assert presentation.n_generators == 3
    assert len(presentation.relations) == 3
    text = presentation.to_text()
    assert text.startswith('⟨x1, x2, x3 |')
    assert wirtinger_presentation(UNKNOT).to_text() == '⟨x1 | ⟩'


def test_abelianization_is_integers(catalog):
    for record in catalog:
        group = abelianization(wirtinger_presentation(record.pd))
        assert group.is_integers(), record.name
        assert group.to_text() == 'Z'


def test_fox_colorings(small_knots):
    assert fox_colorings_count(small_knots['unknot'], 3) == 3
    assert fox_colorings_count(small_knots['right-trefoil'], 3) == 9
    assert fox_colorings_count(small_knots['figure-eight'], 3) == 3
    assert fox_colorings_count(small_knots['figure-eight'], 5) == 25


@pytest.mark.parametrize('p', [2, 4, 9, -3])
def test_fox_colorings_need_odd_prime(trefoil, p):
    with pytest.raises(InvalidOperationError):
        fox_colorings_count(trefoil, p)


def test_s3_homomorphisms(small_knots):
    assert count_s3_homomorphisms(wirtinger_presentation(small_knots['unknot'])) == 6
    assert count_s3_homomorphisms(wirtinger_presentation(small_knots['right-trefoil'])) == 12
    assert count_s3_homomorphisms(wirtinger_presentation(small_knots['figure-eight'])) == 6


def test_s3_search_size_limit(figure_eight):
    with pytest.raises(SizeLimitExceeded) as info:
        count_s3_homomorphisms(wirtinger_presentation(figure_eight), max_arcs=2)
    assert info.value.exit_code == 4


def test_genus_bounds(catalog):
    for record in catalog:
        lower = genus_lower_bound(record.pd)
        upper = seifert_genus_upper_bound(record.pd)
        assert lower <= upper, record.name
        if record.reference.genus is not None:
            assert lower <= record.reference.genus <= upper, record.name


def test_trefoil_genus(trefoil):
    assert genus_lower_bound(trefoil) == 1
    assert seifert_genus_upper_bound(trefoil) == 1


@pytest.mark.parametrize('name, expected', [
    ('unknot', '1'),
    ('kink', '1'),
    ('right-trefoil', '-t^4 + t^3 + t'),
    ('left-trefoil', 't^-1 + t^-3 - t^-4'),
    ('figure-eight', 't^2 - t + 1 - t^-1 + t^-2'),
])
def test_jones_small_knots(small_knots, name, expected):
    assert jones_polynomial(small_knots[name]) == parse_laurent(expected)


def test_sweep_matches_state_sum(catalog):
    """The sweeping bracket agrees with the 2^n oracle wherever the oracle runs."""
    for record in catalog:
        if record.crossings <= 8:
            assert kauffman_bracket(record.pd) == naive_kauffman_bracket(record.pd), record.name
            assert jones_polynomial(record.pd) == jones_polynomial(record.pd, oracle=True), record.name


def test_jones_matches_catalog_references(catalog):
    for record in catalog:
        assert jones_polynomial(record.pd) == parse_laurent(record.reference.jones), record.name


def test_mutants_share_jones(catalog):
    assert jones_polynomial(catalog.lookup('conway').pd) == jones_polynomial(catalog.lookup('kt').pd)


def test_kink_bracket(kink):
    assert naive_kauffman_bracket(kink) == LaurentPoly({-3: -1}, 'A')
    assert kauffman_bracket(kink) == LaurentPoly({-3: -1}, 'A')


def test_bracket_sweep_handles_kinks(trefoil, figure_eight):
    """Crossings that reuse a label (kinks) close that label inside the sweep."""
    for d in (trefoil, figure_eight):
        for site in reidemeister_sites(d, Move.R1_PLUS)[:6]:
            kinked = apply_reidemeister(d, Move.R1_PLUS, site)
            assert kauffman_bracket(kinked) == naive_kauffman_bracket(kinked), site
            assert jones_polynomial(kinked) == jones_polynomial(d), site


def test_mirror_inverts_jones(trefoil, figure_eight):
    for d in (trefoil, figure_eight):
        assert jones_polynomial(mirror(d)) == invert_variable(jones_polynomial(d))


def test_bracket_states_match_cube(trefoil):
    states = bracket_states(trefoil)
    cube = cube_of_resolutions(trefoil)
    assert len(states) == 8
    for state in states:
        bits = tuple(1 if smoothing == 'B' else 0 for smoothing in state.assignment)
        assert state.circles == cube.vertices[bits].n_circles


def test_bracket_state_limit(trefoil):
    with pytest.raises(SizeLimitExceeded):
        bracket_states(trefoil, max_crossings=2)


def test_unnormalized_jones(trefoil):
    assert unnormalized_jones(trefoil) == parse_laurent('q + q^3 + q^5 - q^9', var='q')
    for d in (UNKNOT, trefoil):
        assert evaluate(unnormalized_jones(d), 1) == 2
