import random
from itertools import product

import pytest

from core.algebra.scalars import RATIONALS, TruncatedRing, reduce_order, series_sum
from core.errors import BoundaryError, FlaggedDataError, OrderError
from domain.entities.diagram import MorseDiagram, Slice, SliceKind
from domain.entities.tortile import TortileObjectData
from services.invariants import (
    check_disjoint_union,
    evaluate,
    evaluate_by_kronecker,
    linear_image,
    normalized_value,
    resolve_singular,
    type_bound_sweep,
    unknot_value,
    vassiliev_coeff,
    verify_coefficient_type,
    verify_type_bound,
)
from services.tangles import (
    resolvable_positions,
    singular_count,
    singularization_patterns,
    singularize,
    trace_closure,
)
from services.tortile import kauffman_data, reduce_data, symmetric_data
from tests.corpus import CORPUS_WORDS, FIGURE_EIGHT, HOPF, TREFOIL, UNKNOT, braid, closure
from tests.oracles import kauffman_bracket, laurent_to_series


def test_unknot_value(kauffman2):
    assert unknot_value(kauffman2).format() == "[-2, 0, -4]"
    assert evaluate(trace_closure(UNKNOT), kauffman2).is_closed


@pytest.mark.parametrize("word", CORPUS_WORDS, ids=lambda w: w.name)
def test_evaluation_matches_the_bracket_state_sum(word, kauffman4):
    expected = laurent_to_series(kauffman_bracket(word), 4)
    assert evaluate(trace_closure(word), kauffman4).scalar == expected


@pytest.mark.parametrize("word", [TREFOIL, HOPF, braid(2, (1, -1), framings=(0, 1))])
def test_slab_and_kronecker_paths_agree(word, kauffman2):
    d = trace_closure(word)
    assert evaluate(d, kauffman2).matrix == evaluate_by_kronecker(d, kauffman2).matrix


def test_open_diagram_evaluates_to_a_matrix(kauffman2):
    cup = MorseDiagram(slices=(Slice(kind=SliceKind.CUP_L, offset=0),), name="cup")
    result = evaluate(cup, kauffman2)
    assert not result.is_closed
    assert result.matrix.shape == (4, 1)
    assert result.matrix == kauffman2.coev_l


def test_symmetric_data_counts_components():
    ring = TruncatedRing(RATIONALS, 1)
    data = symmetric_data(3, ring)
    assert evaluate(trace_closure(HOPF), data).scalar == ring.constant(9)
    assert evaluate(trace_closure(TREFOIL), data).scalar == ring.constant(3)


def test_singular_value_is_the_signed_sum_of_resolutions(kauffman2):
    d = closure(2, (1, 1, 1), singular=(1, 3), twists=((1, 1),), name="sing")
    terms = resolve_singular(d)
    assert len(terms) == 8
    assert all(singular_count(term.diagram) == 0 for term in terms)
    assert sum(term.sign for term in terms) == 0
    total = series_sum(
        (evaluate(term.diagram, kauffman2).scalar * term.sign for term in terms), kauffman2.ring)
    assert total == evaluate(d, kauffman2).scalar


def test_resolution_of_a_nonsingular_diagram_is_itself():
    d = trace_closure(TREFOIL)
    terms = resolve_singular(d)
    assert len(terms) == 1
    assert terms[0].sign == 1
    assert terms[0].diagram == d


@pytest.mark.parametrize("order", [1, 2])
def test_enough_singular_points_kill_the_value(order):
    data = kauffman_data(order)
    d = trace_closure(FIGURE_EIGHT)
    positions = resolvable_positions(d)[: order + 1]
    report = verify_type_bound(singularize(d, positions), data)
    assert report.applicable
    assert report.passed
    assert report.value.is_zero()


def test_type_bound_below_the_threshold_is_not_applicable(kauffman2):
    d = singularize(trace_closure(TREFOIL), [resolvable_positions(trace_closure(TREFOIL))[0]])
    report = verify_type_bound(d, kauffman2)
    assert not report.applicable
    assert report.passed
    assert report.singular_count == 1


def test_type_bound_sweep_over_the_trefoil():
    data = kauffman_data(1)
    reports = type_bound_sweep(trace_closure(TREFOIL), data, 2)
    assert len(reports) == 6
    assert all(r.passed for r in reports)
    assert [r.applicable for r in reports] == [False] * 3 + [True] * 3


def test_coefficient_type(kauffman2):
    d = trace_closure(HOPF)
    once = singularize(d, resolvable_positions(d)[:1])
    assert verify_coefficient_type(once, kauffman2, 0).passed
    assert verify_coefficient_type(once, kauffman2, 0).applicable
    assert not verify_coefficient_type(once, kauffman2, 1).applicable
    with pytest.raises(OrderError):
        verify_coefficient_type(once, kauffman2, 3)


def test_type_bound_needs_infinitesimally_symmetric_data():
    base = symmetric_data(2, TruncatedRing(RATIONALS, 1))
    values = base.matrices()
    values["c_plus"] = base.c_plus.scale(2)
    doubled = TortileObjectData(dim=2, ring=base.ring, name="doubled", **values)
    with pytest.raises(FlaggedDataError):
        verify_type_bound(trace_closure(TREFOIL), doubled)
    with pytest.raises(FlaggedDataError):
        type_bound_sweep(trace_closure(TREFOIL), doubled, 1)


def test_vassiliev_coefficients(kauffman2):
    unknot = trace_closure(UNKNOT)
    assert vassiliev_coeff(unknot, kauffman2, 0) == RATIONALS(-2)
    assert vassiliev_coeff(unknot, kauffman2, 2) == RATIONALS(-4)
    with pytest.raises(OrderError):
        vassiliev_coeff(unknot, kauffman2, 3)
    with pytest.raises(BoundaryError):
        vassiliev_coeff(MorseDiagram(slices=(Slice(kind=SliceKind.CUP_L, offset=0),)), kauffman2, 0)


def test_normalized_value(kauffman2):
    assert normalized_value(trace_closure(UNKNOT), kauffman2) == kauffman2.ring.one
    hopf = normalized_value(trace_closure(HOPF), kauffman2)
    unknot = unknot_value(kauffman2)
    assert hopf * unknot * unknot == evaluate(trace_closure(HOPF), kauffman2).scalar


def test_linear_image(kauffman2):
    unknot = trace_closure(UNKNOT)
    assert linear_image(unknot, kauffman2, [1, 1]) == RATIONALS(-2)
    assert linear_image(unknot, kauffman2, [0, 0, RATIONALS(1, 2)]) == RATIONALS(-2)
    with pytest.raises(OrderError):
        linear_image(unknot, kauffman2, [1, 1, 1, 1])


def _framed_variants():
    for word in (UNKNOT, HOPF, TREFOIL):
        for framing in (-1, 0, 1):
            framings = (framing,) + (0,) * (word.strands - 1)
            yield braid(word.strands, word.letters, framings=framings, name=f"{word.name}^{framing}")


@pytest.mark.parametrize("left", list(_framed_variants()), ids=lambda w: w.name)
def test_disjoint_union_is_multiplicative(left, kauffman2):
    a = trace_closure(left)
    for right in _framed_variants():
        report = check_disjoint_union(a, trace_closure(right), kauffman2)
        assert report.passed, right.name
        assert report.union_value == report.product_value
        assert len(report.rows) == 3
        assert all(row.matches for row in report.rows)
        assert report.union_components == report.left_components + report.right_components


def test_disjoint_union_reports_components(kauffman2):
    report = check_disjoint_union(trace_closure(TREFOIL), trace_closure(HOPF), kauffman2)
    assert (report.left_components, report.right_components, report.union_components) == (1, 2, 3)


def _corpus_diagrams():
    diagrams = [trace_closure(word) for word in CORPUS_WORDS]
    diagrams.append(closure(2, (1, -1, 1), framings=(1, 0), singular=(2,), name="singular"))
    diagrams.append(closure(2, (1, 1, 1), singular=(1, 3), twists=((1, 1),), name="doubly"))
    return diagrams


@pytest.mark.parametrize("d", _corpus_diagrams(), ids=lambda d: d.name)
def test_evaluation_commutes_with_reduction(d, kauffman2, kauffman4):
    assert reduce_order(evaluate(d, kauffman4).scalar, 2) == evaluate(d, kauffman2).scalar
    assert evaluate(d, reduce_data(kauffman4, 2)).scalar == evaluate(d, kauffman2).scalar


@pytest.mark.parametrize("order", [0, 1, 2])
def test_type_bound_is_sharp_over_the_corpus(order):
    data = kauffman_data(order)
    diagrams = [trace_closure(word) for word in CORPUS_WORDS]
    checked = 0
    for d in diagrams:
        for singular in singularization_patterns(d, order + 1):
            assert evaluate(singular, data).scalar.is_zero(), singular.name
            checked += 1
    assert checked > 0
    witnesses = [s.name for d in diagrams for s in singularization_patterns(d, order)
                 if not evaluate(s, data).scalar.is_zero()]
    assert witnesses


def test_trefoil_is_told_apart_from_the_unknot(kauffman2):
    word = braid(2, (1, 1, 1), framings=(-3, 0), name="trefoil0")
    trefoil = normalized_value(trace_closure(word), kauffman2)
    unknot = normalized_value(trace_closure(UNKNOT), kauffman2)
    assert trefoil.coefficient(1) == unknot.coefficient(1) == RATIONALS.zero
    assert trefoil.coefficient(2) == RATIONALS(-48)
    assert trefoil.coefficient(2) != unknot.coefficient(2)
    expected = laurent_to_series(kauffman_bracket(word), 2) / laurent_to_series(kauffman_bracket(UNKNOT), 2)
    assert trefoil == expected


def _words(generators, max_length):
    for length in range(1, max_length + 1):
        yield from product(generators, repeat=length)


def test_every_short_braid_matches_the_state_sum(kauffman4):
    corpus = [braid(2, w, framings=f) for w in _words((1, -1), 4) for f in product((-1, 0, 1), repeat=2)]
    corpus += [braid(3, w) for w in _words((1, -1, 2, -2), 3)]
    rng = random.Random(7)
    for _ in range(10):
        length = rng.randint(5, 6)
        corpus.append(braid(3, [rng.choice((1, -1, 2, -2)) for _ in range(length)],
                            framings=[rng.randint(-1, 1) for _ in range(3)]))
    for word in corpus:
        expected = laurent_to_series(kauffman_bracket(word), 4)
        assert evaluate(trace_closure(word), kauffman4).scalar == expected, (word.letters, word.framings)
