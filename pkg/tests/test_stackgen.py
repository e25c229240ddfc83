"""Builders for stacked families, hyperplane stacking, and the recognizer."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aspoly.complexes import (
    ASPComplex,
    SimplicialComplex,
    boundary_of_ball,
    f_vector,
    is_stacked_sphere,
    prime_decomposition,
    validate_asp,
)
from aspoly.enumerative import (
    ASPParams,
    check_asp_bounds,
    f_almost_stacked,
    phi,
)
from aspoly.errors import (
    DomainError,
    InvalidMoveError,
    ShapeError,
    UnsupportedRegimeError,
)
from aspoly.gale import almost_cyclic_facets
from aspoly.stackgen import (
    Move,
    StackingScript,
    almost_stacked,
    apply_script,
    h_stack,
    pyramid,
    random_minimizer,
    random_scripts,
    recognize_minimizer,
    stack_over,
    stacked_sphere,
    trivial_asp,
)

EMPTY = StackingScript(())


def index_script(*idx):
    return StackingScript(tuple(Move("stack", i) for i in idx))


def cyclic_ball(d, n, s):
    p = ASPParams(d, n, s)
    facets = almost_cyclic_facets(p)
    ball = SimplicialComplex.from_facets([frozenset(f) for f in facets[1:]])
    asp = ASPComplex(p, ball, frozenset(range(1, d + s + 1)), None)
    validate_asp(asp)
    return asp


def octahedron():
    return SimplicialComplex.from_facets(
        [frozenset({a, b, c}) for a in (1, 2) for b in (3, 4) for c in (5, 6)]
    )


class TestStackedSphere:
    def test_simplex_boundary_base(self):
        sphere = stacked_sphere(3, 4, EMPTY)
        assert f_vector(sphere).entries == (1, 4, 6, 4)

    def test_frozen_f_vector_4_8(self):
        sphere = stacked_sphere(4, 8, index_script(0, 1, 2))
        assert f_vector(sphere).entries == (1, 8, 22, 28, 14)
        assert is_stacked_sphere(sphere)

    def test_f_matches_phi_regardless_of_script(self):
        for seed in range(5):
            _, sp = random_scripts(ASPParams(4, 13, 0), seed)
            sphere = stacked_sphere(4, 9, StackingScript(sp.moves[:4]))
            fv = f_vector(sphere)
            assert all(fv.f(k) == phi(4, 9, k) for k in range(1, 4))

    def test_script_length_enforced(self):
        with pytest.raises(ShapeError):
            stacked_sphere(4, 8, index_script(0))

    def test_index_out_of_range(self):
        with pytest.raises(InvalidMoveError):
            stacked_sphere(3, 5, index_script(4))

    def test_explicit_facet_selector(self):
        sphere = stacked_sphere(3, 5, StackingScript((Move("stack", (1, 2, 3)),)))
        assert frozenset({1, 2, 3}) not in sphere.facets
        assert frozenset({1, 2, 5}) in sphere.facets

    def test_explicit_selector_must_be_facet(self):
        with pytest.raises(InvalidMoveError):
            stacked_sphere(3, 5, StackingScript((Move("stack", (1, 2, 5)),)))

    def test_hstack_move_rejected(self):
        with pytest.raises(InvalidMoveError):
            stacked_sphere(3, 5, StackingScript((Move("hstack", 0),)))


class TestPyramid:
    def test_over_octahedron_counts(self):
        cone = pyramid(octahedron(), 7)
        assert f_vector(cone).entries == (1, 7, 18, 20, 8)

    def test_apex_collision(self):
        with pytest.raises(DomainError):
            pyramid(octahedron(), 3)


class TestAlmostStacked:
    def test_frozen_4_8_2(self):
        sf, sp = random_scripts(ASPParams(4, 8, 2), 7)
        asp = almost_stacked(ASPParams(4, 8, 2), sf, sp)
        assert f_vector(asp.ball).entries == (1, 8, 22, 26, 11)
        assert asp.f_polytope().entries == (1, 8, 22, 26, 12)
        assert asp.special_facet == frozenset(range(1, 7))
        assert asp.f_triangulation is not None
        assert asp.f_triangulation.n_facets == 3

    def test_dimension_three_profile(self):
        sf, sp = random_scripts(ASPParams(3, 7, 2), 1)
        asp = almost_stacked(ASPParams(3, 7, 2), sf, sp)
        assert asp.f_polytope().entries == (1, 7, 13, 8)

    def test_matches_formula_many_cells(self):
        for (d, n, s) in [(3, 6, 1), (4, 9, 1), (5, 9, 2), (6, 11, 3)]:
            p = ASPParams(d, n, s)
            sf, sp = random_scripts(p, d + n + s)
            asp = almost_stacked(p, sf, sp)
            assert asp.f_polytope().entries == f_almost_stacked(p).entries

    def test_s_zero_is_stacked_sphere_minus_facet(self):
        p = ASPParams(4, 7, 0)
        _, sp = random_scripts(p, 2)
        asp = almost_stacked(p, EMPTY, sp)
        sphere = SimplicialComplex.from_facets(
            asp.ball.facets | {asp.special_facet}
        )
        assert is_stacked_sphere(sphere)
        assert asp.special_facet == frozenset(range(1, 5))

    def test_triangulation_matches_boundary_prime_factors(self):
        p = ASPParams(4, 9, 3)
        sf, sp = random_scripts(p, 11)
        asp = almost_stacked(p, sf, sp)
        factors = prime_decomposition(boundary_of_ball(asp.ball)).factors
        assert {frozenset(f.vertex_ids) for f in factors} == asp.f_triangulation.facets

    def test_hstack_move_rejected_in_ball_script(self):
        p = ASPParams(4, 8, 2)
        sf, _ = random_scripts(p, 7)
        with pytest.raises(InvalidMoveError):
            almost_stacked(p, sf, StackingScript((Move("hstack", 0),)))

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10**6), st.sampled_from([(4, 8, 2), (5, 9, 2), (4, 9, 0)]))
    def test_f_independent_of_script(self, seed, cell):
        p = ASPParams(*cell)
        sf, sp = random_scripts(p, seed)
        asp = almost_stacked(p, sf, sp)
        assert asp.f_polytope().entries == f_almost_stacked(p).entries


class TestHStack:
    def test_base_case_frozen(self):
        asp = h_stack(trivial_asp(4), 0)
        assert asp.params == ASPParams(4, 6, 1)
        assert asp.f_polytope().entries == f_almost_stacked(ASPParams(4, 6, 1)).entries
        assert len(asp.special_facet) == 5
        assert asp.f_triangulation.n_facets == 2

    def test_ball_gains_d_minus_two_facets(self):
        base = trivial_asp(5)
        grown = h_stack(base, 1)
        assert grown.ball.n_facets == base.ball.n_facets + 3

    def test_chain_stays_on_lower_bound(self):
        asp = trivial_asp(5)
        for i in range(4):
            asp = h_stack(asp, i % 3)
            validate_asp(asp)
            assert asp.f_polytope().entries == f_almost_stacked(asp.params).entries
            report = check_asp_bounds(asp.f_polytope(), asp.params)
            assert all(v.lower_ok and v.upper_ok for v in report.verdicts)

    def test_selector_must_lie_on_special_facet(self):
        asp = trivial_asp(4)
        ball_facet = tuple(sorted(next(iter(asp.ball.facets))))
        with pytest.raises(InvalidMoveError):
            h_stack(asp, ball_facet)

    def test_mixed_script_parameter_arithmetic(self):
        script = StackingScript(
            (Move("hstack", 0), Move("stack", 0), Move("hstack", 1))
        )
        asp = apply_script(trivial_asp(4), script)
        assert asp.params == ASPParams(4, 8, 2)
        validate_asp(asp)

    def test_stack_over_keeps_special_facet(self):
        asp = stack_over(trivial_asp(4), 0)
        assert asp.params == ASPParams(4, 6, 0)
        assert asp.special_facet == frozenset(range(1, 5))


class TestScripts:
    def test_json_roundtrip(self):
        script = StackingScript(
            (Move("stack", 3), Move("hstack", (1, 2, 4)), Move("stack", (5, 6, 7)))
        )
        assert StackingScript.from_json(script.to_json()) == script

    def test_unknown_kind_rejected(self):
        with pytest.raises(DomainError):
            Move("wedge", 0)

    def test_random_scripts_always_in_range(self):
        for seed in range(20):
            p = ASPParams(5, 12, 3)
            asp = almost_stacked(p, *random_scripts(p, seed))
            assert asp.params == p


class TestRecognizeMinimizer:
    def test_dimension_three_unsupported(self):
        p = ASPParams(3, 7, 2)
        asp = almost_stacked(p, *random_scripts(p, 0))
        with pytest.raises(UnsupportedRegimeError):
            recognize_minimizer(asp)

    def test_trivial_simplex(self):
        verdict = recognize_minimizer(trivial_asp(4))
        assert verdict.is_minimizer
        assert verdict.regime == "d4"

    def test_almost_stacked_d4(self):
        p = ASPParams(4, 8, 2)
        verdict = recognize_minimizer(almost_stacked(p, *random_scripts(p, 7)))
        assert verdict.is_minimizer
        assert any(r.is_pyramid_over_f_factor for r in verdict.factor_reports)

    def test_almost_stacked_d5(self):
        p = ASPParams(5, 9, 2)
        verdict = recognize_minimizer(almost_stacked(p, *random_scripts(p, 7)))
        assert verdict.is_minimizer
        assert verdict.regime == "dGT4"
        assert all(r.is_simplex for r in verdict.factor_reports)

    def test_hstack_family_d4_and_d5(self):
        for d in (4, 5):
            asp = random_minimizer(ASPParams(d, d + 5, 2), 11, style="hstack")
            assert recognize_minimizer(asp).is_minimizer

    def test_pyramid_over_octahedron(self):
        asp = ASPComplex(
            ASPParams(4, 7, 2), pyramid(octahedron(), 7), frozenset(range(1, 7)), None
        )
        validate_asp(asp)
        assert asp.f_polytope().entries == f_almost_stacked(ASPParams(4, 7, 2)).entries
        verdict = recognize_minimizer(asp)
        assert verdict.is_minimizer
        assert len(verdict.factor_reports) == 1
        assert verdict.factor_reports[0].is_pyramid_over_f_factor
        assert not verdict.factor_reports[0].is_simplex

    def test_maximizers_rejected(self):
        for (d, n, s) in [(4, 8, 2), (4, 9, 1), (5, 9, 2), (6, 11, 3)]:
            asp = cyclic_ball(d, n, s)
            assert not recognize_minimizer(asp).is_minimizer

    def test_json_verdict_shape(self):
        verdict = recognize_minimizer(trivial_asp(5))
        data = verdict.to_json()
        assert data["is_minimizer"] is True
        assert data["regime"] == "dGT4"
        assert all("vertices" in f for f in data["factors"])

    @settings(max_examples=15, deadline=None)
    @given(
        st.integers(0, 10**6),
        st.sampled_from([(4, 8, 1), (4, 9, 2), (5, 9, 1)]),
        st.sampled_from(["stack", "hstack"]),
    )
    def test_generated_minimizers_always_accepted(self, seed, cell, style):
        asp = random_minimizer(ASPParams(*cell), seed, style=style)
        assert recognize_minimizer(asp).is_minimizer
        assert asp.f_polytope().entries == f_almost_stacked(asp.params).entries
