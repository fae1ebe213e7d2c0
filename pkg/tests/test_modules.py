"""PBW straightening, module actions, vertex coefficients, field operators."""

import itertools

import pytest

from qvir.liealg import central_correction
from qvir.linear import Element
from qvir.modules import (
    InducedModule,
    act_central,
    act_mode,
    apply_aux_element,
    borcherds_residual,
    corrected_apply,
    element_degree,
    format_monomial,
    format_vector,
    graded_twist,
    homogeneous_parts,
    monomial_degree,
    pbw_normalize,
    phi_field_apply,
    quasi_field_apply,
    sigma_on_v,
    vertex_coeff,
    weight_grade,
)
from qvir.ratfunc import ONE, RatQ, parse_ratq, q_power_minus_inverse


LEVEL = parse_ratq("1")


@pytest.fixture
def V():
    return InducedModule.affine_vacuum(LEVEL)


@pytest.fixture
def M():
    return InducedModule.virasoro_highest_weight(LEVEL)


def mono_v(module, *factors):
    return Element.single(module.space, tuple(factors))


class TestStraightening:
    def test_ordered_monomial_unchanged(self, V):
        factors = ((-2, 1, 0), (-1, 1, 2))
        assert pbw_normalize(V, factors) == mono_v(V, *factors)

    def test_swap_with_bracket_term(self, V):
        # d[1,2](-1) d[1,0](-2) = d[1,0](-2) d[1,2](-1) - d[2,1](-3)
        got = pbw_normalize(V, ((-1, 1, 2), (-2, 1, 0)))
        want = mono_v(V, (-2, 1, 0), (-1, 1, 2)) - mono_v(V, (-3, 2, 1))
        assert got == want

    def test_repeated_factor(self, V):
        factors = ((-1, 1, 0), (-1, 1, 0))
        assert pbw_normalize(V, factors) == mono_v(V, *factors)

    def test_equal_mode_distinct_generators_ordered(self, V):
        a, b = (-1, 1, 0), (-1, 2, 0)
        direct = pbw_normalize(V, (b, a))
        swapped = pbw_normalize(V, (a, b))
        bracket_extra = direct - swapped
        # the difference is exactly the bracket [d(2,0), d(1,0)] at mode -2
        from qvir.liealg import bracket, gen_d

        br = bracket(gen_d(2, 0), gen_d(1, 0))
        want = Element.zero(V.space)
        for (_, g, rr), c in br.terms.items():
            want = want + mono_v(V, (-2, g, rr)).scaled(c)
        assert bracket_extra == want

    def test_rejects_annihilation_modes(self, V):
        with pytest.raises(ValueError, match="creation"):
            pbw_normalize(V, ((0, 1, 0), (-1, 1, 0)))


class TestActModes:
    def test_level_pairing(self, V):
        # d[1,0](1) on d[1,0](-1)|vac> gives the level
        w = act_mode(V, (1, 0), -1, V.vacuum())
        assert act_mode(V, (1, 0), 1, w) == V.vacuum().scaled(LEVEL)

    def test_zero_mode_bracket(self, V):
        w = act_mode(V, (1, 2), -1, V.vacuum())
        assert act_mode(V, (1, 0), 0, w) == mono_v(V, (-1, 2, 1))

    def test_highest_weight_central_coefficient(self, M):
        # D[1](2) on D[1](-2)|hw> leaves (2 - q^2 - q^-2) * level
        w = act_mode(M, (1,), -2, M.vacuum())
        got = act_mode(M, (1,), 2, w)
        want = M.vacuum().scaled(parse_ratq("-1*q^-2 + 2 - 1*q^2") * LEVEL)
        assert got == want

    def test_annihilates_vacuum(self, V, M):
        for n in range(0, 4):
            assert act_mode(V, (2, -1), n, V.vacuum()).is_zero()
            assert act_mode(M, (2,), n, M.vacuum()).is_zero()

    def test_central_action(self, V, M):
        for module in (V, M):
            w = act_mode(module, (1,) if module.space == "M" else (1, 0), -2, module.vacuum())
            assert act_central(module, w) == w.scaled(LEVEL)

    def test_restrictedness(self, M):
        # any mode beyond the total depth kills the vector
        vecs = [
            M.vacuum(),
            act_mode(M, (1,), -1, M.vacuum()),
            act_mode(M, (2,), -2, act_mode(M, (1,), -1, M.vacuum())),
        ]
        for w in vecs:
            depth = element_degree(w)
            for alpha in (1, 2, 3):
                for n in range(depth + 1, depth + 4):
                    assert act_mode(M, (alpha,), n, w).is_zero()

    def test_grading_law(self, V):
        w = pbw_normalize(V, ((-2, 1, 0), (-1, 2, 1)))
        d = weight_grade(w)
        for n in range(-2, 3):
            out = act_mode(V, (1, 0), n, w)
            if not out.is_zero():
                assert weight_grade(out) == d - n


class TestGrading:
    def test_vacuum_zero(self, V):
        assert weight_grade(V.vacuum()) == 0

    def test_generator_one(self, V):
        assert weight_grade(mono_v(V, (-1, 2, 3))) == 1

    def test_composite(self, V):
        assert weight_grade(mono_v(V, (-2, 1, 0), (-1, 2, 1))) == 3

    def test_inhomogeneous_error_names_degrees(self, V):
        mixed = V.vacuum() + mono_v(V, (-2, 1, 0))
        with pytest.raises(ValueError, match="degrees 0 and 2"):
            weight_grade(mixed)

    def test_parts(self, V):
        mixed = V.vacuum() + mono_v(V, (-2, 1, 0)).scaled(RatQ.q_power(1))
        parts = homogeneous_parts(mixed)
        assert set(parts) == {0, 2}
        assert parts[0] == V.vacuum()


class TestTwists:
    def test_sigma_shifts_indices(self, V):
        assert sigma_on_v(V, 2, mono_v(V, (-1, 1, 0))) == mono_v(V, (-1, 1, 2))

    def test_twist_fixes_vacuum(self, V):
        for m in (-2, 0, 3):
            assert graded_twist(V, m, V.vacuum()) == V.vacuum()

    def test_twist_scales_by_degree(self, V):
        got = graded_twist(V, 1, mono_v(V, (-2, 1, 0)))
        assert got == mono_v(V, (-2, 1, 1)).scaled(RatQ.q_power(-2))

    def test_sigma_is_module_map(self, V):
        # shifting commutes with the action after shifting the generator
        gens = [(a, r) for a in (1, 2) for r in (-1, 0, 1)]
        w = pbw_normalize(V, ((-2, 1, 0), (-1, 2, 1)))
        for (a, r), m, n in itertools.product(gens, (-1, 1), (-1, 0, 1, 2)):
            lhs = sigma_on_v(V, m, act_mode(V, (a, r), n, w))
            rhs = act_mode(V, (a, r + m), n, sigma_on_v(V, m, w))
            assert lhs == rhs


class TestVertexCoeff:
    def test_vacuum_is_identity_at_minus_one(self, V):
        w = pbw_normalize(V, ((-2, 1, 0), (-1, 2, 1)))
        for m in range(-3, 3):
            got = vertex_coeff(V, V.vacuum(), m, w)
            assert got == (w if m == -1 else V.zero())

    def test_generator_reduces_to_mode_action(self, V):
        u = mono_v(V, (-1, 1, 2))
        w = pbw_normalize(V, ((-2, 2, 0), (-1, 1, 1)))
        for n in range(-3, 4):
            assert vertex_coeff(V, u, n, w) == act_mode(V, (1, 2), n, w)

    def test_creation_property(self, V):
        # u_m |vac> = 0 for m >= 0 and u_{-1}|vac> = u
        samples = [
            mono_v(V, (-1, 1, 0)),
            pbw_normalize(V, ((-2, 1, 0), (-1, 2, 1))),
            pbw_normalize(V, ((-1, 1, 0), (-1, 1, 2))),
        ]
        for u in samples:
            for m in range(0, 3):
                assert vertex_coeff(V, u, m, V.vacuum()).is_zero()
            assert vertex_coeff(V, u, -1, V.vacuum()) == u

    def test_deep_factor_derivative_field(self, V):
        # the field of a(-2)|vac> is the derivative field: its mode m picks up
        # -m * a(m-1), so at m = -2 acting on |vac> it yields 2 a(-3)|vac>
        u = mono_v(V, (-2, 1, 0))
        got = vertex_coeff(V, u, -2, V.vacuum())
        assert got == mono_v(V, (-3, 1, 0)).scaled(RatQ.from_int(2))
        assert vertex_coeff(V, u, -1, V.vacuum()) == u


class TestBorcherds:
    def test_frozen_level_sample(self, V):
        u = mono_v(V, (-1, 1, 0))
        assert borcherds_residual(V, u, u, 1, -1, V.vacuum()).is_zero()
        lhs = vertex_coeff(V, u, 1, vertex_coeff(V, u, -1, V.vacuum()))
        assert lhs == V.vacuum().scaled(LEVEL)

    def test_zero_mode_transport(self, V):
        u = mono_v(V, (-1, 1, 0))
        v = mono_v(V, (-1, 1, 2))
        assert borcherds_residual(V, u, v, 0, -1, V.vacuum()).is_zero()
        got = vertex_coeff(V, u, 0, vertex_coeff(V, v, -1, V.vacuum()))
        assert got == mono_v(V, (-1, 2, 1))

    def test_equal_operators(self, V):
        u = mono_v(V, (-1, 2, 1))
        w = pbw_normalize(V, ((-2, 1, 0), (-1, 1, 1)))
        assert borcherds_residual(V, u, u, 2, 2, w).is_zero()

    def test_generator_pairs_on_depth_two(self, V):
        gens = [mono_v(V, (-1, a, r)) for a in (1, 2) for r in (0, 1)]
        probes = [
            V.vacuum(),
            mono_v(V, (-2, 1, 0)),
            pbw_normalize(V, ((-1, 1, 0), (-1, 2, -1))),
        ]
        for u, v in itertools.product(gens, repeat=2):
            for m, n in ((1, -1), (0, 0), (2, -2), (-1, -1), (1, 0)):
                for w in probes:
                    res = borcherds_residual(V, u, v, m, n, w)
                    assert res.is_zero(), format_vector(res)

    def test_composite_left_argument(self, V):
        u = pbw_normalize(V, ((-1, 1, 0), (-1, 1, 2)))
        v = mono_v(V, (-1, 2, 1))
        for m, n in ((0, -1), (1, -1), (1, -2)):
            res = borcherds_residual(V, u, v, m, n, V.vacuum())
            assert res.is_zero(), format_vector(res)


class TestFieldOperators:
    def test_corrected_zero_mode_constant(self, M):
        got = phi_field_apply(M, 1, 0, 0, M.vacuum())
        assert got == M.vacuum().scaled(-(central_correction(1) * LEVEL))

    def test_quasi_mode_annihilation(self, M):
        w = act_mode(M, (1,), -1, M.vacuum())
        assert quasi_field_apply(M, 1, 0, 1, w).is_zero()

    def test_sign_relation(self, M):
        w = act_mode(M, (2,), -2, M.vacuum())
        for r, n in ((0, -1), (1, 0), (-2, 2)):
            assert quasi_field_apply(M, -1, r, n, w) == -quasi_field_apply(M, 1, r, n, w)
        assert quasi_field_apply(M, 0, 1, 1, w).is_zero()

    def test_shift_index_scaling(self, M):
        # raising r by one multiplies the mode-n operator by q^{-n}
        w = act_mode(M, (1,), -2, M.vacuum())
        for alpha, r, n in itertools.product((1, 2), (-1, 0, 1), (-2, -1, 0, 1, 2)):
            lhs = phi_field_apply(M, alpha, r + 1, n, w)
            rhs = phi_field_apply(M, alpha, r, n, w).scaled(RatQ.q_power(-n))
            assert lhs == rhs

    def test_aux_element_application(self, V):
        from qvir.liealg import gen_d

        elem = gen_d(1, 0) + gen_d(2, 1).scaled(RatQ.q_power(2))
        got = apply_aux_element(V, elem, -1, V.vacuum())
        want = mono_v(V, (-1, 1, 0)) + mono_v(V, (-1, 2, 1)).scaled(RatQ.q_power(2))
        assert got == want


class TestTextForms:
    def test_monomials(self, V, M):
        assert format_monomial("V", ()) == "|vac>"
        assert format_monomial("V", ((-2, 1, 0), (-1, 2, 1))) == "d[1,0](-2) d[2,1](-1) |vac>"
        assert format_monomial("M", ((-3, 2),)) == "D[2](-3) |hw>"

    def test_vector(self, V):
        v = mono_v(V, (-1, 1, 0)).scaled(-q_power_minus_inverse(1))
        assert format_vector(v) == "(1*q^-1 - 1*q^1) * d[1,0](-1) |vac>"
