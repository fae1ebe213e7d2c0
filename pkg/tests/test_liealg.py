"""Brackets, forms and maps of the three Lie algebras."""

import itertools
import random

import pytest

from qvir.liealg import (
    BracketOracle,
    C_LABEL,
    DEFAULT_ORACLE,
    SPACE_AUX,
    SPACE_D,
    SPACE_GL,
    bracket,
    canon_gen,
    check_invariance,
    check_jacobi,
    embed_aux,
    format_label,
    format_lie,
    g_tau,
    gen_D,
    gen_E,
    gen_c,
    gen_d,
    pair_form,
    parse_label,
    sigma_shift,
    tau,
)
from qvir.linear import Element
from qvir.ratfunc import ONE, RatQ, ZERO, normalize, parse_ratq, q_power_minus_inverse, qint


def ratq(text):
    return parse_ratq(text)


class TestCanonical:
    def test_zero_index_collapses(self):
        assert canon_gen(SPACE_D, 0, 5).is_zero()
        assert canon_gen(SPACE_AUX, 0, 5).is_zero()

    def test_negative_index_flips_sign(self):
        assert canon_gen(SPACE_AUX, -2, 3) == -gen_d(2, 3)
        assert canon_gen(SPACE_D, -1, 4) == -gen_D(1, 4)

    def test_already_canonical(self):
        assert canon_gen(SPACE_D, 3, -1) == Element.single(SPACE_D, ("D", 3, -1))


class TestBracketD:
    def test_one_two_vs_one_minus_two(self):
        # [D^1(2), D^1(-2)] = (q^-4 - q^4) D^2(0) + (2 - q^2 - q^-2) c
        got = bracket(gen_D(1, 2), gen_D(1, -2))
        want = gen_D(2, 0).scaled(-q_power_minus_inverse(4)) + gen_c().scaled(
            ratq("-1*q^-2 + 2 - 1*q^2")
        )
        assert got == want

    def test_central_part_cancels(self):
        # [D^1(1), D^1(-1)] = (q^-2 - q^2) D^2(0), no central term
        got = bracket(gen_D(1, 1), gen_D(1, -1))
        assert got == gen_D(2, 0).scaled(-q_power_minus_inverse(2))
        assert C_LABEL not in got.terms

    def test_central_element_is_central(self):
        for alpha, n in [(1, 0), (2, -3), (3, 5)]:
            assert bracket(gen_D(alpha, n), gen_c()).is_zero()
            assert bracket(gen_c(), gen_D(alpha, n)).is_zero()

    def test_central_term_needs_opposite_modes(self):
        for a, n, b, m in [(1, 1, 1, 2), (2, 0, 1, 3), (1, -2, 2, -1)]:
            got = bracket(gen_D(a, n), gen_D(b, m))
            assert C_LABEL not in got.terms

    def test_index_bound(self):
        # output never contains an index above a + b
        for a, b in itertools.product(range(1, 4), repeat=2):
            got = bracket(gen_D(a, 2), gen_D(b, -1))
            for label in got.terms:
                if label != C_LABEL:
                    assert 1 <= label[1] <= a + b

    def test_tag_mismatch_rejected(self):
        with pytest.raises(ValueError):
            bracket(gen_D(1, 0), gen_d(1, 0))


class TestBracketAux:
    def test_single_surviving_delta(self):
        assert bracket(gen_d(1, 0), gen_d(1, 2)) == gen_d(2, 1)

    def test_all_deltas_vanish(self):
        assert bracket(gen_d(1, 0), gen_d(1, 1)).is_zero()

    def test_skew_on_equal_labels(self):
        assert bracket(gen_d(2, 3), gen_d(2, 3)).is_zero()


class TestBracketGl:
    def test_chain(self):
        assert bracket(gen_E(1, 2), gen_E(2, 3)) == gen_E(1, 3)

    def test_disjoint(self):
        assert bracket(gen_E(1, 2), gen_E(3, 4)).is_zero()

    def test_both_deltas(self):
        assert bracket(gen_E(1, 2), gen_E(2, 1)) == gen_E(1, 1) - gen_E(2, 2)

    def test_even_parity_closed(self):
        units = [(i, j) for i in range(-2, 3) for j in range(-2, 3) if (i + j) % 2 == 0]
        for (i, j), (k, l) in itertools.product(units, repeat=2):
            got = bracket(gen_E(i, j), gen_E(k, l))
            for (_, m, n) in got.terms:
                assert (m + n) % 2 == 0


class TestTauAndHooks:
    def test_tau_flips(self):
        assert tau(gen_E(3, 5)) == -gen_E(5, 3)
        assert tau(gen_E(2, 2)) == -gen_E(2, 2)

    def test_tau_involution(self):
        rng = random.Random(7)
        for _ in range(20):
            a = Element.zero(SPACE_GL)
            for _ in range(3):
                a = a + gen_E(rng.randint(-4, 4), rng.randint(-4, 4)).scaled(
                    RatQ.from_int(rng.randint(-3, 3))
                )
            assert tau(tau(a)) == a

    def test_tau_fixes_hooks(self):
        for alpha in range(-3, 4):
            for m in range(-3, 4):
                assert tau(g_tau(alpha, m)) == g_tau(alpha, m)

    def test_hook_values(self):
        assert g_tau(1, 0) == gen_E(1, -1) - gen_E(-1, 1)
        assert g_tau(0, 5).is_zero()

    def test_hook_odd(self):
        for alpha in range(1, 4):
            for m in range(-3, 4):
                assert g_tau(-alpha, m) == -g_tau(alpha, m)


class TestEmbedding:
    def test_generator_image(self):
        assert embed_aux(gen_d(1, 0)) == gen_E(-1, 1) - gen_E(1, -1)

    def test_zero(self):
        assert embed_aux(Element.zero(SPACE_AUX)).is_zero()

    def test_homomorphism_on_range(self):
        gens = [(a, r) for a in range(1, 4) for r in range(-2, 3)]
        for (a, r), (b, s) in itertools.product(gens, repeat=2):
            x, y = gen_d(a, r), gen_d(b, s)
            assert embed_aux(bracket(x, y)) == bracket(embed_aux(x), embed_aux(y))

    def test_injective_on_basis_range(self):
        gens = [(a, r) for a in range(1, 5) for r in range(-3, 4)]
        images = {}
        for a, r in gens:
            img = embed_aux(gen_d(a, r))
            key = tuple(sorted(img.terms))
            assert key not in images
            images[key] = (a, r)

    def test_form_pullback_is_minus_two(self):
        gens = [(a, r) for a in range(1, 4) for r in range(-2, 3)]
        minus_two = RatQ.from_int(-2)
        for (a, r), (b, s) in itertools.product(gens, repeat=2):
            x, y = gen_d(a, r), gen_d(b, s)
            assert pair_form(embed_aux(x), embed_aux(y)) == minus_two * pair_form(x, y)


class TestForms:
    def test_gl_trace_form(self):
        assert pair_form(gen_E(1, 2), gen_E(2, 1)) == ONE
        assert pair_form(gen_E(1, 2), gen_E(1, 2)) == ZERO

    def test_aux_form(self):
        assert pair_form(gen_d(1, 3), gen_d(1, 3)) == ONE
        assert pair_form(gen_d(1, 0), gen_d(2, 0)) == ZERO
        assert pair_form(gen_d(1, 0), gen_d(1, 1)) == ZERO

    def test_invariance_samples(self):
        ok, res = check_invariance(gen_d(1, 0), gen_d(1, 2), gen_d(2, 1))
        assert ok, format_lie(res) if isinstance(res, Element) else str(res)
        ok, _ = check_invariance(gen_E(1, 2), gen_E(2, 3), gen_E(3, 1))
        assert ok

    def test_invariance_with_zero(self):
        ok, _ = check_invariance(gen_d(1, 0), Element.zero(SPACE_AUX), gen_d(2, 1))
        assert ok


class TestSigma:
    def test_shift(self):
        assert sigma_shift(2, gen_d(1, 0)) == gen_d(1, 2)

    def test_identity_and_inverse(self):
        rng = random.Random(3)
        for _ in range(20):
            a = Element.zero(SPACE_AUX)
            for _ in range(3):
                a = a + gen_d(rng.randint(1, 4), rng.randint(-4, 4)).scaled(
                    RatQ.from_int(rng.randint(-3, 3))
                )
            assert sigma_shift(0, a) == a
            m = rng.randint(-5, 5)
            assert sigma_shift(-m, sigma_shift(m, a)) == a

    def test_preserves_bracket_and_form(self):
        gens = [(a, r) for a in range(1, 4) for r in range(-2, 3)]
        for m in range(-3, 4):
            for (a, r), (b, s) in itertools.product(gens, repeat=2):
                x, y = gen_d(a, r), gen_d(b, s)
                assert sigma_shift(m, bracket(x, y)) == bracket(
                    sigma_shift(m, x), sigma_shift(m, y)
                )
                assert pair_form(sigma_shift(m, x), sigma_shift(m, y)) == pair_form(x, y)


class TestJacobiAndSkew:
    def gens_D(self, amax, nmax):
        out = [gen_c()]
        for a in range(1, amax + 1):
            for n in range(-nmax, nmax + 1):
                out.append(gen_D(a, n))
        return out

    def test_jacobi_spot_checks(self):
        ok, res = check_jacobi(gen_D(1, 1), gen_D(2, -1), gen_D(1, 0))
        assert ok, format_lie(res)
        ok, res = check_jacobi(gen_d(1, 0), gen_d(2, 1), gen_d(3, -1))
        assert ok, format_lie(res)
        ok, res = check_jacobi(gen_E(1, 2), gen_E(2, 1), gen_E(1, 1))
        assert ok, format_lie(res)

    def test_skew_symmetry_all_spaces(self):
        dgens = self.gens_D(3, 2)
        for x, y in itertools.product(dgens, repeat=2):
            assert (bracket(x, y) + bracket(y, x)).is_zero()
        agens = [gen_d(a, r) for a in range(1, 4) for r in range(-2, 3)]
        for x, y in itertools.product(agens, repeat=2):
            assert (bracket(x, y) + bracket(y, x)).is_zero()

    def test_jacobi_exhaustive_small(self):
        dgens = self.gens_D(2, 2)
        for x, y, z in itertools.product(dgens, repeat=3):
            ok, res = check_jacobi(x, y, z)
            assert ok, format_lie(res)

    def test_jacobi_random_wide(self):
        rng = random.Random(11)
        for _ in range(100):
            x = gen_D(rng.randint(1, 6), rng.randint(-6, 6))
            y = gen_D(rng.randint(1, 6), rng.randint(-6, 6))
            z = gen_D(rng.randint(1, 6), rng.randint(-6, 6))
            ok, res = check_jacobi(x, y, z)
            assert ok, format_lie(res)


class TestOracle:
    def test_cache_transparent(self):
        cached = BracketOracle(cache={})
        pairs = [(gen_D(1, 2), gen_D(1, -2)), (gen_D(2, 1), gen_D(1, 1))]
        for x, y in pairs:
            assert cached.bracket(x, y) == DEFAULT_ORACLE.bracket(x, y)
            # second call hits the cache
            assert cached.bracket(x, y) == DEFAULT_ORACLE.bracket(x, y)
        assert cached.cache

    def test_corrupt_oracle_breaks_one_constant(self):
        bad = BracketOracle(corrupt=True)
        good = DEFAULT_ORACLE.bracket(gen_D(1, 1), gen_D(1, -1))
        assert bad.bracket(gen_D(1, 1), gen_D(1, -1)) == good + gen_D(1, 0)
        ok, _ = check_jacobi(gen_D(1, 1), gen_D(1, -1), gen_D(1, 2), oracle=bad)
        assert not ok


class TestTextForms:
    def test_labels(self):
        assert format_label(("D", 2, -3)) == "D[2,-3]"
        assert format_label(C_LABEL) == "c"
        assert parse_label("d[1,4]") == ("d", 1, 4)
        assert parse_label("E[-1,2]") == ("E", -1, 2)

    def test_element_text(self):
        e = gen_D(2, 0).scaled(-q_power_minus_inverse(2))
        assert format_lie(e) == "(1*q^-2 - 1*q^2) * D[2,0]"
