from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from laurent_cylinders.arith import SquarePair
from laurent_cylinders.catalog import danielewski, fermat
from laurent_cylinders.constructions import (
    ConstructionError,
    build_congruent_iso,
    build_cylinder_iso,
    build_product_iso,
    build_square_iso,
    congruence_data,
    generic_fiber_targets,
)
from laurent_cylinders.poly import LaurentPolynomial
from laurent_cylinders.varieties import compose, is_identity, verify_map

F = fermat(2, 5)
D = danielewski(1, 5)


class TestCongruent:
    def test_plus_sign(self):
        rec = build_congruent_iso(F.f, F.action, 10, 13, 3)
        sig = rec.map.source.signature
        assert (rec.parameters["k"], rec.parameters["sign"]) == (1, 1)
        assert rec.map.images["x"] == LaurentPolynomial.monomial(sig, {"t": 5, "x": 1})
        assert rec.map.images["y"] == LaurentPolynomial.monomial(sig, {"t": 2, "y": 1})
        assert rec.map.images["t"] == LaurentPolynomial.variable(sig, "t")
        assert rec.report.verified

    def test_minus_sign(self):
        rec = build_congruent_iso(F.f, F.action, 10, 7, 3)
        sig = rec.map.source.signature
        assert (rec.parameters["k"], rec.parameters["sign"]) == (1, -1)
        assert rec.map.images["t"] == LaurentPolynomial.monomial(sig, {"t": -1})
        assert rec.report.verified

    def test_equal_exponents_identity(self):
        rec = build_congruent_iso(F.f, F.action, 10, 4, 4)
        assert (rec.parameters["k"], rec.parameters["sign"]) == (0, 1)
        assert is_identity(rec.map)

    def test_plus_preferred_when_both_apply(self):
        assert congruence_data(5, 5, 10) == (0, 1)
        assert congruence_data(15, 5, 10) == (1, 1)

    def test_not_congruent(self):
        with pytest.raises(ConstructionError):
            build_congruent_iso(F.f, F.action, 10, 2, 3)

    def test_wrong_weight(self):
        with pytest.raises(ConstructionError):
            build_congruent_iso(F.f, F.action, 5, 6, 1)

    @given(st.integers(1, 60), st.integers(-5, 5))
    def test_round_trip_composes_to_identity(self, ell, k):
        ell_prime = ell + 10 * k
        assume(ell_prime >= 1)
        there = build_congruent_iso(F.f, F.action, 10, ell, ell_prime, points=3).map
        back = build_congruent_iso(F.f, F.action, 10, ell_prime, ell, points=3).map
        assert is_identity(compose(back, there))


class TestCylinder:
    def test_one_three_map_exact(self):
        rec = build_cylinder_iso(F.f, F.action, 10, 1, 3)
        sig = rec.map.source.signature
        M = lambda **e: LaurentPolynomial.monomial(sig, e)  # noqa: E731
        assert dict(rec.map.images) == {
            "x": M(u=-5, x=1), "y": M(u=-2, y=1), "t": M(t=3, u=10), "u": M(t=-1, u=-3)
        }
        assert rec.parameters["bezout"]["a"] == 3 and rec.parameters["bezout"]["b"] == 0
        assert (rec.parameters["unimodular"]["alpha"], rec.parameters["unimodular"]["beta"]) == (-1, -3)
        assert rec.map.source.ell == 3 and rec.map.target.ell == 1

    def test_equal_exponents_is_torus_automorphism(self):
        rec = build_cylinder_iso(F.f, F.action, 10, 7, 7)
        b = rec.parameters["bezout"]
        assert (b["a"], b["b"]) == (1, 0)
        assert rec.report.verified

    def test_danielewski_example(self):
        rec = build_cylinder_iso(D.f, D.action, 5, 1, 2)
        assert rec.report.verified
        assert rec.report.oracle_passed == rec.report.oracle_points == 200

    def test_gcd_mismatch(self):
        with pytest.raises(ConstructionError):
            build_cylinder_iso(F.f, F.action, 10, 1, 2)

    @given(st.integers(1, 40), st.integers(1, 40), st.sampled_from([F, D, fermat(3, 4), danielewski(2, 7)]))
    def test_sweep_property(self, ell, ell_prime, base):
        assume(gcd(ell, base.m) == gcd(ell_prime, base.m))
        rec = build_cylinder_iso(base.f, base.action, base.m, ell, ell_prime, points=20)
        assert rec.report.verified and rec.report.inverse_check


class TestProduct:
    def test_canonical_example(self):
        rec = build_product_iso(D.f, D.action, D.f, D.action, 5, 1, 1, SquarePair.make(2, 13, 5))
        sig = rec.map.source.signature
        assert rec.map.images["t"] == LaurentPolynomial.monomial(sig, {"t": 2, "s": 5})
        assert rec.map.images["s"] == LaurentPolynomial.monomial(sig, {"t": 5, "s": 13})
        assert [f.ell for f in rec.map.source.factors] == [2, 13]
        assert [f.ell for f in rec.map.target.factors] == [1, 1]
        assert rec.report.verified

    def test_trivial_pair(self):
        G = fermat(1, 2)
        rec = build_product_iso(G.f, G.action, G.f, G.action, 2, 1, 1, SquarePair.make(1, 1, 2))
        sig = rec.map.source.signature
        assert rec.map.images["t"] == LaurentPolynomial.variable(sig, "t")
        assert rec.map.images["s"] == LaurentPolynomial.monomial(sig, {"t": 2, "s": 1})
        assert rec.report.verified

    def test_fermat_pair(self):
        rec = build_product_iso(F.f, F.action, F.f, F.action, 10, 1, 1, SquarePair.make(3, 67, 10))
        assert rec.report.verified

    def test_general_exponents(self):
        rec = build_product_iso(F.f, F.action, F.f, F.action, 10, 3, 7, SquarePair.make(7, 43, 10))
        assert [f.ell for f in rec.map.source.factors] == [21, 301]
        assert rec.report.verified

    def test_pair_for_wrong_modulus(self):
        with pytest.raises(ConstructionError):
            build_product_iso(F.f, F.action, F.f, F.action, 10, 1, 1, SquarePair.make(2, 13, 5))


class TestSquare:
    @pytest.mark.parametrize("base,pair", [(D, (2, 13, 5)), (F, (3, 67, 10)), (D, (3, 17, 5)), (F, (7, 43, 10))])
    def test_verified(self, base, pair):
        rec = build_square_iso(base.f, base.action, base.m, SquarePair.make(*pair))
        a = pair[0]
        assert [f.ell for f in rec.map.source.factors] == [a, a]
        assert [f.ell for f in rec.map.target.factors] == [1, 1]
        assert rec.report.verified
        inner, product = rec.parts
        assert compose(product.map, inner.map) == rec.map

    def test_trivial_pair_gives_identity(self):
        G = fermat(1, 2)
        rec = build_square_iso(G.f, G.action, 2, SquarePair.make(1, 1, 2))
        assert rec.map.source == rec.map.target
        assert rec.report.verified
        assert verify_map(rec.map, points=50).verified


class TestGenericFiberTargets:
    @pytest.mark.parametrize("args,expected", [((1, 3, 10), (3, 7)), ((1, 1, 7), (1, 6)), ((1, 2, 5), (2, 3))])
    def test_examples(self, args, expected):
        assert generic_fiber_targets(*args) == expected

    def test_gcd_violation(self):
        with pytest.raises(ConstructionError):
            generic_fiber_targets(2, 3, 10)


def test_recipe_json_contains_rendered_map():
    data = build_cylinder_iso(F.f, F.action, 10, 1, 3, points=10).to_json()
    assert data["rendered"] == ["x ↦ u^{-5} x", "y ↦ u^{-2} y", "t ↦ t^{3} u^{10}", "u ↦ t^{-1} u^{-3}"]
    assert data["report"]["verdict"] == "verified"
    assert data["oracle_request"] == {"points": 10, "seed": 20160701}
