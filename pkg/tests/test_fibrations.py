import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from laurent_cylinders.certificates import CANONICAL_23
from laurent_cylinders.fibrations import (
    FibrationSpec,
    UnsupportedFibration,
    compare_fiber_multisets,
    degenerate_fibers,
)

c = sympy.Symbol("c")


def locations(report):
    return {fib.multiplicity: sympy.Poly(fib.location_text(), c) for fib in report.fibers}


class TestParse:
    @pytest.mark.parametrize(
        "text,expected",
        [("x^2*t", (2, 0, 1)), ("x t", (1, 0, 1)), ("y^5 * t^3", (0, 5, 3)), ("y*t*t", (0, 1, 2))],
    )
    def test_forms(self, text, expected):
        s = FibrationSpec.parse(text)
        assert (s.alpha, s.beta, s.gamma) == expected

    @pytest.mark.parametrize("text", ["", "z^2", "x*y*t", "t^3", "x^-1*t"])
    def test_rejected(self, text):
        with pytest.raises(UnsupportedFibration):
            FibrationSpec.parse(text)

    def test_str_round_trip(self):
        for text in ("x^2*t", "x*t", "y^5*t^3"):
            assert str(FibrationSpec.parse(text)) == text


class TestExamples:
    def test_ell_1(self):
        r = degenerate_fibers(2, 3, 1, FibrationSpec.parse("x^2*t"))
        assert r.multiset == (2, 3)
        locs = locations(r)
        assert locs[2] == sympy.Poly(c, c)
        assert locs[3] == sympy.Poly(1 - c, c)

    def test_ell_2(self):
        r = degenerate_fibers(2, 3, 2, FibrationSpec.parse("x*t"))
        assert r.multiset == (3, 3)
        assert locations(r)[3] == sympy.Poly(1 - c**2, c)
        assert r.fibers[0].distinct_locations == 2

    def test_ell_3(self):
        r = degenerate_fibers(2, 3, 3, FibrationSpec.parse("y*t"))
        assert r.multiset == (2, 2, 2)
        assert locations(r)[2] == sympy.Poly(1 - c**3, c)

    def test_fermat_25(self):
        r1 = degenerate_fibers(2, 5, 1, FibrationSpec.parse("y^5*t"))
        r3 = degenerate_fibers(2, 5, 3, FibrationSpec.parse("y^5*t^3"))
        assert r1.multiset == r3.multiset == (2, 5)
        assert locations(r1)[5] == sympy.Poly(c, c)
        assert locations(r1)[2] == sympy.Poly(1 - c, c)


class TestUnsupported:
    def test_wrong_block(self):
        with pytest.raises(UnsupportedFibration):
            degenerate_fibers(2, 5, 1, FibrationSpec.parse("y^2*t"))

    def test_residual_keeps_t(self):
        with pytest.raises(UnsupportedFibration):
            degenerate_fibers(2, 3, 1, FibrationSpec.parse("x*t"))

    def test_non_coprime(self):
        with pytest.raises(UnsupportedFibration):
            degenerate_fibers(2, 4, 2, FibrationSpec.parse("x*t"))


class TestCompare:
    def test_distinct(self):
        a = degenerate_fibers(2, 3, 1, CANONICAL_23[1])
        b = degenerate_fibers(2, 3, 2, CANONICAL_23[2])
        assert compare_fiber_multisets(a, b) == "distinct"

    def test_equal(self):
        a = degenerate_fibers(2, 3, 1, CANONICAL_23[1])
        assert compare_fiber_multisets(a, a) == "equal"

    def test_fermat_25_equal(self):
        r1 = degenerate_fibers(2, 5, 1, FibrationSpec.parse("y^5*t"))
        r3 = degenerate_fibers(2, 5, 3, FibrationSpec.parse("y^5*t^3"))
        assert compare_fiber_multisets(r1, r3) == "equal"

    def test_trichotomy(self):
        reports = [degenerate_fibers(2, 3, ell, spec) for ell, spec in CANONICAL_23.items()]
        assert len({r.multiset for r in reports}) == 3


def test_json():
    data = degenerate_fibers(2, 3, 3, CANONICAL_23[3]).to_json()
    assert data["multiset"] == [2, 2, 2]
    assert data["multiple_fibers"][0]["distinct_locations"] == 3
    assert data["map"] == "y*t"


# -- properties -------------------------------------------------------------------


@st.composite
def supported_cases(draw):
    p = draw(st.integers(1, 9))
    q = draw(st.integers(1, 9).filter(lambda q: sympy.gcd(p, q) == 1))
    on_x = draw(st.booleans())
    power = p if on_x else q
    solved = draw(st.sampled_from(sorted({1, power})))
    r = power // solved
    gamma = draw(st.integers(1, 6))
    ell = gamma * r
    spec = FibrationSpec(solved, 0, gamma) if on_x else FibrationSpec(0, solved, gamma)
    return p, q, ell, spec


@given(supported_cases())
def test_multiplicities_divide_pq(case):
    p, q, ell, spec = case
    r = degenerate_fibers(p, q, ell, spec)
    for fib in r.fibers:
        assert fib.multiplicity >= 2
        assert (p * q) % fib.multiplicity == 0
        poly = sympy.Poly([sympy.Rational(x.numerator, x.denominator) for x in fib.location], c)
        # independent count: distinct complex roots
        assert fib.distinct_locations == len(sympy.roots(poly, multiple=False))


@given(supported_cases())
def test_multiset_stable_under_recomputation(case):
    p, q, ell, spec = case
    assert degenerate_fibers(p, q, ell, spec).multiset == degenerate_fibers(p, q, ell, spec).multiset


@given(st.integers(1, 6), st.integers(1, 4))
def test_roots_of_unity_count(r, gamma):
    # y-block of x^2 + y^(2r+1): fibres of multiplicity 2 over the 2r+1 roots of 1 - c^(2r+1)
    q = 2 * r + 1
    rep = degenerate_fibers(2, q, q * gamma, FibrationSpec(0, 1, gamma))
    assert rep.multiset == (2,) * q
