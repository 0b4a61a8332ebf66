"""Shared strategies and a sympy bridge used as an independent oracle."""

from fractions import Fraction

import sympy
from hypothesis import strategies as st

from laurent_cylinders.poly import LaurentPolynomial, RingSignature

SIG = RingSignature.of(("x", "y"), ("t", "u"))
SYMS = {v: sympy.Symbol(v) for v in SIG.variables}

coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda c: c != 0)


def exponent_vectors(sig=SIG, low=-3, high=3):
    return st.tuples(*[st.integers(low if inv else 0, high) for inv in sig.invertible])


def polynomials(sig=SIG, max_terms=4, low=-3, high=3):
    return st.dictionaries(exponent_vectors(sig, low, high), coefficients, max_size=max_terms).map(
        lambda d: LaurentPolynomial(sig, d)
    )


def units(sig=SIG):
    return st.builds(
        lambda c, e: LaurentPolynomial(sig, {tuple(e[i] if sig.invertible[i] else 0 for i in range(sig.arity)): c}),
        coefficients,
        exponent_vectors(sig),
    )


def nonzero_rationals():
    return st.fractions(min_value=-4, max_value=4, max_denominator=5).filter(lambda c: c != 0)


def to_sympy(p: LaurentPolynomial):
    syms = [sympy.Symbol(v) for v in p.signature.variables]
    expr = sympy.Integer(0)
    for exps, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, exps):
            term *= s ** e
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, sig: RingSignature) -> LaurentPolynomial:
    expr = sympy.expand(expr)
    syms = [sympy.Symbol(v) for v in sig.variables]
    terms = {}
    for term in sympy.Add.make_args(expr):
        if term == 0:
            continue
        coeff, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict()
        exps = tuple(int(powers.get(s, 0)) for s in syms)
        terms[exps] = terms.get(exps, Fraction(0)) + Fraction(int(coeff.p), int(coeff.q))
    return LaurentPolynomial(sig, {e: c for e, c in terms.items() if c})
