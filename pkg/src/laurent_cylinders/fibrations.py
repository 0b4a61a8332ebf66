"""Multiple fibres of monomial fibrations ``x^a y^b t^g`` on ``t^l (x^p + y^q) = 1``."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import sympy


class UnsupportedFibration(ValueError):
    pass


_FACTOR = re.compile(r"^\s*([xyt])\s*(?:\^\s*(-?\d+))?\s*$")


@dataclass(frozen=True)
class FibrationSpec:
    """The map ``(x, y, t) -> x^alpha y^beta t^gamma`` to the affine line."""

    alpha: int
    beta: int
    gamma: int

    def __post_init__(self):
        if (self.alpha != 0) == (self.beta != 0):
            raise UnsupportedFibration("exactly one of the x and y exponents must be nonzero")
        if self.alpha < 0 or self.beta < 0:
            raise UnsupportedFibration("x and y exponents must be non-negative")

    @classmethod
    def parse(cls, text: str) -> "FibrationSpec":
        """Read ``"x^2*t"``, ``"y^5 * t^3"``, ``"x t"``."""
        exps = {"x": 0, "y": 0, "t": 0}
        pieces = [p for p in re.split(r"[*\s]+", text.strip()) if p]
        if not pieces:
            raise UnsupportedFibration("empty monomial")
        for piece in pieces:
            mt = _FACTOR.match(piece)
            if not mt:
                raise UnsupportedFibration(f"cannot read factor {piece!r} in {text!r}")
            exps[mt.group(1)] += int(mt.group(2) or 1)
        return cls(exps["x"], exps["y"], exps["t"])

    def __str__(self) -> str:
        parts = []
        for v, e in (("x", self.alpha), ("y", self.beta), ("t", self.gamma)):
            if e:
                parts.append(v if e == 1 else f"{v}^{e}")
        return "*".join(parts)


@dataclass(frozen=True)
class MultipleFiber:
    location: tuple[Fraction, ...]  # coefficients of a polynomial in c, highest degree first
    distinct_locations: int
    multiplicity: int

    def location_text(self) -> str:
        c = sympy.Symbol("c")
        return str(sympy.Poly([sympy.Rational(x.numerator, x.denominator) for x in self.location], c).as_expr())

    def to_json(self) -> dict:
        return {
            "location_polynomial": self.location_text(),
            "coefficients": [{"num": x.numerator, "den": x.denominator} for x in self.location],
            "distinct_locations": self.distinct_locations,
            "multiplicity": self.multiplicity,
        }


@dataclass(frozen=True)
class FiberReport:
    p: int
    q: int
    ell: int
    spec: FibrationSpec
    fibers: tuple[MultipleFiber, ...]

    @property
    def multiset(self) -> tuple[int, ...]:
        out = []
        for fib in self.fibers:
            out.extend([fib.multiplicity] * fib.distinct_locations)
        return tuple(sorted(out))

    def to_json(self) -> dict:
        return {
            "artifact": "fiber-report",
            "p": self.p,
            "q": self.q,
            "ell": self.ell,
            "map": str(self.spec),
            "multiple_fibers": [f.to_json() for f in self.fibers],
            "multiset": list(self.multiset),
        }


_C = sympy.Symbol("c")


def _fiber(h: sympy.Poly, multiplicity: int) -> MultipleFiber:
    coeffs = tuple(Fraction(int(r.p), int(r.q)) for r in h.all_coeffs())
    return MultipleFiber(coeffs, sympy.sqf_part(h).degree(), multiplicity)


def degenerate_fibers(p: int, q: int, ell: int, spec: FibrationSpec) -> FiberReport:
    """Multiple fibres of ``spec`` on ``t^ell (x^p + y^q) = 1``.

    Solving the fibre equation for the x (or y) block and substituting leaves
    ``y^q = h(c) t^-ell`` (or ``x^p = ...``); the fibres over roots of ``h``
    have multiplicity ``q`` (or ``p``), and when the solved block is the full
    power ``x^p`` (or ``y^q``) the fibre over ``c = 0`` has multiplicity ``p``
    (or ``q``).  Multiplicities below 2 are not reported.
    """
    if p < 1 or q < 1 or ell < 1:
        raise UnsupportedFibration("need p, q, ell >= 1")
    if gcd(p, q) != 1:
        raise UnsupportedFibration(f"gcd({p}, {q}) != 1")
    if spec.alpha:
        solved, power, other_power = spec.alpha, p, q
    else:
        solved, power, other_power = spec.beta, q, p
    if solved not in (1, power):
        raise UnsupportedFibration(f"{spec}: only x, x^p, y, y^q blocks are supported")
    r = power // solved
    # x^power = c^r t^(-gamma r); residual is other^e = t^-ell (1 - c^r t^(ell - gamma r))
    if spec.gamma * r != ell:
        raise UnsupportedFibration(
            f"{spec} on exponent {ell}: residual equation keeps a power of t, not of the form other^e = h(c) t^-k"
        )
    h = sympy.Poly(1 - _C ** r, _C, domain="QQ")
    fibers = []
    if other_power >= 2:
        fibers.append(_fiber(h, other_power))
    if solved == power and power >= 2:
        fibers.append(_fiber(sympy.Poly(_C, _C, domain="QQ"), power))
    for fib in fibers:
        assert (p * q) % fib.multiplicity == 0
    return FiberReport(p, q, ell, spec, tuple(fibers))


def compare_fiber_multisets(r1: FiberReport, r2: FiberReport) -> str:
    """``"equal"`` when the multiplicities, counted once per distinct location, agree."""
    return "equal" if r1.multiset == r2.multiset else "distinct"
