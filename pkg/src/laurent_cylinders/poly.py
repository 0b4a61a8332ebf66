"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A polynomial lives over a :class:`RingSignature`: an ordered tuple of
variable names, each flagged invertible (a torus coordinate, may carry
negative exponents) or not.  Terms are stored as a dict from exponent
tuples to nonzero :class:`fractions.Fraction` coefficients, so equality of
polynomials is equality of term maps.

Values are immutable once built; every operation returns a new object.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

Exponents = tuple[int, ...]


class SignatureMismatch(ValueError):
    pass


class InvertibilityError(ValueError):
    """A non-invertible variable would receive a negative exponent."""


@dataclass(frozen=True)
class RingSignature:
    variables: tuple[str, ...]
    invertible: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "invertible", tuple(bool(b) for b in self.invertible))
        if len(self.variables) != len(self.invertible):
            raise ValueError("variables and invertible flags differ in length")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")

    @classmethod
    def of(cls, plain: Sequence[str] = (), torus: Sequence[str] = ()) -> "RingSignature":
        """Signature with the ``plain`` variables first, then the invertible ones."""
        return cls(tuple(plain) + tuple(torus), (False,) * len(plain) + (True,) * len(torus))

    @property
    def arity(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a variable of {self.variables}") from None

    def is_invertible(self, name: str) -> bool:
        return self.invertible[self.index(name)]

    @property
    def plain_variables(self) -> tuple[str, ...]:
        return tuple(v for v, inv in zip(self.variables, self.invertible) if not inv)

    @property
    def torus_variables(self) -> tuple[str, ...]:
        return tuple(v for v, inv in zip(self.variables, self.invertible) if inv)

    def extend(self, names: Iterable[str], invertible: bool = True) -> "RingSignature":
        names = tuple(names)
        clash = set(names) & set(self.variables)
        if clash:
            raise ValueError(f"variable names already in use: {sorted(clash)}")
        return RingSignature(self.variables + names, self.invertible + (invertible,) * len(names))

    def rename(self, mapping: Mapping[str, str]) -> "RingSignature":
        return RingSignature(tuple(mapping.get(v, v) for v in self.variables), self.invertible)

    def to_json(self) -> dict:
        return {"variables": list(self.variables), "invertible": list(self.invertible)}

    @classmethod
    def from_json(cls, data: Mapping) -> "RingSignature":
        return cls(tuple(data["variables"]), tuple(data["invertible"]))


def grlex_key(exps: Exponents) -> tuple:
    return (sum(exps), exps)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(c)


class LaurentPolynomial:
    """Canonical sparse Laurent polynomial over a :class:`RingSignature`."""

    __slots__ = ("signature", "_terms", "_hash")

    def __init__(self, signature: RingSignature, terms: Mapping[Sequence[int], object] | None = None):
        self.signature = signature
        clean: dict[Exponents, Fraction] = {}
        n = signature.arity
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise ValueError(f"exponent vector {exps} does not match arity {n}")
            coeff = _as_fraction(coeff)
            if coeff == 0:
                continue
            clean[exps] = clean.get(exps, Fraction(0)) + coeff
            if clean[exps] == 0:
                del clean[exps]
        _check_exponents(signature, clean)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, signature: RingSignature, terms: dict[Exponents, Fraction]) -> "LaurentPolynomial":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.signature = signature
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, signature: RingSignature) -> "LaurentPolynomial":
        return cls._raw(signature, {})

    @classmethod
    def constant(cls, signature: RingSignature, c=1) -> "LaurentPolynomial":
        c = _as_fraction(c)
        return cls._raw(signature, {(0,) * signature.arity: c} if c else {})

    @classmethod
    def variable(cls, signature: RingSignature, name: str) -> "LaurentPolynomial":
        exps = [0] * signature.arity
        exps[signature.index(name)] = 1
        return cls._raw(signature, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, signature: RingSignature, powers: Mapping[str, int] | Sequence[int], coeff=1) -> "LaurentPolynomial":
        if isinstance(powers, Mapping):
            exps = [0] * signature.arity
            for name, e in powers.items():
                exps[signature.index(name)] += int(e)
        else:
            exps = list(powers)
        return cls(signature, {tuple(exps): coeff})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponents, Fraction]:
        return MappingProxyType(self._terms)

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in decreasing graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_single_term(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """Nonzero constant times a monomial in invertible variables only."""
        if len(self._terms) != 1:
            return False
        (exps,) = self._terms
        return all(e == 0 for e, inv in zip(exps, self.signature.invertible) if not inv)

    def single_term(self) -> tuple[Exponents, Fraction]:
        if len(self._terms) != 1:
            raise ValueError("polynomial is not a single term")
        return next(iter(self._terms.items()))

    def leading_term(self) -> tuple[Exponents, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self._terms, key=grlex_key)
        return exps, self._terms[exps]

    def involved_variables(self) -> set[str]:
        used = set()
        for exps in self._terms:
            used.update(v for v, e in zip(self.signature.variables, exps) if e)
        return used

    def degree_in(self, name: str) -> int:
        i = self.signature.index(name)
        return max((e[i] for e in self._terms), default=0)

    # -- ring operations ----------------------------------------------------

    def _check_same(self, other: "LaurentPolynomial"):
        if self.signature != other.signature:
            raise SignatureMismatch(f"{self.signature.variables} vs {other.signature.variables}")

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            self._check_same(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial.constant(self.signature, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exps, c in other._terms.items():
            s = out.get(exps, 0) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return LaurentPolynomial._raw(self.signature, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw(self.signature, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPolynomial._raw(self.signature, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        k = int(k)
        if k < 0:
            if len(self._terms) != 1:
                raise InvertibilityError("negative powers need a single term")
            exps, c = self.single_term()
            return LaurentPolynomial(self.signature, {tuple(e * k for e in exps): c ** k})
        if len(self._terms) == 1:
            exps, c = self.single_term()
            return LaurentPolynomial._raw(self.signature, {tuple(e * k for e in exps): c ** k})
        result = LaurentPolynomial.constant(self.signature, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.signature == other.signature and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPolynomial.constant(self.signature, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.signature, frozenset(self._terms.items())))
        return self._hash

    # -- rendering ----------------------------------------------------------

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"LaurentPolynomial({to_text(self)!r}, {self.signature.variables})"

    def to_json(self) -> dict:
        return {
            "signature": self.signature.to_json(),
            "terms": [
                {"coefficient": {"num": c.numerator, "den": c.denominator}, "exponents": list(e)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPolynomial":
        sig = RingSignature.from_json(data["signature"])
        terms = {}
        for t in data["terms"]:
            c = Fraction(t["coefficient"]["num"], t["coefficient"]["den"])
            e = tuple(t["exponents"])
            if e in terms:
                raise ValueError(f"duplicate exponent vector {e}")
            terms[e] = c
        return cls(sig, terms)


def _check_exponents(sig: RingSignature, terms: Mapping[Exponents, Fraction]):
    plain = [i for i, inv in enumerate(sig.invertible) if not inv]
    for exps in terms:
        for i in plain:
            if exps[i] < 0:
                raise InvertibilityError(
                    f"negative exponent {exps[i]} on non-invertible variable {sig.variables[i]!r}"
                )


# -- the operations, as free functions ----------------------------------------


def add(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    p._check_same(q)
    return p + q


def mul(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    p._check_same(q)
    return p * q


def power(p: LaurentPolynomial, k: int) -> LaurentPolynomial:
    return p ** k


def substitute(
    p: LaurentPolynomial,
    images: Mapping[str, LaurentPolynomial],
    target: RingSignature | None = None,
) -> LaurentPolynomial:
    """Evaluate ``p`` at the given images (a ring homomorphism).

    Every variable of ``p``'s signature needs an image; all images share one
    target signature.  Images of invertible variables must be units so that
    negative powers stay meaningful.
    """
    sig = p.signature
    missing = [v for v in sig.variables if v not in images]
    if missing:
        raise KeyError(f"no image for {missing}")
    if target is None:
        target = next(iter(images[v].signature for v in sig.variables), None)
        if target is None:
            raise ValueError("cannot infer target signature of an empty substitution")
    imgs = [images[v] for v in sig.variables]
    for v, inv, img in zip(sig.variables, sig.invertible, imgs):
        if img.signature != target:
            raise SignatureMismatch(f"image of {v!r} lives over {img.signature.variables}")
        if inv and not img.is_unit():
            raise InvertibilityError(f"image of invertible variable {v!r} is not a unit: {img}")

    cache: dict[tuple[int, int], LaurentPolynomial] = {}

    def pw(i: int, e: int) -> LaurentPolynomial:
        key = (i, e)
        if key not in cache:
            cache[key] = imgs[i] ** e
        return cache[key]

    result: dict[Exponents, Fraction] = {}
    one = LaurentPolynomial.constant(target, 1)
    for exps, c in p.terms.items():
        term = one
        for i, e in enumerate(exps):
            if e:
                term = term * pw(i, e)
        for te, tc in term.terms.items():
            s = result.get(te, 0) + c * tc
            if s:
                result[te] = s
            else:
                result.pop(te, None)
    return LaurentPolynomial(target, result)


def embed(p: LaurentPolynomial, target: RingSignature, rename: Mapping[str, str] | None = None) -> LaurentPolynomial:
    """Re-express ``p`` over a larger signature, matching variables by name."""
    rename = rename or {}
    idx = [target.index(rename.get(v, v)) for v in p.signature.variables]
    out = {}
    for exps, c in p.terms.items():
        e = [0] * target.arity
        for i, k in zip(idx, exps):
            e[i] += k
        out[tuple(e)] = c
    return LaurentPolynomial(target, out)


def _monomial_content(p: LaurentPolynomial) -> Exponents:
    """Componentwise minimum exponent over invertible variables (0 elsewhere)."""
    sig = p.signature
    mins = []
    for i, inv in enumerate(sig.invertible):
        mins.append(min(e[i] for e in p.terms) if inv else 0)
    return tuple(mins)


def _shift(p: LaurentPolynomial, by: Exponents, sign: int = 1) -> LaurentPolynomial:
    return LaurentPolynomial._raw(
        p.signature, {tuple(a + sign * b for a, b in zip(e, by)): c for e, c in p.terms.items()}
    )


def exact_divide(p: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial | None:
    """Return ``q`` with ``p == q * g`` or ``None`` if ``g`` does not divide ``p``.

    Both sides are first multiplied by monomials in the invertible variables so
    that they become ordinary polynomials not divisible by any invertible
    variable; divisibility in the Laurent ring then coincides with
    divisibility in the polynomial ring, which a single-divisor division
    under graded-lex order decides.
    """
    p._check_same(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return LaurentPolynomial.zero(p.signature)
    sig = p.signature
    cp, cg = _monomial_content(p), _monomial_content(g)
    pp, gg = _shift(p, cp, -1), _shift(g, cg, -1)
    lt_e, lt_c = gg.leading_term()

    rem = dict(pp.terms)
    quot: dict[Exponents, Fraction] = {}
    g_terms = list(gg.terms.items())
    while rem:
        e = max(rem, key=grlex_key)
        c = rem[e]
        diff = tuple(a - b for a, b in zip(e, lt_e))
        if any(d < 0 for d in diff):
            return None
        qc = c / lt_c
        quot[diff] = quot.get(diff, 0) + qc
        for ge, gc in g_terms:
            te = tuple(a + b for a, b in zip(ge, diff))
            s = rem.get(te, 0) - qc * gc
            if s:
                rem[te] = s
            else:
                rem.pop(te, None)
    q = LaurentPolynomial(sig, quot)
    return _shift(q, tuple(a - b for a, b in zip(cp, cg)))


def evaluate(p: LaurentPolynomial, point: Mapping[str, object] | Sequence[object]) -> Fraction:
    sig = p.signature
    if isinstance(point, Mapping):
        values = [_as_fraction(point[v]) for v in sig.variables]
    else:
        values = [_as_fraction(v) for v in point]
        if len(values) != sig.arity:
            raise ValueError("point has the wrong number of coordinates")
    for v, inv, x in zip(sig.variables, sig.invertible, values):
        if inv and x == 0:
            raise ZeroDivisionError(f"invertible variable {v!r} evaluated at 0")
    total = Fraction(0)
    for exps, c in p.terms.items():
        term = c
        for x, e in zip(values, exps):
            if e:
                term *= x ** e
        total += term
    return total


# -- rendering ------------------------------------------------------------------


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_text(p: LaurentPolynomial) -> str:
    """Canonical rendering ``c * x^a * y^b + ...`` in decreasing graded-lex order."""
    if p.is_zero():
        return "0"
    parts = []
    for exps, c in p.sorted_terms():
        factors = [_fmt_coeff(abs(c))]
        for v, e in zip(p.signature.variables, exps):
            if e == 1:
                factors.append(v)
            elif e:
                factors.append(f"{v}^{e}")
        parts.append(("-" if c < 0 else "+", " * ".join(factors)))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def monomial_tex(sig: RingSignature, exps: Exponents, coeff: Fraction = Fraction(1)) -> str:
    """Render a single term in the ``u^{-5} x`` style, unit factors first."""
    order = sorted(range(len(exps)), key=lambda i: not sig.invertible[i])
    factors = [
        f"{sig.variables[i]}^{{{exps[i]}}}" if exps[i] != 1 else sig.variables[i]
        for i in order
        if exps[i]
    ]
    body = " ".join(factors)
    if coeff == 1:
        return body or "1"
    if coeff == -1:
        return "-" + (body or "1")
    return f"{_fmt_coeff(coeff)} {body}".strip()
