"""Hypersurfaces ``t^l f = 1``, their products and cylinders, monomial maps between
them, and the verification engine that certifies such a map is an isomorphism.

Maps are stored contravariantly: a map ``phi: S -> T`` is given by the images of
the coordinates of ``T`` as single-term Laurent polynomials over ``S``'s
signature, i.e. by the ring map ``phi^*``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Mapping, Sequence, Union

import gmpy2
import sympy
from gmpy2 import mpq

from .actions import TorusAction, semi_invariant_weight
from .arith import xgcd
from .poly import (
    InvertibilityError,
    LaurentPolynomial,
    RingSignature,
    SignatureMismatch,
    embed,
    evaluate,
    exact_divide,
    monomial_tex,
    substitute,
    to_text,
)

DEFAULT_ORACLE_POINTS = 100
DEFAULT_SEED = 20160701


class VarietyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# varieties
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hypersurface:
    """``t^ell * f - 1 = 0`` inside ``A^n x G_m``, times optional free torus factors."""

    f: LaurentPolynomial
    action: TorusAction
    ell: int
    torus: str = "t"
    free_torus: tuple[str, ...] = ()
    family: str = "custom"
    params: tuple[tuple[str, int], ...] = ()
    m: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "free_torus", tuple(self.free_torus))
        object.__setattr__(self, "params", tuple((str(k), int(v)) for k, v in self.params))
        if self.ell < 1:
            raise VarietyError(f"exponent must be >= 1, got {self.ell}")
        if any(self.f.signature.invertible):
            raise VarietyError("f must be a polynomial in non-invertible variables")
        names = (self.torus,) + self.free_torus
        if len(set(names)) != len(names) or set(names) & set(self.f.signature.variables):
            raise VarietyError(f"torus names {names} collide")
        weight = semi_invariant_weight(self.f, self.action)
        if weight is None:
            raise VarietyError(f"{self.f} is not semi-invariant for weights {self.action.weights}")
        if weight == 0:
            raise VarietyError("semi-invariant of weight 0")
        object.__setattr__(self, "m", weight)

    @cached_property
    def signature(self) -> RingSignature:
        return RingSignature.of(self.f.signature.variables, (self.torus,) + self.free_torus)

    @cached_property
    def f_lifted(self) -> LaurentPolynomial:
        return embed(self.f, self.signature)

    @cached_property
    def defining(self) -> LaurentPolynomial:
        t = LaurentPolynomial.variable(self.signature, self.torus)
        return t ** self.ell * self.f_lifted - 1

    @property
    def equations(self) -> tuple[LaurentPolynomial, ...]:
        return (self.defining,)

    @property
    def factors(self) -> tuple["Hypersurface", ...]:
        return (self,)

    def rename(self, mapping: Mapping[str, str]) -> "Hypersurface":
        f = embed(self.f, self.f.signature.rename(mapping), rename=mapping)
        return replace(
            self,
            f=f,
            action=self.action.rename(mapping),
            torus=mapping.get(self.torus, self.torus),
            free_torus=tuple(mapping.get(v, v) for v in self.free_torus),
        )

    def with_ell(self, ell: int) -> "Hypersurface":
        return replace(self, ell=ell)

    def describe(self) -> str:
        fs = to_text(self.f)
        s = f"{self.torus}^{self.ell} * ({fs}) = 1" if self.ell != 1 else f"{self.torus} * ({fs}) = 1"
        if self.free_torus:
            s += " x G_m^{" + ", ".join(self.free_torus) + "}"
        return s

    def to_json(self) -> dict:
        return {
            "kind": "hypersurface",
            "family": self.family,
            "params": dict(self.params),
            "f": self.f.to_json(),
            "action": self.action.to_json(),
            "ell": self.ell,
            "m": self.m,
            "torus": self.torus,
            "free_torus": list(self.free_torus),
            "signature": self.signature.to_json(),
            "defining": self.defining.to_json(),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Hypersurface":
        hs = cls(
            f=LaurentPolynomial.from_json(data["f"]),
            action=TorusAction.from_json(data["action"]),
            ell=int(data["ell"]),
            torus=data.get("torus", "t"),
            free_torus=tuple(data.get("free_torus", ())),
            family=data.get("family", "custom"),
            params=tuple(data.get("params", {}).items()),
        )
        if "defining" in data and LaurentPolynomial.from_json(data["defining"]) != hs.defining:
            raise VarietyError("stored defining polynomial does not match its parameters")
        if "m" in data and int(data["m"]) != hs.m:
            raise VarietyError("stored weight does not match the action")
        return hs

    # -- rational points ----------------------------------------------------

    @cached_property
    def _linear_variable(self):
        """A variable ``v`` in which f has degree one, with ``f = A*v + B`` compiled for evaluation."""
        sig = self.f.signature
        for i, v in enumerate(sig.variables):
            if max(e[i] for e in self.f.terms) != 1:
                continue
            a_terms, b_terms = {}, {}
            for e, c in self.f.terms.items():
                if e[i] == 1:
                    a_terms[e[:i] + (0,) + e[i + 1:]] = c
                else:
                    b_terms[e] = c
            A = LaurentPolynomial(sig, a_terms)
            B = LaurentPolynomial(sig, b_terms)
            return v, _compile_terms(A, sig), _compile_terms(B, sig)
        return None

    @cached_property
    def _orbit_data(self):
        d, i, j = xgcd(self.ell, self.m)
        # among solutions (i + k*m/d, j - k*ell/d) keep |j| small: it drives coordinate size
        step_j = self.ell // d
        k = round(j / step_j)
        i, j = i + k * (self.m // d), j - k * step_j
        assert i * self.ell + j * self.m == d
        return d, i, j

    def sample_points(self, count: int, seed: int = DEFAULT_SEED) -> list[dict[str, Fraction]]:
        return [_to_fractions(p) for p in _sample_points(self, count, seed)]

    def _draw(self, rng: random.Random) -> dict:
        point = {u: _rand_rational(rng, nonzero=True) for u in self.free_torus}
        sig = self.f.signature
        lin = self._linear_variable
        if lin is not None:
            # f = A v + B: choose everything else, then solve for v
            v, A, B = lin
            while True:
                vals = {w: _rand_rational(rng) for w in sig.variables}
                vals[v] = mpq(0)
                t = _rand_rational(rng, nonzero=True)
                a = _eval_compiled(A, vals)
                if a == 0:
                    continue
                vals[v] = (t ** -self.ell - _eval_compiled(B, vals)) / a
                point.update(vals)
                point[self.torus] = t
                return point
        # move a base point x0 with f(x0) = kappa^d along the action:
        # x = lambda . x0, t = kappa^-i rho^(-m/d), lambda = kappa^-j rho^(ell/d)
        d, i, j = self._orbit_data
        bases = _base_points(self.f, d)
        if not bases:
            raise VarietyError(f"no rational base point found on {self.describe()}")
        x0, kappa = bases[rng.randrange(len(bases))]
        rho = _rand_rational(rng, nonzero=True)
        lam = kappa ** (-j) * rho ** (self.ell // d)
        point[self.torus] = kappa ** (-i) * rho ** (-(self.m // d))
        for v, x in zip(sig.variables, x0):
            point[v] = lam ** self.action.weight_of(v) * x if v in self.action.variables else mpq(x)
        return point


@lru_cache(maxsize=64)
def _base_points(f: LaurentPolynomial, d: int) -> tuple:
    """Small integer points ``x0`` with ``f(x0)`` a nonzero ``d``-th power, smallest roots first."""
    sig = f.signature
    n = len(sig.variables)
    if n <= 3:
        candidates = itertools.product(range(-6, 7), repeat=n)
    else:
        rng = random.Random(f"base:{to_text(f)}")
        candidates = {tuple(rng.randint(-6, 6) for _ in range(n)) for _ in range(3000)}
    compiled = _compile_terms(f, sig)
    hits = []
    for x0 in sorted(candidates):
        k = _eval_compiled(compiled, dict(zip(sig.variables, map(mpq, x0))))
        root = _rational_root(k, d)
        if root is not None:
            hits.append((x0, root))
    hits.sort(key=lambda h: (abs(h[1].numerator) + h[1].denominator, h[0]))
    return tuple(hits[:40])


@lru_cache(maxsize=512)
def _sample_points(variety, count: int, seed: int) -> tuple[dict, ...]:
    rng = random.Random(f"{seed}:{variety.describe()}")
    per_factor = [[fac._draw(rng) for _ in range(count)] for fac in variety.factors]
    points = []
    for parts in zip(*per_factor):
        merged = {}
        for p in parts:
            merged.update(p)
        points.append(merged)
    return tuple(points)


def _to_fractions(point: Mapping) -> dict[str, Fraction]:
    return {k: Fraction(int(v.numerator), int(v.denominator)) for k, v in point.items()}


def _rand_rational(rng: random.Random, nonzero: bool = False):
    while True:
        num = rng.randint(-9, 9)
        if num or not nonzero:
            return mpq(num, rng.randint(1, 5))


def _rational_root(k, d: int):
    """``r`` with ``r**d == k`` if ``k`` is a nonzero rational ``d``-th power."""
    if k == 0 or (k < 0 and d % 2 == 0):
        return None
    sign = -1 if k < 0 else 1
    rn, exact_n = gmpy2.iroot(abs(gmpy2.mpz(k.numerator)), d)
    rd, exact_d = gmpy2.iroot(gmpy2.mpz(k.denominator), d)
    if exact_n and exact_d:
        return mpq(sign * rn, rd)
    return None


@dataclass(frozen=True)
class ProductVariety:
    """Product of hypersurfaces over disjoint variable sets."""

    factors: tuple[Hypersurface, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        names: list[str] = []
        for fac in self.factors:
            names.extend(fac.signature.variables)
        if len(set(names)) != len(names):
            raise VarietyError(f"factor signatures overlap: {names}")

    @cached_property
    def signature(self) -> RingSignature:
        variables, inv = (), ()
        for fac in self.factors:
            variables += fac.signature.variables
            inv += fac.signature.invertible
        return RingSignature(variables, inv)

    @cached_property
    def equations(self) -> tuple[LaurentPolynomial, ...]:
        return tuple(embed(fac.defining, self.signature) for fac in self.factors)

    def describe(self) -> str:
        return "  x  ".join(f"[{fac.describe()}]" for fac in self.factors)

    def sample_points(self, count: int, seed: int = DEFAULT_SEED) -> list[dict[str, Fraction]]:
        return list(_sample_points(self, count, seed))

    def to_json(self) -> dict:
        return {
            "kind": "product",
            "factors": [fac.to_json() for fac in self.factors],
            "signature": self.signature.to_json(),
            "equations": [e.to_json() for e in self.equations],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ProductVariety":
        return cls(tuple(Hypersurface.from_json(f) for f in data["factors"]))


Variety = Union[Hypersurface, ProductVariety]


def variety_from_json(data: Mapping) -> Variety:
    kind = data.get("kind")
    if kind == "hypersurface":
        return Hypersurface.from_json(data)
    if kind == "product":
        return ProductVariety.from_json(data)
    raise VarietyError(f"unknown variety kind {kind!r}")


def cylinder(v: Variety, fresh: Sequence[str]) -> Variety:
    """``v x G_m^k`` with new invertible coordinates ``fresh``."""
    fresh = tuple(fresh)
    used = set(v.signature.variables)
    if len(set(fresh)) != len(fresh) or used & set(fresh):
        raise VarietyError(f"torus names {fresh} collide with {sorted(used)}")
    if isinstance(v, Hypersurface):
        return replace(v, free_torus=v.free_torus + fresh)
    last = v.factors[-1]
    return ProductVariety(v.factors[:-1] + (replace(last, free_torus=last.free_torus + fresh),))


# ---------------------------------------------------------------------------
# maps
# ---------------------------------------------------------------------------


class MapShapeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MonomialRingMap:
    source: Variety
    target: Variety
    images: Mapping[str, LaurentPolynomial]

    def __eq__(self, other):
        if not isinstance(other, MonomialRingMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and dict(self.images) == dict(other.images)
        )

    def image(self, name: str) -> LaurentPolynomial:
        return self.images[name]

    def render(self) -> list[str]:
        """Lines like ``x ↦ u^{-5} x``."""
        lines = []
        for g in self.target.signature.variables:
            img = self.images.get(g)
            if img is None:
                lines.append(f"{g} ↦ ?")
            elif img.is_single_term():
                e, c = img.single_term()
                lines.append(f"{g} ↦ {monomial_tex(img.signature, e, c)}")
            else:
                lines.append(f"{g} ↦ {to_text(img)}")
        return lines

    def to_json(self) -> dict:
        images = []
        for g in self.target.signature.variables:
            img = self.images[g]
            e, c = img.single_term()
            images.append(
                {"generator": g, "coefficient": {"num": c.numerator, "den": c.denominator}, "exponents": list(e)}
            )
        return {"source": self.source.to_json(), "target": self.target.to_json(), "images": images}

    @classmethod
    def from_json(cls, data: Mapping) -> "MonomialRingMap":
        source = variety_from_json(data["source"])
        target = variety_from_json(data["target"])
        images = {}
        for entry in data["images"]:
            c = Fraction(entry["coefficient"]["num"], entry["coefficient"]["den"])
            images[entry["generator"]] = LaurentPolynomial(source.signature, {tuple(entry["exponents"]): c})
        return cls(source, target, images)


def identity_map(v: Variety) -> MonomialRingMap:
    sig = v.signature
    return MonomialRingMap(v, v, {g: LaurentPolynomial.variable(sig, g) for g in sig.variables})


def is_identity(phi: MonomialRingMap) -> bool:
    if phi.source.signature != phi.target.signature:
        return False
    sig = phi.source.signature
    return all(phi.images.get(g) == LaurentPolynomial.variable(sig, g) for g in sig.variables)


def pullback(phi: MonomialRingMap, p: LaurentPolynomial) -> LaurentPolynomial:
    if p.signature != phi.target.signature:
        raise SignatureMismatch("polynomial does not live on the target")
    return substitute(p, phi.images, phi.source.signature)


def compose(outer: MonomialRingMap, inner: MonomialRingMap) -> MonomialRingMap:
    """``outer o inner`` for ``inner: A -> B`` and ``outer: B -> C``."""
    if inner.target != outer.source:
        raise VarietyError("inner target differs from outer source")
    src = inner.source.signature
    images = {g: substitute(img, inner.images, src) for g, img in outer.images.items()}
    return MonomialRingMap(inner.source, outer.target, images)


@dataclass(frozen=True)
class MapShape:
    """Decomposition of a triangular monomial map.

    ``perm[j]`` is the source plain variable hit by target plain variable ``j``;
    ``plain_torus[j]`` its torus exponent vector; ``torus_matrix[k]`` the
    exponent row of target torus variable ``k`` over the source torus
    variables.
    """

    perm: tuple[int, ...]
    plain_coeffs: tuple[Fraction, ...]
    plain_torus: tuple[tuple[int, ...], ...]
    torus_matrix: tuple[tuple[int, ...], ...]
    torus_coeffs: tuple[Fraction, ...]
    det: int


def analyze_shape(phi: MonomialRingMap) -> tuple[MapShape | None, list[str], list[str]]:
    """Return ``(shape, unsupported, non_invertible)`` problem lists.

    ``unsupported`` collects defects that make ``phi`` not a monomial ring map
    at all; ``non_invertible`` collects well-formed monomial maps that are not
    of invertible triangular form.
    """
    unsupported: list[str] = []
    bad: list[str] = []
    ssig, tsig = phi.source.signature, phi.target.signature
    if set(phi.images) != set(tsig.variables):
        unsupported.append(f"images given for {sorted(phi.images)}, target has {list(tsig.variables)}")
        return None, unsupported, bad
    for g in tsig.variables:
        img = phi.images[g]
        if img.signature != ssig:
            unsupported.append(f"image of {g} is not over the source signature")
        elif not img.is_single_term():
            unsupported.append(f"image of {g} is not a single term: {img}")
        elif tsig.is_invertible(g) and not img.is_unit():
            unsupported.append(f"image of invertible {g} is not a unit: {img}")
    if unsupported:
        return None, unsupported, bad

    s_plain = [i for i, inv in enumerate(ssig.invertible) if not inv]
    s_torus = [i for i, inv in enumerate(ssig.invertible) if inv]
    perm, pc, pt = [], [], []
    for g in tsig.plain_variables:
        e, c = phi.images[g].single_term()
        hit = [(k, e[i]) for k, i in enumerate(s_plain) if e[i]]
        if len(hit) != 1 or hit[0][1] != 1:
            bad.append(f"image of {g} is not a unit times a single plain generator")
            continue
        perm.append(hit[0][0])
        pc.append(c)
        pt.append(tuple(e[i] for i in s_torus))
    if not bad and (len(perm) != len(s_plain) or len(set(perm)) != len(perm)):
        bad.append("plain generators are not matched bijectively")
    rows, tc = [], []
    for g in tsig.torus_variables:
        e, c = phi.images[g].single_term()
        rows.append(tuple(e[i] for i in s_torus))
        tc.append(c)
    det = 0
    if len(rows) != len(s_torus):
        bad.append(f"torus part is {len(rows)}x{len(s_torus)}, not square")
    elif rows:
        det = int(sympy.Matrix(rows).det())
        if abs(det) != 1:
            bad.append(f"torus exponent matrix has determinant {det}")
    else:
        det = 1
    if bad:
        return None, unsupported, bad
    return MapShape(tuple(perm), tuple(pc), tuple(pt), tuple(rows), tuple(tc), det), unsupported, bad


def inverse(phi: MonomialRingMap) -> MonomialRingMap:
    shape, unsupported, bad = analyze_shape(phi)
    if shape is None:
        raise MapShapeError("; ".join(unsupported + bad))
    ssig, tsig = phi.source.signature, phi.target.signature
    F = sympy.Matrix(shape.torus_matrix).inv() if shape.torus_matrix else sympy.Matrix([])
    s_torus = ssig.torus_variables
    t_torus = tsig.torus_variables
    images: dict[str, LaurentPolynomial] = {}
    for i, s in enumerate(s_torus):
        row = [int(F[i, k]) for k in range(len(t_torus))]
        coeff = Fraction(1)
        for k, f_ik in enumerate(row):
            coeff *= shape.torus_coeffs[k] ** (-f_ik)
        images[s] = LaurentPolynomial.monomial(tsig, dict(zip(t_torus, row)), coeff)
    s_plain = ssig.plain_variables
    for j, g in enumerate(tsig.plain_variables):
        unit = LaurentPolynomial.constant(tsig, 1 / shape.plain_coeffs[j])
        for s, e in zip(s_torus, shape.plain_torus[j]):
            if e:
                unit = unit * images[s] ** (-e)
        images[s_plain[shape.perm[j]]] = unit * LaurentPolynomial.variable(tsig, g)
    return MonomialRingMap(phi.target, phi.source, images)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


@dataclass
class Check:
    name: str
    status: str  # pass | fail | skipped
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class VerificationReport:
    verdict: str  # verified | refuted | unsupported
    checks: list[Check]
    per_equation: list[dict]
    inverse_check: bool
    oracle_points: int
    oracle_passed: int
    seed: int

    @property
    def verified(self) -> bool:
        return self.verdict == "verified"

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "checks": [c.to_json() for c in self.checks],
            "per_equation": self.per_equation,
            "inverse_check": self.inverse_check,
            "oracle": {"points": self.oracle_points, "passed": self.oracle_passed, "seed": self.seed},
        }


def _unit_ratio(h: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial | None:
    if len(h.terms) != len(g.terms) or h.is_zero():
        return None
    he, hc = h.leading_term()
    ge, gc = g.leading_term()
    u = LaurentPolynomial.monomial(h.signature, tuple(a - b for a, b in zip(he, ge)), hc / gc) \
        if all(a == b for a, b, inv in zip(he, ge, h.signature.invertible) if not inv) else None
    if u is None or u * g != h:
        return None
    return u


def _match_equations(phi: MonomialRingMap, target_eqs, source_eqs) -> tuple[bool, list[dict]]:
    rows, ok = [], True
    for gt in target_eqs:
        h = pullback(phi, gt)
        row = {"target_equation": to_text(gt), "pullback": to_text(h), "method": None}
        for gs in source_eqs:
            u = _unit_ratio(h, gs)
            if u is not None:
                row.update(method="unit-multiple", source_equation=to_text(gs), unit=to_text(u))
                break
        else:
            for gs in source_eqs:
                q = exact_divide(h, gs)
                if q is not None:
                    row.update(method="membership", source_equation=to_text(gs), quotient=to_text(q))
                    break
        if row["method"] is None:
            ok = False
            row["method"] = "none"
        rows.append(row)
    return ok, rows


def _compile_terms(p: LaurentPolynomial, sig: RingSignature):
    """Term list ``[(coeff, [(name, exp), ...]), ...]`` with gmpy2 rationals for fast evaluation."""
    return [
        (mpq(c.numerator, c.denominator), [(sig.variables[i], e) for i, e in enumerate(exps) if e])
        for exps, c in p.terms.items()
    ]


def _eval_compiled(compiled, point):
    total = mpq(0)
    for c, factors in compiled:
        term = c
        for v, e in factors:
            term *= point[v] ** e
        total += term
    return total


def map_point(phi: MonomialRingMap, point: Mapping[str, Fraction]) -> dict[str, Fraction]:
    """Push a source point forward: target coordinate ``g`` is ``phi^*(g)`` at the point."""
    return {g: evaluate(img, point) for g, img in phi.images.items()}


def _oracle(phi, psi, count, seed) -> tuple[int, int, str]:
    src, tgt = phi.source, phi.target
    f_imgs = {g: _compile_terms(img, src.signature) for g, img in phi.images.items()}
    t_eqs = [_compile_terms(e, tgt.signature) for e in tgt.equations]
    s_eqs = [_compile_terms(e, src.signature) for e in src.equations]
    b_imgs = {g: _compile_terms(img, tgt.signature) for g, img in psi.images.items()} if psi else None
    tested = passed = 0
    failure = ""
    for p in _sample_points(src, count, seed):
        tested += 1
        if any(_eval_compiled(e, p) for e in s_eqs):
            failure = failure or "sampler produced an off-variety source point"
            continue
        q = {g: _eval_compiled(c, p) for g, c in f_imgs.items()}
        if any(_eval_compiled(e, q) for e in t_eqs):
            failure = failure or f"image of {_to_fractions(p)} violates a target equation"
            continue
        if b_imgs is not None:
            back = {g: _eval_compiled(c, q) for g, c in b_imgs.items()}
            if back != p:
                failure = failure or f"inverse does not return {_to_fractions(p)}"
                continue
        passed += 1
    if b_imgs is not None:
        for q in _sample_points(tgt, count, seed):
            tested += 1
            p = {g: _eval_compiled(c, q) for g, c in b_imgs.items()}
            if any(_eval_compiled(e, p) for e in s_eqs):
                failure = failure or f"inverse image of {_to_fractions(q)} violates a source equation"
                continue
            passed += 1
    return tested, passed, failure


def verify_map(phi: MonomialRingMap, points: int = DEFAULT_ORACLE_POINTS, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Machine-check that ``phi`` restricts to an isomorphism ``source -> target``.

    Checks: (1) each target equation pulls back to a unit multiple of (or into
    the principal ideal of) a source equation; (2) the synthesized inverse
    pulls source equations back into the target ideal and both compositions
    are identity maps; (3) seeded rational points of the source (and target)
    are carried onto the other side exactly.
    """
    checks: list[Check] = []
    shape, unsupported, bad = analyze_shape(phi)
    if unsupported:
        checks.append(Check("shape", "fail", "; ".join(unsupported)))
        for name in ("equations", "inverse", "oracle"):
            checks.append(Check(name, "skipped", "map is not a monomial ring map"))
        return VerificationReport("unsupported", checks, [], False, 0, 0, seed)
    checks.append(Check("shape", "pass" if shape else "fail", "; ".join(bad) or "triangular monomial form"))

    try:
        eq_ok, rows = _match_equations(phi, phi.target.equations, phi.source.equations)
    except (InvertibilityError, SignatureMismatch) as exc:  # pragma: no cover - excluded by shape checks
        checks.append(Check("equations", "fail", str(exc)))
        return VerificationReport("unsupported", checks, [], False, 0, 0, seed)
    failed = [r["target_equation"] for r in rows if r["method"] == "none"]
    checks.append(Check("equations", "pass" if eq_ok else "fail",
                        "all target equations pulled back into the source ideal" if eq_ok
                        else f"no source equation accounts for: {failed}"))

    psi = None
    inverse_ok = False
    if shape is None:
        checks.append(Check("inverse", "fail", "; ".join(bad)))
    else:
        psi = inverse(phi)
        inv_eq_ok, inv_rows = _match_equations(psi, phi.source.equations, phi.target.equations)
        left = is_identity(compose(psi, phi))
        right = is_identity(compose(phi, psi))
        inverse_ok = inv_eq_ok and left and right
        for r in inv_rows:
            r["direction"] = "inverse"
        rows.extend(inv_rows)
        checks.append(Check("inverse", "pass" if inverse_ok else "fail",
                            f"det={shape.det}; inverse equations {'ok' if inv_eq_ok else 'FAIL'}; "
                            f"psi o phi = id: {left}; phi o psi = id: {right}"))

    if points > 0:
        tested, passed, failure = _oracle(phi, psi, points, seed)
        checks.append(Check("oracle", "pass" if tested == passed else "fail",
                            f"{passed}/{tested} seeded rational points" + (f"; first failure: {failure}" if failure else "")))
    else:
        tested = passed = 0
        checks.append(Check("oracle", "skipped", "no points requested"))

    verdict = "verified" if all(c.status in ("pass", "skipped") for c in checks) and points > 0 else "refuted"
    if points == 0 and all(c.status != "fail" for c in checks):
        verdict = "verified"
    return VerificationReport(verdict, checks, rows, inverse_ok, tested, passed, seed)
