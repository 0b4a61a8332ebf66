"""Explicit isomorphisms between hypersurfaces, their cylinders and products.

Every builder runs :func:`verify_map` on what it emits and refuses to return
an unverified map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Mapping

from .actions import TorusAction, act_by_monomial, semi_invariant_weight
from .arith import (
    ArithmeticPreconditionError,
    SquarePair,
    bezout_with_unit_constraint,
    normalize_mod,
    unimodular_complete,
)
from .poly import LaurentPolynomial, embed
from .varieties import (
    DEFAULT_ORACLE_POINTS,
    DEFAULT_SEED,
    Hypersurface,
    MonomialRingMap,
    ProductVariety,
    VerificationReport,
    compose,
    cylinder,
    verify_map,
)


class ConstructionError(ValueError):
    pass


class UnverifiedConstruction(ConstructionError):
    """The emitted map failed verification; ``report`` says which check."""

    def __init__(self, message: str, report: VerificationReport):
        super().__init__(message)
        self.report = report


@dataclass
class IsoRecipe:
    kind: str  # congruent | cylinder | product | square
    parameters: dict
    map: MonomialRingMap
    report: VerificationReport
    citation: str
    parts: list["IsoRecipe"] = field(default_factory=list)
    points: int = DEFAULT_ORACLE_POINTS
    seed: int = DEFAULT_SEED

    def to_json(self) -> dict:
        return {
            "artifact": "iso-recipe",
            "kind": self.kind,
            "parameters": self.parameters,
            "citation": self.citation,
            "map": self.map.to_json(),
            "rendered": self.map.render(),
            "report": self.report.to_json(),
            "oracle_request": {"points": self.points, "seed": self.seed},
        }


def _seal(kind, params, phi, citation, points, seed, parts=()) -> IsoRecipe:
    report = verify_map(phi, points=points, seed=seed)
    if not report.verified:
        failed = [c.to_json() for c in report.checks if c.status == "fail"]
        raise UnverifiedConstruction(f"{kind} construction did not verify: {failed}", report)
    return IsoRecipe(kind, params, phi, report, citation, list(parts), points, seed)


def _base(f: LaurentPolynomial, action: TorusAction, m: int, ell: int, torus: str = "t") -> Hypersurface:
    w = semi_invariant_weight(f, action)
    if w != m:
        raise ConstructionError(f"f has weight {w} under {action.weights}, not {m}")
    return Hypersurface(f, action, ell, torus=torus)


# -- congruent exponents ------------------------------------------------------


def congruence_data(ell: int, ell_prime: int, m: int) -> tuple[int, int] | None:
    """``(k, sign)`` with ``ell = sign*ell' + k*m``; sign +1 preferred."""
    if (ell - ell_prime) % m == 0:
        return (ell - ell_prime) // m, 1
    if (ell + ell_prime) % m == 0:
        return (ell + ell_prime) // m, -1
    return None


def congruent_map(source: Hypersurface, ell_prime: int) -> tuple[MonomialRingMap, int, int]:
    """``(x, t) -> (mu(t^k, x), t^sign)`` from ``source`` to the same hypersurface with exponent ``ell'``."""
    data = congruence_data(source.ell, ell_prime, source.m)
    if data is None:
        raise ConstructionError(
            f"{ell_prime} is not congruent to +-{source.ell} modulo {source.m}; "
            "the congruent-exponent construction does not apply"
        )
    k, sign = data
    target = source.with_ell(ell_prime)
    sig = source.signature
    t = LaurentPolynomial.variable(sig, source.torus)
    images = act_by_monomial(source.action, t ** k)
    images[source.torus] = t ** sign
    for u in source.free_torus:
        images[u] = LaurentPolynomial.variable(sig, u)
    return MonomialRingMap(source, target, images), k, sign


def build_congruent_iso(
    f: LaurentPolynomial,
    action: TorusAction,
    m: int,
    ell: int,
    ell_prime: int,
    *,
    points: int = DEFAULT_ORACLE_POINTS,
    seed: int = DEFAULT_SEED,
) -> IsoRecipe:
    """Isomorphism ``X_{f,ell} -> X_{f,ell'}`` when ``ell' = +-ell (mod m)``."""
    if ell < 1 or ell_prime < 1:
        raise ConstructionError("exponents must be >= 1")
    phi, k, sign = congruent_map(_base(f, action, m, ell), ell_prime)
    params = {"ell": ell, "ell_prime": ell_prime, "m": m, "k": k, "sign": sign}
    return _seal("congruent", params, phi, "congruent exponents: ell = +-ell' + k m", points, seed)


# -- cylinders ----------------------------------------------------------------


def cylinder_map(source_base: Hypersurface, ell: int, u: str = "u") -> tuple[MonomialRingMap, dict]:
    """Map ``X_{f,ell'} x G_m -> X_{f,ell} x G_m`` where ``ell' = source_base.ell``."""
    ell_prime, m = source_base.ell, source_base.m
    w = bezout_with_unit_constraint(ell, ell_prime, m)
    d = w.d
    md = abs(m) // d
    mat = unimodular_complete(w.a, md)
    source = cylinder(source_base, [u])
    target = cylinder(source_base.with_ell(ell), [u])
    sig = source.signature
    t = source_base.torus
    lam = LaurentPolynomial.monomial(sig, {t: w.b, u: -(ell // d)})
    images = act_by_monomial(source_base.action, lam)
    images[t] = LaurentPolynomial.monomial(sig, {t: w.a, u: md})
    images[u] = LaurentPolynomial.monomial(sig, {t: mat.alpha, u: mat.beta})
    for v in source_base.free_torus:
        images[v] = LaurentPolynomial.variable(sig, v)
    return MonomialRingMap(source, target, images), {"bezout": w.to_json(), "unimodular": mat.to_json()}


def build_cylinder_iso(
    f: LaurentPolynomial,
    action: TorusAction,
    m: int,
    ell: int,
    ell_prime: int,
    *,
    u: str = "u",
    points: int = DEFAULT_ORACLE_POINTS,
    seed: int = DEFAULT_SEED,
) -> IsoRecipe:
    """Isomorphism ``X_{f,ell'} x G_m -> X_{f,ell} x G_m`` when ``gcd(ell, m) = gcd(ell', m)``.

    With ``ell' = a ell + b m`` and ``((a, m/d), (alpha, beta))`` unimodular the
    map is ``x_i -> t^{b w_i} u^{-(ell/d) w_i} x_i``, ``t -> t^a u^{m/d}``,
    ``u -> t^alpha u^beta``.
    """
    if ell < 1 or ell_prime < 1:
        raise ConstructionError("exponents must be >= 1")
    try:
        phi, data = cylinder_map(_base(f, action, m, ell_prime), ell, u)
    except ArithmeticPreconditionError as exc:
        raise ConstructionError(str(exc)) from exc
    params = {"ell": ell, "ell_prime": ell_prime, "m": m, **data}
    return _seal("cylinder", params, phi, "equal gcd(ell, m) gives isomorphic G_m-cylinders", points, seed)


# -- products -----------------------------------------------------------------


def product_map(source: ProductVariety, target: ProductVariety, pair: SquarePair) -> MonomialRingMap:
    """``Pi_2 = X_{f,a l} x X_{g,b l'} -> Pi_1 = X_{f,l} x X_{g,l'}`` with torus part ``(t^a s^{cm}, t^m s^b)``."""
    X, Y = target.factors
    t, s = X.torus, Y.torus
    sig = source.signature
    ell, ell_p, m = X.ell, Y.ell, pair.m
    images: dict[str, LaurentPolynomial] = {}
    images.update(act_by_monomial(X.action, LaurentPolynomial.monomial(sig, {s: -pair.c * ell})))
    images.update(act_by_monomial(Y.action, LaurentPolynomial.monomial(sig, {t: -ell_p})))
    images[t] = LaurentPolynomial.monomial(sig, {t: pair.a, s: pair.c * m})
    images[s] = LaurentPolynomial.monomial(sig, {t: m, s: pair.b})
    for v in X.free_torus + Y.free_torus:
        images[v] = LaurentPolynomial.variable(sig, v)
    return MonomialRingMap(source, target, images)


def _primed(hs: Hypersurface, torus: str = "s") -> Hypersurface:
    mapping = {v: v + "'" for v in hs.f.signature.variables}
    mapping[hs.torus] = torus
    return hs.rename(mapping)


def _check_pair(pair: SquarePair, m: int):
    if pair.m != m or not pair.check():
        raise ConstructionError(f"{pair} is not a valid pair for m = {m}")


def build_product_iso(
    f: LaurentPolynomial,
    wf: TorusAction,
    g: LaurentPolynomial,
    wg: TorusAction,
    m: int,
    ell: int,
    ell_prime: int,
    pair: SquarePair,
    *,
    points: int = DEFAULT_ORACLE_POINTS,
    seed: int = DEFAULT_SEED,
) -> IsoRecipe:
    """Isomorphism ``X_{f,a ell} x X_{g,b ell'} -> X_{f,ell} x X_{g,ell'}`` for ``ab = 1 (mod m^2)``.

    When ``f`` and ``g`` share variable names the second block is primed and
    its torus coordinate is called ``s``.
    """
    _check_pair(pair, m)
    X = _base(f, wf, m, ell)
    Y = _base(g, wg, m, ell_prime)
    if set(Y.signature.variables) & set(X.signature.variables):
        Y = _primed(Y)
    target = ProductVariety((X, Y))
    source = ProductVariety((X.with_ell(pair.a * ell), Y.with_ell(pair.b * ell_prime)))
    phi = product_map(source, target, pair)
    params = {"ell": ell, "ell_prime": ell_prime, "m": m, "pair": pair.to_json()}
    return _seal("product", params, phi, "ab = 1 mod m^2 twists a product of two hypersurfaces", points, seed)


def product_of_maps(first: MonomialRingMap, second: MonomialRingMap) -> MonomialRingMap:
    def factors(v):
        return v.factors if isinstance(v, ProductVariety) else (v,)

    source = ProductVariety(factors(first.source) + factors(second.source))
    target = ProductVariety(factors(first.target) + factors(second.target))
    sig = source.signature
    images = {g: embed(p, sig) for g, p in first.images.items()}
    images.update({g: embed(p, sig) for g, p in second.images.items()})
    return MonomialRingMap(source, target, images)


def identity_on(hs: Hypersurface) -> MonomialRingMap:
    sig = hs.signature
    return MonomialRingMap(hs, hs, {v: LaurentPolynomial.variable(sig, v) for v in sig.variables})


def build_square_iso(
    f: LaurentPolynomial,
    action: TorusAction,
    m: int,
    pair: SquarePair,
    *,
    points: int = DEFAULT_ORACLE_POINTS,
    seed: int = DEFAULT_SEED,
) -> IsoRecipe:
    """Isomorphism ``X_{f,a} x X_{f,a} -> X_{f,1} x X_{f,1}``.

    Built as the composite ``X_a x X_a -> X_a x X_b -> X_1 x X_1`` of the
    identity times the congruent map ``a -> b`` (``b = -a mod m``) followed
    by the product map.
    """
    _check_pair(pair, m)
    product = build_product_iso(f, action, f, action, m, 1, 1, pair, points=points, seed=seed)
    X_a, Y_b = product.map.source.factors
    Y_a = Y_b.with_ell(pair.a)
    cong, k, sign = congruent_map(Y_a, pair.b)
    inner = product_of_maps(identity_on(X_a), cong)
    if inner.target != product.map.source:  # pragma: no cover
        raise ConstructionError("intermediate varieties disagree")
    phi = compose(product.map, inner)
    params = {"m": m, "pair": pair.to_json(), "congruent": {"k": k, "sign": sign}}
    inner_recipe = _seal("congruent", {"ell": pair.a, "ell_prime": pair.b, "m": m, "k": k, "sign": sign},
                         inner, "congruent exponents on the second factor", points, seed)
    return _seal("square", params, phi, "squares of X_a and X_1 agree when a + b = 0 mod m and ab = 1 mod m^2",
                 points, seed, parts=[inner_recipe, product])


def generic_fiber_targets(ell: int, ell_prime: int, m: int) -> tuple[int, int]:
    """The two exponents ``(ell', -ell' mod m)`` an isomorphism from ``X_ell`` could be matched with."""
    if gcd(ell, m) != 1 or gcd(ell_prime, m) != 1:
        raise ConstructionError(f"need gcd(ell, m) = gcd(ell', m) = 1, got {ell}, {ell_prime}, {m}")
    return ell_prime, normalize_mod(-ell_prime, m)
