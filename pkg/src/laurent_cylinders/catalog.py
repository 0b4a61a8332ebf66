"""The two hypersurface families and the genus of the associated curves."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .actions import TorusAction
from .poly import LaurentPolynomial, RingSignature
from .varieties import Hypersurface


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    """``fermat(p, q, ell)``: ``t^ell (x^p + y^q) = 1``;
    ``danielewski(n, m, ell)``: ``t^ell (x1^2 ... xn^2 z - y^m) = 1``."""

    kind: str
    params: tuple[tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "params", tuple((k, int(v)) for k, v in self.params))
        p = dict(self.params)
        if self.kind == "fermat":
            if set(p) != {"p", "q", "ell"}:
                raise FamilyError("fermat needs p, q, ell")
            if p["p"] < 1 or p["q"] < 1:
                raise FamilyError("fermat needs p, q >= 1")
        elif self.kind == "danielewski":
            if set(p) != {"n", "m", "ell"}:
                raise FamilyError("danielewski needs n, m, ell")
            if p["n"] < 1 or p["m"] < 2:
                raise FamilyError("danielewski needs n >= 1 and m >= 2")
        else:
            raise FamilyError(f"unknown family {self.kind!r}")
        if p["ell"] < 1:
            raise FamilyError("ell must be >= 1")

    @classmethod
    def fermat(cls, p: int, q: int, ell: int = 1) -> "FamilySpec":
        return cls("fermat", (("p", p), ("q", q), ("ell", ell)))

    @classmethod
    def danielewski(cls, n: int, m: int, ell: int = 1) -> "FamilySpec":
        return cls("danielewski", (("n", n), ("m", m), ("ell", ell)))

    def __getitem__(self, key: str) -> int:
        return dict(self.params)[key]

    @property
    def ell(self) -> int:
        return self["ell"]

    def with_ell(self, ell: int) -> "FamilySpec":
        return FamilySpec(self.kind, tuple((k, ell if k == "ell" else v) for k, v in self.params))

    @property
    def variables(self) -> tuple[str, ...]:
        if self.kind == "fermat":
            return ("x", "y")
        return tuple(f"x{i}" for i in range(1, self["n"] + 1)) + ("y", "z")

    @property
    def weights(self) -> tuple[int, ...]:
        if self.kind == "fermat":
            return (self["q"], self["p"])
        n, m = self["n"], self["m"]
        return (1,) * (n + 1) + (m - 2 * n,)

    @property
    def m(self) -> int:
        if self.kind == "fermat":
            return self["p"] * self["q"]
        return self["m"]

    @property
    def polynomial(self) -> LaurentPolynomial:
        sig = RingSignature.of(self.variables)
        if self.kind == "fermat":
            return LaurentPolynomial(sig, {(self["p"], 0): 1, (0, self["q"]): 1})
        n = self["n"]
        return LaurentPolynomial(sig, {(2,) * n + (0, 1): 1, (0,) * n + (self["m"], 0): -1})

    @property
    def irreducible(self) -> bool:
        # x^p + y^q is irreducible iff gcd(p, q) = 1; the other family is linear
        # in z with coprime coefficients
        if self.kind == "fermat":
            return gcd(self["p"], self["q"]) == 1
        return True

    @property
    def factorial(self) -> bool:
        """Recorded only for the second family, where ``gcd(ell, m) = 1`` is the criterion."""
        return self.kind == "danielewski" and gcd(self.ell, self.m) == 1

    def describe(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.kind}({args})"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "params": dict(self.params),
            "weights": list(self.weights),
            "m": self.m,
            "irreducible": self.irreducible,
            "factorial": self.factorial,
        }


def make_family(spec: FamilySpec) -> Hypersurface:
    action = TorusAction(spec.variables, spec.weights)
    hs = Hypersurface(
        f=spec.polynomial,
        action=action,
        ell=spec.ell,
        family=spec.kind,
        params=tuple((k, v) for k, v in spec.params if k != "ell"),
    )
    if hs.m != spec.m:  # pragma: no cover - weights are chosen to make this hold
        raise FamilyError(f"weight check failed: {hs.m} != {spec.m}")
    return hs


def fermat(p: int, q: int, ell: int = 1) -> Hypersurface:
    return make_family(FamilySpec.fermat(p, q, ell))


def danielewski(n: int, m: int, ell: int = 1) -> Hypersurface:
    return make_family(FamilySpec.danielewski(n, m, ell))


def family_of(hs: Hypersurface) -> FamilySpec:
    """Recover the parameters of a catalog hypersurface and check it regenerates."""
    spec = FamilySpec(hs.family, hs.params + (("ell", hs.ell),))
    if make_family(spec).defining != hs.defining or make_family(spec).f != hs.f:
        raise FamilyError("stored hypersurface does not match its family parameters")
    return spec


def genus(p: int, q: int) -> int:
    """Genus of the smooth completion of ``x^p + y^q = 1``."""
    if p < 1 or q < 1:
        raise FamilyError("need p, q >= 1")
    if gcd(p, q) != 1:
        raise FamilyError(f"gcd({p}, {q}) != 1")
    return (p - 1) * (q - 1) // 2
