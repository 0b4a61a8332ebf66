"""Diagonal G_m-actions given by integer weight vectors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .poly import LaurentPolynomial, RingSignature


class NotAUnitError(ValueError):
    pass


@dataclass(frozen=True)
class TorusAction:
    """``lambda . x_i = lambda**w_i * x_i`` on the named (non-invertible) variables."""

    variables: tuple[str, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.variables) != len(self.weights):
            raise ValueError("one weight per variable")
        if not any(self.weights):
            raise ValueError("weight vector must be nonzero")

    def weight_of(self, name: str) -> int:
        return self.weights[self.variables.index(name)]

    def rename(self, mapping: Mapping[str, str]) -> "TorusAction":
        return TorusAction(tuple(mapping.get(v, v) for v in self.variables), self.weights)

    def to_json(self) -> dict:
        return {"variables": list(self.variables), "weights": list(self.weights)}

    @classmethod
    def from_json(cls, data: Mapping) -> "TorusAction":
        return cls(tuple(data["variables"]), tuple(data["weights"]))


def semi_invariant_weight(f: LaurentPolynomial, action: TorusAction) -> int | None:
    """Common weighted degree of all terms of ``f``, or ``None`` if they differ."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no weight")
    sig = f.signature
    w = []
    for v, inv in zip(sig.variables, sig.invertible):
        if v in action.variables:
            if inv:
                raise ValueError(f"action variable {v!r} is invertible in {sig.variables}")
            w.append(action.weight_of(v))
        else:
            w.append(None)
    degrees = set()
    for exps in f.terms:
        deg = 0
        for e, wi, v in zip(exps, w, sig.variables):
            if not e:
                continue
            if wi is None:
                raise ValueError(f"{v!r} occurs in f but is not acted on")
            deg += e * wi
        degrees.add(deg)
    return degrees.pop() if len(degrees) == 1 else None


def act_by_monomial(
    action: TorusAction,
    lam: LaurentPolynomial,
    variables: Sequence[str] | None = None,
) -> dict[str, LaurentPolynomial]:
    """Substitution images ``x_i -> lam**w_i * x_i`` over ``lam``'s signature.

    ``variables`` restricts which acted-on variables receive images (default:
    all of them).  ``lam`` must be a unit, i.e. a rational times a monomial in
    invertible variables.
    """
    if not lam.is_unit():
        raise NotAUnitError(f"{lam} is not a unit")
    sig: RingSignature = lam.signature
    names = action.variables if variables is None else tuple(variables)
    return {
        v: (lam ** action.weight_of(v)) * LaurentPolynomial.variable(sig, v)
        for v in names
    }
