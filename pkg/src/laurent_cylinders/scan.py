"""Grid scans over exponent pairs: cylinder isomorphism status against certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .catalog import FamilySpec, make_family
from .certificates import NonIsoCertificate, certify_danielewski_noniso, certify_fermat_noniso
from .constructions import UnverifiedConstruction, build_cylinder_iso, congruence_data
from .varieties import DEFAULT_ORACLE_POINTS, DEFAULT_SEED


@dataclass
class ScanEntry:
    ell: int
    ell_prime: int
    cylinder: str  # verified | refuted | not-applicable
    certificate: NonIsoCertificate | None
    note: str = ""

    @property
    def counterexample(self) -> bool:
        return self.cylinder == "verified" and self.certificate is not None and self.certificate.certified

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "ell_prime": self.ell_prime,
            "cylinder_iso": self.cylinder,
            "certificate_verdict": self.certificate.verdict if self.certificate else None,
            "counterexample": self.counterexample,
            "note": self.note,
        }


@dataclass
class ScanResult:
    family: FamilySpec
    max_ell: int
    entries: list[ScanEntry] = field(default_factory=list)
    seed: int = DEFAULT_SEED
    points: int = DEFAULT_ORACLE_POINTS

    @property
    def counterexamples(self) -> list[ScanEntry]:
        return [e for e in self.entries if e.counterexample]

    def to_json(self) -> dict:
        return {
            "artifact": "scan",
            "family": self.family.to_json(),
            "max_ell": self.max_ell,
            "oracle_request": {"points": self.points, "seed": self.seed},
            "pairs": [e.to_json() for e in self.entries],
            "counterexamples": [[e.ell, e.ell_prime] for e in self.counterexamples],
        }


def fermat_pair_certificate(p: int, q: int, ell: int, ell_prime: int) -> tuple[NonIsoCertificate | None, str]:
    """Certificate for ``X_ell`` vs ``X_ell'``; available when one exponent is +-1 mod pq."""
    m = p * q
    for one, other in ((ell, ell_prime), (ell_prime, ell)):
        if congruence_data(one, 1, m) is not None:
            note = "" if one == 1 else f"X_{one} = X_1 by congruent exponents"
            return certify_fermat_noniso(p, q, other), note
    return None, "no certificate: neither exponent is +-1 modulo pq"


def scan_family(
    family: FamilySpec,
    max_ell: int,
    *,
    points: int = DEFAULT_ORACLE_POINTS,
    seed: int = DEFAULT_SEED,
) -> ScanResult:
    """All pairs ``1 <= ell < ell' <= max_ell``."""
    if max_ell < 1:
        raise ValueError("max_ell must be >= 1")
    base = make_family(family.with_ell(1))
    m = base.m
    result = ScanResult(family, max_ell, seed=seed, points=points)
    for ell in range(1, max_ell + 1):
        for ell_prime in range(ell + 1, max_ell + 1):
            if gcd(ell, m) == gcd(ell_prime, m):
                try:
                    build_cylinder_iso(base.f, base.action, m, ell, ell_prime, points=points, seed=seed)
                    status = "verified"
                except UnverifiedConstruction:
                    status = "refuted"
            else:
                status = "not-applicable"
            note = ""
            if family.kind == "danielewski":
                cert = certify_danielewski_noniso(family["n"], m, ell, ell_prime)
            else:
                cert, note = fermat_pair_certificate(family["p"], family["q"], ell, ell_prime)
            result.entries.append(ScanEntry(ell, ell_prime, status, cert, note))
    return result

