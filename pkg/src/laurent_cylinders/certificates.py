"""Non-isomorphism certificates: finite divisibility checks plus the chain of
results that turns them into a proof that two hypersurfaces differ."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import sympy

from .arith import normalize_mod
from .fibrations import FibrationSpec, compare_fiber_multisets, degenerate_fibers

SCHEMA_VERSION = 1

CERTIFIED = "certified-noniso"
NOT_CERTIFIED = "not-certified"
PRECONDITIONS_VIOLATED = "preconditions-violated"
HEURISTIC = "heuristic"

UNITS = "units of t^l f = 1 are constants times powers of t when f is irreducible and gcd(l, m) = 1"
GENERIC_FIBRE = (
    "a cylinder-compatible isomorphism X_l -> X_l' restricts to an isomorphism of generic fibres "
    "Y_l -> Y_l' or Y_l -> Y_l'' with l'' = -l' mod m"
)
BRANCH_LOCUS = "Y_1 = Y_j as cyclic covers needs a q-th root of t^-(j-1) to move the branch locus"
COVER_TWIST = "matching the covering data then needs a p-th root of the same power of t"
FERMAT_CONCLUSION = "t^l (x^p + y^q) = 1 is not isomorphic to t (x^p + y^q) = 1 when both root extractions fail"
DANIELEWSKI_CRITERION = (
    "generic fibres of t^l (x1^2...xn^2 z - y^m) = 1 over k(t) match only if t^-l = a^m t^-l' for a constant-times-power a, "
    "i.e. m | l - l'"
)
DANIELEWSKI_FACTORIAL = "X_{n,m,l} is smooth and factorial when gcd(l, m) = 1"
FIBRE_INVARIANT = (
    "any isomorphism of X_l x (G_m)^n respects the log-canonical A^1-fibration, so the multiplicities of its "
    "degenerate fibres are invariants"
)

# log-canonical fibrations on t^l (x^2 + y^3) = 1 for l = 1, 2, 3
CANONICAL_23 = {1: FibrationSpec(2, 0, 1), 2: FibrationSpec(1, 0, 1), 3: FibrationSpec(0, 1, 1)}


@dataclass
class CertificateCheck:
    description: str
    citation: str
    status: str  # pass | fail

    def to_json(self) -> dict:
        return {"description": self.description, "citation": self.citation, "status": self.status}


@dataclass
class NonIsoCertificate:
    kind: str  # fermat | danielewski | fiber-multiset
    parameters: dict
    checks: list[CertificateCheck] = field(default_factory=list)
    verdict: str = NOT_CERTIFIED

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind,
            "parameters": self.parameters,
            "checks": [c.to_json() for c in self.checks],
            "verdict": self.verdict,
        }

    @classmethod
    def from_json(cls, data: dict) -> "NonIsoCertificate":
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported certificate schema {data.get('schema_version')!r}")
        checks = [CertificateCheck(c["description"], c["citation"], c["status"]) for c in data["checks"]]
        return cls(data["kind"], data["parameters"], checks, data["verdict"])


def _preconditions(items: list[tuple[str, bool]]) -> list[dict]:
    return [{"condition": text, "holds": ok} for text, ok in items]


def fermat_stage_checks(p: int, q: int, j: int) -> tuple[bool, bool]:
    """``(branch_stage_obstructs, cover_stage_obstructs)``: ``q does not divide j-1``, ``p does not divide j-1``."""
    return (j - 1) % q != 0, (j - 1) % p != 0


def certify_fermat_noniso(p: int, q: int, ell: int) -> NonIsoCertificate:
    """Certify ``t^ell (x^p + y^q) = 1`` is not isomorphic to ``t (x^p + y^q) = 1``.

    Any isomorphism would identify ``Y_1`` with ``Y_ell`` or ``Y_ell''``.  For
    each such ``j`` a q-th root, then a p-th root, of ``t^-(j-1)`` would be
    needed; one of them fails exactly when ``pq`` does not divide ``j - 1``.
    """
    m = p * q
    pre = [
        (f"p = {p} is prime", bool(sympy.isprime(p))),
        (f"q = {q} >= 3", q >= 3),
        (f"gcd(p, q) = {gcd(p, q)} = 1", gcd(p, q) == 1),
        (f"gcd(l, m) = gcd({ell}, {m}) = 1", gcd(ell, m) == 1),
        (f"l = {ell} >= 2", ell >= 2),
        (f"l = {ell} is not +-1 mod {m}", m > 0 and ell % m not in {1 % m, (m - 1) % m}),
    ]
    params = {"p": p, "q": q, "ell": ell, "m": m, "preconditions": _preconditions(pre)}
    cert = NonIsoCertificate("fermat", params)
    if not all(ok for _, ok in pre):
        cert.verdict = PRECONDITIONS_VIOLATED
        return cert
    ell2 = normalize_mod(-ell, m)
    params["targets"] = [ell, ell2]
    for j in (ell, ell2):
        branch, twist = fermat_stage_checks(p, q, j)
        if branch:
            desc, cite = f"j = {j}: {q} ∤ {j - 1}", BRANCH_LOCUS
        elif twist:
            desc, cite = f"j = {j}: {q} | {j - 1} but {p} ∤ {j - 1}", COVER_TWIST
        else:
            desc, cite = f"j = {j}: {m} | {j - 1}, no obstruction", BRANCH_LOCUS
        cert.checks.append(
            CertificateCheck(desc, " => ".join([UNITS, GENERIC_FIBRE, cite, FERMAT_CONCLUSION]),
                             "pass" if branch or twist else "fail")
        )
    cert.verdict = CERTIFIED if all(c.status == "pass" for c in cert.checks) else NOT_CERTIFIED
    return cert


def certify_danielewski_noniso(n: int, m: int, ell: int, ell_prime: int) -> NonIsoCertificate:
    """Certify ``X_{n,m,ell}`` and ``X_{n,m,ell'}`` differ: ``m`` divides neither ``ell - ell'`` nor ``ell + ell'``."""
    pre = [
        (f"n = {n} >= 1", n >= 1),
        (f"m = {m} >= 2", m >= 2),
        (f"gcd(l, m) = gcd({ell}, {m}) = 1", m >= 1 and gcd(ell, m) == 1),
        (f"gcd(l', m) = gcd({ell_prime}, {m}) = 1", m >= 1 and gcd(ell_prime, m) == 1),
        ("l, l' >= 1", ell >= 1 and ell_prime >= 1),
    ]
    params = {"n": n, "m": m, "ell": ell, "ell_prime": ell_prime, "preconditions": _preconditions(pre)}
    cert = NonIsoCertificate("danielewski", params)
    if not all(ok for _, ok in pre):
        cert.verdict = PRECONDITIONS_VIOLATED
        return cert
    params["factorial"] = {"value": True, "citation": DANIELEWSKI_FACTORIAL}
    for j, sign in ((ell_prime, "-"), (normalize_mod(-ell_prime, m), "+")):
        diff = ell - ell_prime if sign == "-" else ell + ell_prime
        ok = diff % m != 0
        rel = "∤" if ok else "|"
        cert.checks.append(
            CertificateCheck(
                f"{m} {rel} {ell} {sign} {ell_prime} = {diff} (generic fibre target l' = {j})",
                " => ".join([UNITS, GENERIC_FIBRE, DANIELEWSKI_CRITERION]),
                "pass" if ok else "fail",
            )
        )
    cert.verdict = CERTIFIED if all(c.status == "pass" for c in cert.checks) else NOT_CERTIFIED
    return cert


def certify_fiber_distinct(
    p: int,
    q: int,
    ell1: int,
    spec1: FibrationSpec,
    ell2: int,
    spec2: FibrationSpec,
    torus_factors: int = 0,
) -> NonIsoCertificate:
    """Compare degenerate-fibre multisets of two monomial fibrations.

    Only the log-canonical fibrations of ``x^2 + y^3`` are known invariants;
    anything else yields at best a ``heuristic`` verdict.
    """
    if torus_factors < 0:
        raise ValueError("torus_factors must be >= 0")
    r1 = degenerate_fibers(p, q, ell1, spec1)
    r2 = degenerate_fibers(p, q, ell2, spec2)
    outcome = compare_fiber_multisets(r1, r2)
    canonical = (p, q) == (2, 3) and CANONICAL_23.get(ell1) == spec1 and CANONICAL_23.get(ell2) == spec2
    params = {
        "p": p,
        "q": q,
        "torus_factors": torus_factors,
        "first": r1.to_json(),
        "second": r2.to_json(),
        "comparison": outcome,
        "log_canonical": canonical,
    }
    cert = NonIsoCertificate("fiber-multiset", params)
    rel = "≠" if outcome == "distinct" else "="
    cert.checks.append(
        CertificateCheck(
            f"multiplicities {list(r1.multiset)} {rel} {list(r2.multiset)}",
            FIBRE_INVARIANT if canonical else "fibrations not known to be log-canonical; comparison is heuristic",
            "pass" if outcome == "distinct" else "fail",
        )
    )
    if outcome == "equal":
        cert.verdict = NOT_CERTIFIED
    else:
        cert.verdict = CERTIFIED if canonical else HEURISTIC
    return cert


class UnitsOutsideHypotheses(ValueError):
    pass


@dataclass(frozen=True)
class UnitsDescription:
    rank: int
    generator: str

    def to_json(self) -> dict:
        return {"rank": self.rank, "generator": self.generator, "citation": UNITS}


def units_description(irreducible: bool, m: int, ell: int, generator: str = "t") -> UnitsDescription:
    """Units of ``t^ell f = 1`` modulo constants: free of rank one on ``t``."""
    if not irreducible:
        raise UnitsOutsideHypotheses("f must be irreducible")
    if gcd(ell, m) != 1:
        raise UnitsOutsideHypotheses(
            f"gcd({ell}, {m}) = {gcd(ell, m)} != 1: outside the known hypotheses; "
            "the unit group in this case is not determined here"
        )
    return UnitsDescription(1, generator)
