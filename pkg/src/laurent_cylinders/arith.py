"""Integer and congruence helpers: Bezout data, SL2 completion, square pairs."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import gcd


class ArithmeticPreconditionError(ValueError):
    pass


def xgcd(u: int, v: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*u + t*v == g == gcd(u, v) > 0``.

    The cofactor ``s`` is normalised into ``1 .. |v|/g`` when ``v != 0`` so
    that results are reproducible, e.g. ``xgcd(3, 10) == (1, 7, -2)``.
    """
    if u == 0 and v == 0:
        raise ArithmeticPreconditionError("xgcd(0, 0) is undefined")
    old_r, r = u, v
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    g, s, t = old_r, old_s, old_t
    if g < 0:
        g, s, t = -g, -s, -t
    if v:
        step = abs(v) // g
        k = (s - 1) // step  # shift s into 1..step
        s -= k * step
        t += k * (u // g) * (1 if v > 0 else -1)
    assert s * u + t * v == g
    return g, s, t


@dataclass(frozen=True)
class BezoutWitness:
    a: int
    b: int
    ell: int
    ell_prime: int
    m: int
    d: int

    def check(self) -> bool:
        md = abs(self.m) // self.d
        return (
            self.ell_prime == self.a * self.ell + self.b * self.m
            and gcd(self.a, md) == 1
            and self.d == gcd(self.ell, self.m) == gcd(self.ell_prime, self.m)
        )

    def to_json(self) -> dict:
        return asdict(self)


def bezout_with_unit_constraint(ell: int, ell_prime: int, m: int) -> BezoutWitness:
    """Write ``ell' = a*ell + b*m`` with ``a`` prime to ``m/d``, ``d = gcd(ell, m)``.

    ``a`` is taken as the representative of its (forced) class modulo ``m/d``
    lying in ``1 .. m/d``.
    """
    if m == 0:
        raise ArithmeticPreconditionError("m must be nonzero")
    d = gcd(ell, m)
    if d != gcd(ell_prime, m):
        raise ArithmeticPreconditionError(
            f"gcd({ell}, {m}) = {d} != gcd({ell_prime}, {m}) = {gcd(ell_prime, m)}: "
            "cylinders not provably isomorphic by the gcd criterion"
        )
    md = abs(m) // d
    _, s, _ = xgcd(ell // d, md) if md > 1 else (1, 1, 0)
    a = ((ell_prime // d) * s - 1) % md + 1
    # every solution has a in this class mod m/d; walk the class until gcd(a, m/d) = 1
    for _ in range(md + 1):
        if gcd(a, md) == 1:
            break
        a += md
    else:  # pragma: no cover - excluded by gcd(ell'/d, m/d) = 1
        raise ArithmeticPreconditionError("no unit-constrained Bezout solution found")
    b, r = divmod(ell_prime - a * ell, m)
    assert r == 0
    w = BezoutWitness(a, b, ell, ell_prime, m, d)
    assert w.check()
    return w


@dataclass(frozen=True)
class UnimodularMatrix:
    """Integer matrix ``((a, n), (alpha, beta))`` of determinant 1."""

    a: int
    n: int
    alpha: int
    beta: int

    @property
    def det(self) -> int:
        return self.a * self.beta - self.n * self.alpha

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.n), (self.alpha, self.beta))

    def to_json(self) -> dict:
        return asdict(self)


def unimodular_complete(a: int, n: int) -> UnimodularMatrix:
    """Complete the row ``(a, n)`` to an SL2(Z) matrix, ``|alpha|`` minimal, ties to ``alpha >= 0``."""
    if gcd(a, n) != 1:
        raise ArithmeticPreconditionError(f"gcd({a}, {n}) != 1, row cannot be completed")
    # a*beta - n*alpha = 1
    _, s, t = xgcd(a, n)
    beta0, alpha0 = s, -t
    if a == 0:
        # n = +-1, alpha is forced and beta is free; take beta = 0
        alpha = alpha0
        beta = 0
    else:
        step = abs(a)
        r = alpha0 % step
        candidates = [r, r - step]
        alpha = min(candidates, key=lambda x: (abs(x), x < 0))
        k = (alpha - alpha0) // a  # exact
        beta = beta0 + k * n
    mat = UnimodularMatrix(a, n, alpha, beta)
    if mat.det != 1:  # pragma: no cover
        raise AssertionError(f"completion failed: {mat}")
    return mat


@dataclass(frozen=True)
class SquarePair:
    a: int
    b: int
    c: int
    m: int

    @property
    def nontrivial(self) -> bool:
        return self.a % self.m not in {1 % self.m, (self.m - 1) % self.m}

    def check(self) -> bool:
        m = self.m
        return (
            self.a <= self.b
            and (self.a + self.b) % m == 0
            and (self.a * self.b) % (m * m) == 1 % (m * m)
            and self.a * self.b == 1 + self.c * m * m
        )

    def to_json(self) -> dict:
        return {**asdict(self), "nontrivial": self.nontrivial}

    @classmethod
    def make(cls, a: int, b: int, m: int) -> "SquarePair":
        c, r = divmod(a * b - 1, m * m)
        if r:
            raise ArithmeticPreconditionError(f"{a}*{b} is not 1 modulo {m}^2")
        return cls(a, b, c, m)


def square_pair_solve(m: int, bound: int) -> list[SquarePair]:
    """All ``1 <= a <= b <= bound`` with ``a + b = 0 (mod m)`` and ``ab = 1 (mod m^2)``.

    Plain bounded search; an empty answer says nothing beyond the bound.
    """
    if m < 2 or bound < 1:
        raise ArithmeticPreconditionError("need m >= 2 and bound >= 1")
    mm = m * m
    out = []
    for a in range(1, bound + 1):
        if gcd(a, m) != 1:
            continue
        b = a + (-2 * a) % m  # smallest b >= a with a + b = 0 mod m
        while b <= bound:
            if (a * b) % mm == 1:
                out.append(SquarePair(a, b, (a * b - 1) // mm, m))
            b += m
    return out


def normalize_mod(x: int, m: int) -> int:
    """Representative of ``x`` modulo ``m`` in ``1 .. m``."""
    if m < 1:
        raise ArithmeticPreconditionError("modulus must be >= 1")
    return (x - 1) % m + 1
