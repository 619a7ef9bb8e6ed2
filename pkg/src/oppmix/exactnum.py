"""Exact arithmetic kernel: q-analogs, classical group orders, subspace counts.

Everything here is integer or Fraction arithmetic on arbitrary-precision
values; no floats anywhere.  Signs (the +/- type markers) are carried as
the integers +1 and -1 so they can be multiplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

PLUS = 1
MINUS = -1

_SIGN_CHARS = {"+": PLUS, "-": MINUS, "plus": PLUS, "minus": MINUS, "1": PLUS, "-1": MINUS}


def parse_sign(s) -> int:
    """Accept '+', '-', +1, -1 and return +1 or -1."""
    if s in (PLUS, MINUS):
        return s
    try:
        return _SIGN_CHARS[str(s).strip().lower()]
    except KeyError:
        raise ValueError(f"not a sign: {s!r}") from None


def sign_char(sigma: int) -> str:
    return "+" if sigma == PLUS else "-"


@dataclass(frozen=True)
class PrimePower:
    """q = p^k with p prime and k >= 1."""

    p: int
    k: int
    q: int

    def __post_init__(self):
        if self.p < 2 or not _is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.k < 1 or self.p**self.k != self.q:
            raise ValueError(f"q = {self.q} != {self.p}^{self.k}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> PrimePower:
    """Factor q as p^k or raise ValueError."""
    if q < 2:
        raise ValueError(f"q = {q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            if not _is_prime(p):
                break
            k = 0
            n = q
            while n % p == 0:
                n //= p
                k += 1
            if n != 1:
                break
            return PrimePower(p, k, q)
    raise ValueError(f"q = {q} is not a prime power")


def is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
        return True
    except ValueError:
        return False


def prime_powers_upto(limit: int) -> list[int]:
    """All prime powers q with 2 <= q <= limit, ascending."""
    return [q for q in range(2, limit + 1) if is_prime_power(q)]


def gaussian_binomial(a: int, b: int, q: int) -> int:
    """Number of b-dimensional subspaces of an a-dimensional space over F_q.

    Computed as prod_{i=1}^{b} (q^(a-i+1) - 1) / (q^i - 1); the division is
    exact and we assert so.
    """
    if b < 0 or a < 0 or b > a:
        raise ValueError(f"need 0 <= b <= a, got a={a}, b={b}")
    if q < 2:
        raise ValueError(f"need q >= 2, got q={q}")
    num = 1
    den = 1
    for i in range(1, b + 1):
        num *= q ** (a - i + 1) - 1
        den *= q**i - 1
        g = gcd(num, den)
        num //= g
        den //= g
    assert den == 1, "gaussian binomial did not reduce to an integer"
    return num


def omega(base: int, e: int) -> Fraction:
    """prod_{i=1}^{e} (1 - base^(-i)), exact.

    base may be negative (|base| >= 2); the signed-base variant shows up in
    the unitary counts, where consecutive factors pair up to stay positive.
    """
    if abs(base) < 2:
        raise ValueError(f"need |base| >= 2, got {base}")
    if e < 0:
        raise ValueError(f"need e >= 0, got {e}")
    out = Fraction(1)
    for i in range(1, e + 1):
        out *= 1 - Fraction(1, base**i)
    return out


def bq(base: int, e1: int, e2: int) -> Fraction:
    """omega(base, e1) * omega(base, e2) / omega(base, e1 + e2).

    For base q >= 2 this satisfies [e1+e2 choose e1]_q = q^(e1*e2) / bq.
    """
    if e1 < 0 or e2 < 0:
        raise ValueError(f"need e1, e2 >= 0, got {e1}, {e2}")
    return omega(base, e1) * omega(base, e2) / omega(base, e1 + e2)


def group_order_go(m: int, sigma: int, q: int) -> int:
    """|GO^sigma_{2m}(q)| = 2 q^(m(m-1)) (q^m - sigma) prod_{i=1}^{m-1} (q^2i - 1)."""
    sigma = parse_sign(sigma)
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    out = 2 * q ** (m * (m - 1)) * (q**m - sigma)
    for i in range(1, m):
        out *= q ** (2 * i) - 1
    return out


def group_order_sp(m: int, q: int) -> int:
    """|Sp_{2m}(q)| = q^(m^2) prod_{i=1}^{m} (q^2i - 1)."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    out = q ** (m * m)
    for i in range(1, m + 1):
        out *= q ** (2 * i) - 1
    return out


def group_order_gu(d: int, q: int) -> int:
    """|GU_d(q)| = q^(d(d-1)/2) prod_{i=1}^{d} (q^i - (-1)^i)."""
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    out = q ** (d * (d - 1) // 2)
    for i in range(1, d + 1):
        out *= q**i - (-1) ** i
    return out


class InexactDivisionError(ArithmeticError):
    """An orbit-stabilizer division left a remainder; signals a formula bug."""


def _exact_div(num: int, den: int, what: str) -> int:
    quot, rem = divmod(num, den)
    if rem != 0:
        raise InexactDivisionError(f"{what}: {num} not divisible by {den}")
    return quot


def count_nondegenerate(
    kind: str, e1: int, e2: int, q: int, eps: int | None = None, sigma1: int | None = None
) -> int:
    """Number of non-degenerate e1-subspaces of the classical (e1+e2)-space.

    Orbit-stabilizer count: |isometry group of V| / |stabilizer of a fixed
    subspace|.  In the orthogonal case the subspace has type sigma1 and its
    perp then has type eps*sigma1, so the stabilizer is
    GO^sigma1_e1 x GO^(eps*sigma1)_e2.
    """
    if kind == "orthogonal":
        if e1 % 2 or e2 % 2 or e1 < 2 or e2 < 2:
            raise ValueError(f"orthogonal needs e1, e2 even >= 2, got {e1}, {e2}")
        eps = parse_sign(eps)
        sigma1 = parse_sign(sigma1)
        num = group_order_go((e1 + e2) // 2, eps, q)
        den = group_order_go(e1 // 2, sigma1, q) * group_order_go(e2 // 2, eps * sigma1, q)
        return _exact_div(num, den, f"orthogonal count e1={e1} e2={e2} q={q}")
    if kind == "symplectic":
        if e1 % 2 or e2 % 2 or e1 < 2 or e2 < 2:
            raise ValueError(f"symplectic needs e1, e2 even >= 2, got {e1}, {e2}")
        num = group_order_sp((e1 + e2) // 2, q)
        den = group_order_sp(e1 // 2, q) * group_order_sp(e2 // 2, q)
        return _exact_div(num, den, f"symplectic count e1={e1} e2={e2} q={q}")
    if kind == "hermitian":
        if e1 < 1 or e2 < 1:
            raise ValueError(f"hermitian needs e1, e2 >= 1, got {e1}, {e2}")
        num = group_order_gu(e1 + e2, q)
        den = group_order_gu(e1, q) * group_order_gu(e2, q)
        return _exact_div(num, den, f"hermitian count e1={e1} e2={e2} q={q}")
    raise ValueError(f"unknown kind {kind!r}")


def lambda_factor(sigma1: int, eps: int, m1: int, m2: int, q: int) -> Fraction:
    """(1 + sigma1 q^-m1)(1 + eps*sigma1 q^-m2) / (2 (1 + eps q^-(m1+m2)))."""
    sigma1 = parse_sign(sigma1)
    eps = parse_sign(eps)
    if m1 < 1 or m2 < 1:
        raise ValueError(f"need m1, m2 >= 1, got {m1}, {m2}")
    num = (1 + Fraction(sigma1, q**m1)) * (1 + Fraction(eps * sigma1, q**m2))
    den = 2 * (1 + Fraction(eps, q ** (m1 + m2)))
    return num / den
