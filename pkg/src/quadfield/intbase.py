"""Exact integer primitives: square roots, factoring, primality, Kronecker symbol."""

from __future__ import annotations

import math
from dataclasses import dataclass

DEFAULT_TRIAL_BOUND = 10**7

# Deterministic Miller-Rabin witness sets, keyed by the bound below which they are proven.
_MR_WITNESSES = (
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_317_044_064_679_887_385_961_981, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)


class BudgetExceeded(ValueError):
    """Raised when an input is too large for the configured exact budget."""


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for q, e in self.factors:
            if q <= last or e < 1:
                raise ValueError(f"malformed factorization {self.factors}")
            last = q
            prod *= q**e
        if prod != self.value:
            raise ValueError(f"factors {self.factors} do not multiply to {self.value}")

    @property
    def primes(self) -> list[int]:
        return [q for q, _ in self.factors]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def isqrt(n: int) -> int:
    if n < 0:
        raise ValueError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with proven witness sets)."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % q == 0:
            return n == q
    for bound, witnesses in _MR_WITNESSES:
        if n < bound:
            break
    else:
        raise BudgetExceeded(f"primality of {n} beyond deterministic range")
    s, t = 0, n - 1
    while t % 2 == 0:
        s += 1
        t //= 2
    for a in witnesses:
        x = pow(a, t, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int, bound: int = DEFAULT_TRIAL_BOUND) -> Factorization:
    """Factor ``n`` by trial division up to ``bound``.

    Inputs above ``bound**2`` could leave an uncertified cofactor and are
    rejected with :class:`BudgetExceeded`.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    if n > bound * bound:
        raise BudgetExceeded(f"budget exceeded: {n} > {bound}**2")
    factors = []
    m = n
    for q in (2, 3):
        e = 0
        while m % q == 0:
            m //= q
            e += 1
        if e:
            factors.append((q, e))
    q, step = 5, 2
    while q * q <= m:
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            factors.append((q, e))
        q += step
        step = 6 - step
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def is_squarefree(n: int, bound: int = DEFAULT_TRIAL_BOUND) -> bool:
    return all(e == 1 for _, e in factorize(n, bound))


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), extended to n = 0, n even and n negative."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    sign = 1
    while n % 2 == 0:
        n //= 2
        if a % 8 in (3, 5):
            sign = -sign
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    # n is now odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0
