"""Arbitrary-precision integer primitives.

Primality, bounded factorization, squarefree testing, valuations and exact
square roots.  Everything here is a pure function of its arguments, so the
module is safe to call from any number of threads.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

__all__ = [
    "FactoredInteger",
    "FactorizationBudgetExceeded",
    "NotPrime",
    "is_prime",
    "factorize",
    "is_squarefree",
    "valuation",
    "exact_square_root",
    "primes",
]

# Below this bound the Miller-Rabin battery with the first 13 primes as
# witnesses is a proven deterministic primality test (Sorenson-Webster).
_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_SMALL_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

# 64 rounds above the proven bound: compositeness escapes with
# probability < 4^-64 = 2^-128.  Witnesses are drawn from an RNG seeded
# by the input itself, so the answer is deterministic per input.
_LARGE_ROUNDS = 64

DEFAULT_TRIAL_BOUND = 100_000
DEFAULT_RHO_BUDGET = 1 << 21


class FactorizationBudgetExceeded(Exception):
    """Raised when the factoring effort bound is hit; never a wrong answer."""


class NotPrime(ValueError):
    """Raised when an argument required to be prime is not."""


def _miller_rabin_witness(n, a):
    """True if a witnesses the compositeness of n."""
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """True iff |n| is prime.

    Deterministic below _DETERMINISTIC_BOUND; above it a 64-round
    Miller-Rabin test with input-seeded witnesses (error < 2^-128).
    """
    n = abs(n)
    if n < 2:
        return False
    for p in _SMALL_WITNESSES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _DETERMINISTIC_BOUND:
        witnesses = _SMALL_WITNESSES
    else:
        rng = random.Random(n)
        witnesses = [rng.randrange(2, n - 1) for _ in range(_LARGE_ROUNDS)]
    return not any(_miller_rabin_witness(n, a) for a in witnesses)


def primes(start: int = 2):
    """Yield primes >= start in increasing order."""
    n = max(2, start)
    if n % 2 == 0 and n > 2:
        n += 1
    if n == 2:
        yield 2
        n = 3
    while True:
        if is_prime(n):
            yield n
        n += 2


@dataclass(frozen=True)
class FactoredInteger:
    """Sign plus prime -> exponent map; zero is sign=0 with empty map."""

    sign: int
    factors: dict = field(default_factory=dict)

    def value(self) -> int:
        v = self.sign
        for p, e in self.factors.items():
            v *= p**e
        return v

    def is_squarefree(self) -> bool:
        return all(e == 1 for e in self.factors.values())

    def exponent_of(self, q: int) -> int:
        return self.factors.get(q, 0)


def _pollard_brent(n, budget, rng):
    """Brent-cycle Pollard rho; returns a nontrivial factor of composite n.

    Raises FactorizationBudgetExceeded once `budget` iterations are spent.
    """
    if n % 2 == 0:
        return 2
    spent = 0
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
                spent += min(m, r - k + m)
                if spent > budget:
                    raise FactorizationBudgetExceeded(
                        f"rho budget {budget} exhausted on {n}"
                    )
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                spent += 1
                if spent > budget:
                    raise FactorizationBudgetExceeded(
                        f"rho budget {budget} exhausted on {n}"
                    )
        if g != n:
            return g


def factorize(
    n: int,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_budget: int = DEFAULT_RHO_BUDGET,
) -> FactoredInteger:
    """Full prime factorization of n != 0.

    Trial division up to trial_bound, then Pollard-Brent rho with an
    iteration budget; budget exhaustion raises rather than guessing.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if n > 0 else -1
    n = abs(n)
    factors: dict[int, int] = {}

    def add(p, e=1):
        factors[p] = factors.get(p, 0) + e

    while n % 2 == 0:
        add(2)
        n //= 2
    d = 3
    while d * d <= n and d <= trial_bound:
        while n % d == 0:
            add(d)
            n //= d
        d += 2
    if n == 1:
        return FactoredInteger(sign, factors)
    if d * d > n or is_prime(n):
        add(n)
        return FactoredInteger(sign, factors)

    rng = random.Random(n)
    stack = [n]
    while stack:
        m = stack.pop()
        if is_prime(m):
            add(m)
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack.extend([root, root])
            continue
        g = _pollard_brent(m, rho_budget, rng)
        stack.extend([g, m // g])
    return FactoredInteger(sign, factors)


def is_squarefree(n: int, **budget) -> bool:
    """True iff no prime square divides |n|."""
    if n == 0:
        raise ValueError("0 is not squarefree or squareful")
    return factorize(n, **budget).is_squarefree()


def valuation(n: int, q: int) -> int:
    """Largest e with q^e | n, for prime q and n != 0."""
    if not is_prime(q):
        raise NotPrime(f"{q} is not prime")
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    n = abs(n)
    e = 0
    while n % q == 0:
        n //= q
        e += 1
    return e


def exact_square_root(n: int):
    """y >= 0 with y*y == n, or None if n is not a perfect square."""
    if n < 0:
        return None
    y = math.isqrt(n)
    return y if y * y == n else None
