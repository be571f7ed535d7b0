"""Dense univariate polynomials over Z and over prime fields.

Integer polynomials are coefficient tuples, constant term first.  The
discriminant is computed from the resultant (via sympy's exact subresultant
machinery) so it can serve as an independent oracle against closed-form
discriminant formulas elsewhere in the package.  Factorization over F_q is
squarefree split + distinct-degree split + Cantor-Zassenhaus equal-degree
split with caller-supplied randomness.  Irreducibility over Q is exact
(modular factorization with Hensel lifting and recombination, via sympy).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import sympy

__all__ = [
    "IntPolynomial",
    "ModPolynomial",
    "ModulusMismatch",
    "RamifiedPrime",
    "DegreeBudgetExceeded",
    "reduce_mod",
    "gcd_mod",
    "discriminant",
    "factor_mod",
    "degree_pattern",
    "is_irreducible_over_Q",
    "trinomial",
]

DEFAULT_DEGREE_BUDGET = 40

_x = sympy.Symbol("x")


class ModulusMismatch(ValueError):
    """Arithmetic attempted between polynomials over different prime fields."""


class RamifiedPrime(ValueError):
    """Prime divides the discriminant; no Frobenius degree pattern exists."""


class DegreeBudgetExceeded(Exception):
    """Degree above the configured bound for exact irreducibility testing."""


def _strip(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial over Z; coeffs[i] is the coefficient of x^i."""

    coeffs: tuple

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", _strip(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.lc == 1

    def __call__(self, v):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def to_sympy(self):
        return sympy.Poly(list(reversed(self.coeffs)) or [0], _x)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            else:
                xs = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    terms.append(xs)
                elif c == -1:
                    terms.append(f"-{xs}")
                else:
                    terms.append(f"{c}*{xs}")
        return " + ".join(terms).replace("+ -", "- ")


def trinomial(n: int, m: int, A: int, B: int) -> IntPolynomial:
    """x^n + A*x^m + B."""
    if not n > m >= 1:
        raise ValueError("need n > m >= 1")
    c = [0] * (n + 1)
    c[0] = B
    c[m] += A
    c[n] += 1
    return IntPolynomial(c)


@dataclass(frozen=True)
class ModPolynomial:
    """Polynomial over F_q; all coefficients reduced into [0, q)."""

    modulus: int
    coeffs: tuple

    def __init__(self, modulus, coeffs):
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", _strip(c % modulus for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _check(self, other):
        if self.modulus != other.modulus:
            raise ModulusMismatch(f"{self.modulus} != {other.modulus}")

    def __add__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        a += (0,) * (n - len(a))
        b += (0,) * (n - len(b))
        return ModPolynomial(self.modulus, [x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        a += (0,) * (n - len(a))
        b += (0,) * (n - len(b))
        return ModPolynomial(self.modulus, [x - y for x, y in zip(a, b)])

    def __mul__(self, other):
        if isinstance(other, int):
            return ModPolynomial(self.modulus, [other * c for c in self.coeffs])
        self._check(other)
        if self.is_zero() or other.is_zero():
            return ModPolynomial(self.modulus, [])
        q = self.modulus
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = (out[i + j] + a * b) % q
        return ModPolynomial(q, out)

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = self.modulus
        inv_lc = pow(other.lc, -1, q)
        rem = list(self.coeffs)
        db = other.degree
        quo = [0] * max(len(rem) - db, 1)
        for i in range(len(rem) - 1 - db, -1, -1):
            c = rem[i + db] % q
            if c == 0:
                continue
            c = c * inv_lc % q
            quo[i] = c
            for j, b in enumerate(other.coeffs):
                rem[i + j] = (rem[i + j] - c * b) % q
        return ModPolynomial(q, quo), ModPolynomial(q, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "ModPolynomial":
        if self.is_zero():
            return self
        inv = pow(self.lc, -1, self.modulus)
        return self * inv

    def derivative(self) -> "ModPolynomial":
        return ModPolynomial(
            self.modulus, [i * c for i, c in enumerate(self.coeffs)][1:]
        )

    def __call__(self, v):
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * v + c) % self.modulus
        return acc

    def pow_mod(self, e: int, mod: "ModPolynomial") -> "ModPolynomial":
        """self^e reduced modulo `mod`."""
        result = ModPolynomial(self.modulus, [1])
        base = self % mod
        while e > 0:
            if e & 1:
                result = result * base % mod
            base = base * base % mod
            e >>= 1
        return result

    def __str__(self):
        body = str(IntPolynomial(self.coeffs)) if self.coeffs else "0"
        return f"({body}) mod {self.modulus}"


def reduce_mod(f: IntPolynomial, q: int) -> ModPolynomial:
    """Coefficientwise reduction of f modulo the prime q."""
    return ModPolynomial(q, f.coeffs)


def gcd_mod(f: ModPolynomial, g: ModPolynomial) -> ModPolynomial:
    """Monic gcd over F_q (Euclid)."""
    f._check(g)
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def discriminant(f: IntPolynomial) -> int:
    """(-1)^{n(n-1)/2} * Res(f, f') / lc(f), computed exactly via resultants."""
    n = f.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    res = sympy.resultant(f.to_sympy(), f.derivative().to_sympy())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return int(sign * res // f.lc)


def _char_p_root(f: ModPolynomial) -> ModPolynomial:
    """q-th root of a polynomial in x^q over the prime field F_q."""
    return ModPolynomial(f.modulus, f.coeffs[:: f.modulus])


def _squarefree_parts(f: ModPolynomial):
    """Yield (multiplicity, squarefree factor) pairs with product f (monic)."""
    q = f.modulus
    f = f.monic()
    if f.degree <= 0:
        return
    d = f.derivative()
    if d.is_zero():
        for mult, part in _squarefree_parts(_char_p_root(f)):
            yield mult * q, part
        return
    c = gcd_mod(f, d)
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd_mod(w, c)
        part = w // y
        if part.degree > 0:
            yield i, part
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        # leftover factors all have multiplicity divisible by q
        for mult, part in _squarefree_parts(_char_p_root(c)):
            yield mult * q, part


def _distinct_degree(f: ModPolynomial):
    """Split a squarefree monic f into (degree d, product of deg-d factors)."""
    q = f.modulus
    x = ModPolynomial(q, [0, 1])
    h = x
    d = 0
    out = []
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(q, f)
        g = gcd_mod(f, h - x)
        if g.degree > 0:
            out.append((d, g))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.degree, f))
    return out


def _equal_degree(f: ModPolynomial, d: int, rng: random.Random):
    """Cantor-Zassenhaus split of monic squarefree f with all factors deg d."""
    q = f.modulus
    n = f.degree
    if n == d:
        return [f]
    while True:
        a = ModPolynomial(q, [rng.randrange(q) for _ in range(n)])
        if a.degree < 1:
            continue
        if q % 2 == 1:
            b = a.pow_mod((q**d - 1) // 2, f) - ModPolynomial(q, [1])
        else:
            # trace map for characteristic 2
            b = a
            t = a
            for _ in range(d - 1):
                t = t.pow_mod(q, f)
                b = b + t
        g = gcd_mod(f, b)
        if 0 < g.degree < n:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def factor_mod(f: ModPolynomial, seed: int = 0):
    """Factor f over F_q as a list of (irreducible monic factor, exponent).

    The equal-degree split is randomized; a fixed seed makes the run
    reproducible.  Factor order is canonical (by degree, then coefficients).
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out = []
    for mult, part in _squarefree_parts(f):
        for d, prod in _distinct_degree(part):
            for irr in _equal_degree(prod, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return out


def degree_pattern(f: IntPolynomial, ell: int):
    """Multiset (sorted list) of irreducible factor degrees of f mod ell.

    Requires ell unramified (f squarefree mod ell, same thing for monic f);
    this is the Frobenius cycle type at ell.
    """
    fq = reduce_mod(f, ell)
    if fq.degree != f.degree:
        raise RamifiedPrime(f"leading coefficient vanishes mod {ell}")
    if gcd_mod(fq, fq.derivative()).degree != 0:
        raise RamifiedPrime(f"{ell} divides the discriminant")
    pattern = []
    for d, prod in _distinct_degree(fq.monic()):
        pattern.extend([d] * (prod.degree // d))
    return sorted(pattern)


def is_irreducible_over_Q(
    f: IntPolynomial, degree_budget: int = DEFAULT_DEGREE_BUDGET
) -> bool:
    """Exact irreducibility over the rationals for monic f.

    Backed by exact modular factorization + Hensel lifting + recombination;
    degrees above the budget are refused rather than answered heuristically.
    """
    if not f.is_monic() or f.degree < 1:
        raise ValueError("need a monic polynomial of degree >= 1")
    if f.degree > degree_budget:
        raise DegreeBudgetExceeded(f"degree {f.degree} > budget {degree_budget}")
    return bool(f.to_sympy().is_irreducible)
