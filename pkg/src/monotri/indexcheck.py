"""Index-divisibility engines for monic trinomials x^n + A x^m + B.

Two independent routes decide whether a prime q divides the index
[Z_K : Z[theta]] of the equation order:

* a condition-dispatch engine on the shape of (q|A, q|B, q|m), with five
  mutually exclusive branches (the JKS criterion for trinomials);
* the classical Dedekind criterion, driven by factorization mod q.

The two must always agree; the test suite cross-checks them on a large
randomized corpus.  `trinomial_is_monogenic` scans every prime whose square
divides the discriminant and requires an index-free verdict at each.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import arith, poly
from .arith import FactorizationBudgetExceeded
from .poly import IntPolynomial, ModPolynomial, gcd_mod, reduce_mod, trinomial

__all__ = [
    "GeneralTrinomial",
    "JksContext",
    "IndexVerdict",
    "MonogenicityReport",
    "NotADiscriminantPrime",
    "Reducible",
    "EngineGap",
    "swan_general_discriminant",
    "jks_index_free",
    "dedekind_divides_index",
    "trinomial_is_monogenic",
]


class NotADiscriminantPrime(ValueError):
    """q does not divide the trinomial discriminant; the engine has no claim."""


class Reducible(ValueError):
    """The trinomial is reducible over Q; index language does not apply."""


class EngineGap(Exception):
    """Input falls outside every hypothesis pattern of the criterion."""


@dataclass(frozen=True)
class GeneralTrinomial:
    """x^n + A x^m + B with n > m >= 1."""

    n: int
    m: int
    A: int
    B: int

    def __post_init__(self):
        if not self.n > self.m >= 1:
            raise ValueError("need n > m >= 1")

    def polynomial(self) -> IntPolynomial:
        return trinomial(self.n, self.m, self.A, self.B)

    @property
    def d0(self) -> int:
        return math.gcd(self.n, self.m)

    @property
    def n1(self) -> int:
        return self.n // self.d0

    @property
    def m1(self) -> int:
        return self.m // self.d0


@dataclass
class JksContext:
    """Derived quantities for one (trinomial, q) criterion evaluation."""

    q: int
    d0: int
    m1: int
    n1: int
    j: int = 0
    l: int = 0
    a1: int | None = None
    a2: int | None = None
    b1: int | None = None
    b2: int | None = None
    r: int | None = None
    s: int | None = None
    s_prime: int | None = None


@dataclass(frozen=True)
class IndexVerdict:
    q: int
    divides_index: bool
    condition_used: str  # one of i..v, or "dedekind"
    detail: str


def _nth_root_exact(v: int, k: int):
    """Integer k-th root of v if exact, else None (k odd allows v<0)."""
    if v < 0:
        if k % 2 == 0:
            return None
        r = _nth_root_exact(-v, k)
        return None if r is None else -r
    r = round(v ** (1.0 / k)) if v.bit_length() < 500 else None
    if r is None or r**k != v:
        # fall back to exact bisection for huge values or float misses
        lo, hi = 0, 1 << (v.bit_length() // k + 2)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid**k < v:
                lo = mid + 1
            else:
                hi = mid
        r = lo
    return r if r**k == v else None


def swan_general_discriminant(t: GeneralTrinomial) -> int:
    """Exact discriminant of x^n + A x^m + B.

    Uses the closed form b^{p(p-1)} p^{2p} (a^2 - 4 b^p)^p when the trinomial
    has the shape x^{2p} + a x^p + b^p for an odd prime p; otherwise falls
    back to the resultant-based computation.
    """
    n, m, A, B = t.n, t.m, t.A, t.B
    if n == 2 * m and m % 2 == 1 and arith.is_prime(m):
        b = _nth_root_exact(B, m)
        if b is not None:
            p = m
            return b ** (p * (p - 1)) * p ** (2 * p) * (A * A - 4 * B) ** p
    return poly.discriminant(t.polynomial())


def _build_h2(A: int, B: int, s: int, Q: int, q: int) -> IntPolynomial:
    """H2 = (A x^{sQ} + B + (-A x^s - B)^Q) / q with Q = q^r, exactly."""
    # (-A x^s - B)^Q = sum_i C(Q,i) (-A)^i (-B)^{Q-i} x^{s i}
    coeffs = [0] * (s * Q + 1)
    binom = 1
    powA = 1
    powB = (-B) ** Q
    for i in range(Q + 1):
        c = binom * powA * powB
        if i == Q:
            c += A
        if i == 0:
            c += B
        assert c % q == 0, "H2 numerator not divisible by q"
        coeffs[s * i] = c // q
        if i < Q:
            # advance C(Q,i), (-A)^i, (-B)^{Q-i}
            binom = binom * (Q - i) // (i + 1)
            powA *= -A
            powB //= -B
    return IntPolynomial(coeffs)


def jks_index_free(
    t: GeneralTrinomial,
    q: int,
    check_irreducible: bool = True,
    disc: int | None = None,
) -> IndexVerdict:
    """Decide whether the prime q | disc divides the index, by condition
    dispatch on (q|A, q|B, q|m).

    Exactly one of the five branches fires; anything outside their combined
    hypotheses raises EngineGap instead of guessing.
    """
    if not arith.is_prime(q):
        raise arith.NotPrime(f"{q} is not prime")
    if disc is None:
        disc = swan_general_discriminant(t)
    if disc % q != 0:
        raise NotADiscriminantPrime(f"{q} does not divide the discriminant")
    if check_irreducible and not poly.is_irreducible_over_Q(t.polynomial()):
        raise Reducible(f"{t.polynomial()} is reducible over Q")

    n, m, A, B = t.n, t.m, t.A, t.B
    ctx = JksContext(q=q, d0=t.d0, m1=t.m1, n1=t.n1)
    qA = A % q == 0
    qB = B % q == 0

    if qA and qB:
        free = B % (q * q) != 0
        detail = f"(i): q|A, q|B; q^2 {'not ' if free else ''}dividing B"
        return IndexVerdict(q, not free, "i", detail)

    if qA and not qB:
        ctx.j = arith.valuation(n, q)
        if ctx.j < 1:
            raise EngineGap(f"q={q} | A, q∤B but q∤n: outside criterion")
        ctx.a2 = A // q
        num = B + (-B) ** (q**ctx.j)
        assert num % q == 0, "b1 not integral"
        ctx.b1 = num // q
        first = ctx.a2 % q == 0 and ctx.b1 % q != 0
        second = (
            ctx.a2 * ((-B) ** ctx.m1 * ctx.a2**ctx.n1 - (-ctx.b1) ** ctx.n1)
        ) % q != 0
        free = first or second
        detail = f"(ii): q|A, q∤B; a2={ctx.a2}, b1={ctx.b1}"
        return IndexVerdict(q, not free, "ii", detail)

    if not qA and qB:
        ctx.l = arith.valuation(n - m, q)
        num = A + (-A) ** (q**ctx.l)
        assert num % q == 0, "a1 not integral"
        ctx.a1 = num // q
        ctx.b2 = B // q
        first = ctx.a1 % q == 0 and ctx.b2 % q != 0
        second = (
            ctx.a1
            * ctx.b2 ** (m - 1)
            * ((-A) ** ctx.m1 * ctx.a1 ** (ctx.n1 - ctx.m1)
               - (-ctx.b2) ** (ctx.n1 - ctx.m1))
        ) % q != 0
        free = first or second
        detail = f"(iii): q∤A, q|B; a1={ctx.a1}, b2={ctx.b2}"
        return IndexVerdict(q, not free, "iii", detail)

    if m % q == 0:
        # r is the largest power with q^r | gcd(n, m), so q ∤ gcd(s', s)
        ctx.r = min(arith.valuation(m, q), arith.valuation(n, q))
        if ctx.r < 1:
            raise EngineGap(f"q={q} | m but q ∤ n: outside criterion")
        Q = q**ctx.r
        ctx.s = m // Q
        ctx.s_prime = n // Q
        h1 = reduce_mod(trinomial(ctx.s_prime, ctx.s, A, B), q)
        h2 = reduce_mod(_build_h2(A, B, ctx.s, Q, q), q)
        g = gcd_mod(h1, h2)
        free = g.degree == 0
        detail = f"(iv): q∤AB, q|m; gcd(H1,H2) mod {q} has degree {g.degree}"
        return IndexVerdict(q, not free, "iv", detail)

    n1, m1 = ctx.n1, ctx.m1
    crit = B ** (n1 - m1) * n1**n1 - (-1) ** m1 * A**n1 * m1**m1 * (
        m1 - n1
    ) ** (n1 - m1)
    free = crit % (q * q) != 0
    detail = f"(v): q∤ABm; q^2 {'not ' if free else ''}dividing the resolvent"
    return IndexVerdict(q, not free, "v", detail)


def dedekind_divides_index(
    f: IntPolynomial,
    q: int,
    check_irreducible: bool = True,
    seed: int = 0,
    symmetric_lift: bool = False,
) -> bool:
    """Dedekind criterion: does the prime q divide [Z_K : Z[theta]]?

    Factor f mod q; with g = product of the distinct irreducible factors and
    h = f/g lifted to Z, the index is divisible by q iff
    gcd((g*h - f)/q, g, h) mod q has positive degree.  The verdict does not
    depend on the lift convention (representatives in [0,q) or symmetric).
    """
    if not f.is_monic():
        raise ValueError("Dedekind criterion requires a monic polynomial")
    if check_irreducible and not poly.is_irreducible_over_Q(f):
        raise Reducible(f"{f} is reducible over Q")
    fbar = reduce_mod(f, q)
    factors = poly.factor_mod(fbar, seed=seed)
    gbar = ModPolynomial(q, [1])
    for irr, _ in factors:
        gbar = gbar * irr
    hbar = fbar // gbar

    def lift(mp: ModPolynomial) -> IntPolynomial:
        if symmetric_lift:
            return IntPolynomial(
                [c - q if c > q // 2 else c for c in mp.coeffs]
            )
        return IntPolynomial(mp.coeffs)

    g, h = lift(gbar), lift(hbar)
    gh = g.to_sympy() * h.to_sympy()
    diff = [int(c) for c in (gh - f.to_sympy()).all_coeffs()] or [0]
    assert all(c % q == 0 for c in diff)
    tbar = ModPolynomial(q, [c // q for c in reversed(diff)])
    d = gcd_mod(gcd_mod(tbar, gbar), hbar)
    return d.degree > 0


@dataclass(frozen=True)
class MonogenicityReport:
    monogenic: bool
    checks: tuple  # of IndexVerdict, one per prime with q^2 | disc
    disc: int


def trinomial_is_monogenic(
    t: GeneralTrinomial,
    check_irreducible: bool = True,
    **budget,
) -> MonogenicityReport:
    """True iff no prime with q^2 | disc divides the index.

    Factoring the discriminant may exhaust the budget, in which case
    FactorizationBudgetExceeded propagates: the verdict is then unknown,
    never guessed.
    """
    f = t.polynomial()
    if check_irreducible and not poly.is_irreducible_over_Q(f):
        raise Reducible(f"{f} is reducible over Q")
    disc = swan_general_discriminant(t)
    if disc == 0:
        raise Reducible("zero discriminant: repeated roots")
    fac = arith.factorize(disc, **budget)
    checks = []
    monogenic = True
    for q in sorted(fac.factors):
        if fac.factors[q] < 2:
            continue
        verdict = jks_index_free(t, q, check_irreducible=False, disc=disc)
        checks.append(verdict)
        if verdict.divides_index:
            monogenic = False
    return MonogenicityReport(monogenic, tuple(checks), disc)
