"""Classification layer for the family f(x) = x^{2p} + a x^p + b^p.

Everything specific to this two-parameter family lives here: the quantity
delta = a^2 - 4 b^p, the closed-form discriminant, the Galois-group split on
the sign pattern of delta, the case ledger (delta = +-p y^2 or neither),
quadratic monogenicity, the composed-polynomial monogenicity test, and the
full verdict with a structured reason trace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import arith, indexcheck, poly
from .arith import FactorizationBudgetExceeded
from .indexcheck import GeneralTrinomial, Reducible
from .poly import IntPolynomial, trinomial

__all__ = [
    "TrinomialFamily",
    "CaseKind",
    "CaseLabel",
    "GaloisKind",
    "GaloisClass",
    "Classification",
    "UnsupportedB",
    "delta",
    "swan_disc_f",
    "family_polynomial",
    "family_is_irreducible",
    "galois_group",
    "case_label",
    "quadratic_is_monogenic",
    "kkr_monogenic",
    "classify",
    "exceptional_sets",
    "theorem_item",
    "theorem_membership",
]


class UnsupportedB(ValueError):
    """|b| != 1 where the case ledger requires b = +-1."""


@dataclass(frozen=True)
class TrinomialFamily:
    """The triple (p, a, b) defining x^{2p} + a x^p + b^p."""

    p: int
    a: int
    b: int

    def __post_init__(self):
        if self.p < 3 or not arith.is_prime(self.p):
            raise ValueError("p must be an odd prime >= 3")
        if self.a == 0 or self.b == 0:
            raise ValueError("need a*b != 0")


class CaseKind(Enum):
    GAMMA1_B1 = "Gamma1_b1"  # delta = +p y^2, b = 1
    GAMMA2_B1 = "Gamma2_b1"  # delta = -p y^2, b = 1
    GAMMA1_BNEG1 = "Gamma1_bneg1"  # delta = +p y^2, b = -1
    OMEGA_B1 = "Omega_b1"  # p | delta, delta != +-p y^2, b = 1
    OMEGA_BNEG1 = "Omega_bneg1"
    P_NOT_DIVIDING_DELTA = "p_not_dividing_delta"


@dataclass(frozen=True)
class CaseLabel:
    kind: CaseKind
    y_witness: int | None = None


class GaloisKind(Enum):
    FROBENIUS_P_PMINUS1 = "Frobenius_p_pminus1"  # C_p : C_{p-1}
    HALF_TIMES_C2 = "Half_times_C2"  # (C_p : C_{(p-1)/2}) x C_2
    FULL_TIMES_C2 = "Full_times_C2"  # (C_p : C_{p-1}) x C_2


@dataclass(frozen=True)
class GaloisClass:
    kind: GaloisKind
    order: int

    @staticmethod
    def for_kind(kind: GaloisKind, p: int) -> "GaloisClass":
        if kind is GaloisKind.FULL_TIMES_C2:
            return GaloisClass(kind, 2 * p * (p - 1))
        return GaloisClass(kind, p * (p - 1))

    def describe(self, p: int) -> str:
        if self.kind is GaloisKind.FROBENIUS_P_PMINUS1:
            return f"C{p}:C{p - 1}"
        if self.kind is GaloisKind.HALF_TIMES_C2:
            return f"(C{p}:C{(p - 1) // 2})xC2"
        return f"(C{p}:C{p - 1})xC2"


@dataclass(frozen=True)
class Classification:
    family: TrinomialFamily
    delta: int
    disc_f: int
    irreducible: bool
    case: CaseLabel | None
    galois: GaloisClass | None
    monogenic: bool | None  # None = unknown (budget) or reducible
    field_discriminant: int | None
    reason: tuple  # ordered tuple of applied-rule strings


def delta(fam: TrinomialFamily) -> int:
    """a^2 - 4 b^p."""
    return fam.a * fam.a - 4 * fam.b**fam.p


def family_polynomial(fam: TrinomialFamily) -> IntPolynomial:
    return trinomial(2 * fam.p, fam.p, fam.a, fam.b**fam.p)


def swan_disc_f(fam: TrinomialFamily) -> int:
    """Closed-form discriminant b^{p(p-1)} p^{2p} (a^2 - 4 b^p)^p."""
    p, b = fam.p, fam.b
    return b ** (p * (p - 1)) * p ** (2 * p) * delta(fam) ** p


def _dickson_trace(s: int, n: int, k: int) -> int:
    """gamma^k + conj(gamma)^k where gamma + conj = s, gamma*conj = n."""
    # D_0 = 2, D_1 = s, D_j = s D_{j-1} - n D_{j-2}
    if k == 0:
        return 2
    prev, cur = 2, s
    for _ in range(k - 1):
        prev, cur = cur, s * cur - n * prev
    return cur


def family_is_irreducible(fam: TrinomialFamily) -> bool:
    """Exact irreducibility of f = g(x^p), g = x^2 + a x + b^p, over Q.

    g is reducible iff delta is a perfect square (or zero), and then so is
    f.  Otherwise, with beta a root of g, f is irreducible iff beta is not
    a p-th power in Q(beta).  Any gamma with gamma^p = beta is a quadratic
    integer of norm b and some integer trace s, and then
    trace(gamma^p) = D_p(s, b) must equal -a; so f is reducible iff the
    Dickson value D_p(s, b) hits -a for some integer s in a small range.
    """
    p, a, b = fam.p, fam.a, fam.b
    d = delta(fam)
    if d == 0 or arith.exact_square_root(d) is not None:
        return False
    # |gamma| <= max(|beta|, |beta'|)^{1/p}, which bounds s = gamma + conj
    root_bound = (abs(a) + math.isqrt(abs(d)) + 2) // 2 + 1
    s_bound = 2 * math.ceil(root_bound ** (1.0 / p)) + 2
    for s in range(-s_bound, s_bound + 1):
        if _dickson_trace(s, b, p) == -a:
            return False
    return True


def galois_group(fam: TrinomialFamily) -> GaloisClass:
    """Galois class of f from the sign pattern of delta = +-p y^2."""
    if not family_is_irreducible(fam):
        raise Reducible(f"family {fam} is reducible over Q")
    p = fam.p
    d = delta(fam)
    if d % p == 0:
        if p % 4 == 1 and d > 0 and arith.exact_square_root(d // p) is not None:
            return GaloisClass.for_kind(GaloisKind.FROBENIUS_P_PMINUS1, p)
        if p % 4 == 3 and d < 0 and arith.exact_square_root(-d // p) is not None:
            return GaloisClass.for_kind(GaloisKind.HALF_TIMES_C2, p)
    return GaloisClass.for_kind(GaloisKind.FULL_TIMES_C2, p)


def case_label(fam: TrinomialFamily) -> CaseLabel:
    """Which of the delta = +-p y^2 / neither cases (p | delta), or p∤delta."""
    p, b = fam.p, fam.b
    d = delta(fam)
    if d % p != 0:
        return CaseLabel(CaseKind.P_NOT_DIVIDING_DELTA)
    if b not in (1, -1):
        raise UnsupportedB(f"case ledger needs b = +-1, got b={b}")
    t = d // p
    if t == 0:
        # delta = 0 = p*0^2 (a degenerate, always-reducible family)
        return CaseLabel(CaseKind.GAMMA1_B1 if b == 1 else CaseKind.GAMMA1_BNEG1, 0)
    if t > 0:
        y = arith.exact_square_root(t)
        if y is not None:
            kind = CaseKind.GAMMA1_B1 if b == 1 else CaseKind.GAMMA1_BNEG1
            return CaseLabel(kind, y)
    elif t < 0:
        y = arith.exact_square_root(-t)
        if y is not None:
            if b == -1:
                # delta = a^2 + 4 > 0: cannot be -p y^2
                raise AssertionError("(Gamma2, -1) is impossible")
            return CaseLabel(CaseKind.GAMMA2_B1, y)
    kind = CaseKind.OMEGA_B1 if b == 1 else CaseKind.OMEGA_BNEG1
    return CaseLabel(kind)


def _squarefree_reasons(a: int, b: int, **budget):
    """Per-factor squarefree/parity analysis behind quadratic monogenicity.

    Returns (verdict, reasons).  For b=1 the squarefree requirement on
    W = (a^2-4)/gcd(a,2)^2 splits into its two near-coprime factors, which
    gives sharper failure messages.
    """
    reasons = []
    if b == 1:
        if a % 2 == 0 and a % 4 != 0:
            return False, ["2|a but 4∤a forbidden for b=1"]
        lo, hi = (a - 2, a + 2) if a % 2 else ((a - 2) // 2, (a + 2) // 2)
        ok = True
        for v, name in ((lo, "a-2"), (hi, "a+2")):
            shown = a - 2 if name == "a-2" else a + 2
            if v == 0:
                return False, [f"{name}={shown} is zero"]
            if not arith.is_squarefree(v, **budget):
                reasons.append(f"{name}={shown} not squarefree")
                ok = False
        if ok:
            reasons.append("a-2 and a+2 squarefree")
        return ok, reasons
    # b = -1
    if a % 4 == 0:
        return False, ["4|a forbidden for b=-1"]
    w = (a * a + 4) // (4 if a % 2 == 0 else 1)
    if not arith.is_squarefree(w, **budget):
        return False, [f"W=(a^2+4)/gcd(a,2)^2={w} not squarefree"]
    return True, [f"W={w} squarefree"]


def quadratic_is_monogenic(a: int, b: int, **budget) -> bool:
    """Monogenicity of x^2 + a x + b for b in {-1, +1}.

    W = (a^2 - 4b)/gcd(a,2)^2 must be squarefree, with the parity side
    conditions 4|a-if-2|a (b=1) and 4∤a (b=-1).
    """
    if b not in (1, -1):
        raise ValueError("b must be +-1")
    d = a * a - 4 * b
    if d == 0 or arith.exact_square_root(d) is not None:
        raise Reducible(f"x^2+{a}x+{b} is reducible over Q")
    w = d // 4 if a % 2 == 0 else d
    if b == 1 and a % 2 == 0 and a % 4 != 0:
        return False
    if b == -1 and a % 4 == 0:
        return False
    return arith.is_squarefree(w, **budget)


def kkr_monogenic(fam: TrinomialFamily, **budget):
    """Monogenicity of f = g(x^p) via the composed-polynomial reduction.

    Requires: g(0) = b^p squarefree (forces |b| = 1); the prime p does not
    divide the index of f; and g itself monogenic.  Returns (bool, reasons).
    """
    if not family_is_irreducible(fam):
        raise Reducible(f"family {fam} is reducible over Q")
    p, a, b = fam.p, fam.a, fam.b
    reasons = []
    if b not in (1, -1):
        reasons.append(f"g(0)=b^p={b**p} not squarefree")
        return False, reasons
    reasons.append("g(0) squarefree")
    t = GeneralTrinomial(2 * p, p, a, b**p)
    verdict = indexcheck.jks_index_free(
        t, p, check_irreducible=False, disc=swan_disc_f(fam)
    )
    if verdict.divides_index:
        reasons.append(f"p={p} divides the index ({verdict.detail})")
    else:
        reasons.append(
            f"p={p} does not divide the index ({verdict.condition_used})"
        )
    quad_ok, quad_reasons = _squarefree_reasons(a, b, **budget)
    reasons.extend(quad_reasons)
    if quad_ok:
        reasons.append("g monogenic")
    else:
        reasons.append("g not monogenic")
    return not verdict.divides_index and quad_ok, reasons


def theorem_item(case: CaseLabel, p: int) -> str:
    """Which closed-form item of the classification covers this case."""
    k = case.kind
    if k in (CaseKind.GAMMA1_B1, CaseKind.GAMMA1_BNEG1):
        return "item1" if p % 4 == 1 else "item3a"
    if k is CaseKind.GAMMA2_B1:
        return "item2" if p % 4 == 3 else "item3a"
    if k in (CaseKind.OMEGA_B1, CaseKind.OMEGA_BNEG1):
        return "item3b"
    return "generic"


def theorem_membership(fam: TrinomialFamily, case: CaseLabel, **budget) -> bool:
    """Closed-form monogenicity membership test for p | delta families."""
    p, a, b = fam.p, fam.a, fam.b
    item = theorem_item(case, p)
    if item == "item1":
        return (p, abs(a), b) == (5, 3, 1) or (b == -1 and a * a + 4 == p)
    if item == "item2":
        return (p, abs(a), b) == (3, 1, 1)
    if item == "item3a":
        return (p, abs(a), b) == (3, 4, 1)
    if item == "item3b":
        ok, _ = _squarefree_reasons(a, b, **budget)
        return ok
    raise ValueError("membership test applies only when p | delta")


def classify(fam: TrinomialFamily, **budget) -> Classification:
    """Full verdict for one family: irreducibility, case, Galois class,
    monogenicity and (when monogenic) the field discriminant."""
    d = delta(fam)
    disc = swan_disc_f(fam)
    reasons = []
    p_divides = d % fam.p == 0

    irreducible = family_is_irreducible(fam)
    if not irreducible:
        if d == 0 or arith.exact_square_root(d) is not None:
            reasons.append("delta is a perfect square: g reducible")
        else:
            reasons.append("root of g is a p-th power: f reducible")
        case = None
        if fam.b in (1, -1) or not p_divides:
            case = case_label(fam)
        return Classification(
            fam, d, disc, False, case, None, None, None, tuple(reasons)
        )

    galois = galois_group(fam)
    monogenic: bool | None
    field_disc = None

    if p_divides and fam.b not in (1, -1):
        case = None
        monogenic = False
        reasons.append(f"g(0)=b^p={fam.b**fam.p} not squarefree")
    else:
        case = case_label(fam)
        reasons.append(f"case={case.kind.value}")
        if p_divides:
            reasons.append(f"classification {theorem_item(case, fam.p)}")
            try:
                monogenic, kkr_reasons = kkr_monogenic(fam, **budget)
                reasons.extend(kkr_reasons)
            except FactorizationBudgetExceeded as exc:
                monogenic = None
                reasons.append(f"unknown: {exc}")
        else:
            reasons.append("generic index scan (p does not divide delta)")
            try:
                report = indexcheck.trinomial_is_monogenic(
                    GeneralTrinomial(2 * fam.p, fam.p, fam.a, fam.b**fam.p),
                    check_irreducible=False,
                    **budget,
                )
                monogenic = report.monogenic
                for v in report.checks:
                    reasons.append(f"q={v.q}: {v.detail}")
            except FactorizationBudgetExceeded as exc:
                monogenic = None
                reasons.append(f"unknown: {exc}")

    if monogenic:
        field_disc = disc
    return Classification(
        fam, d, disc, True, case, galois, monogenic, field_disc, tuple(reasons)
    )


def exceptional_sets(p_max: int, a_max: int, **budget):
    """Enumerate the monogenic p|delta families with p <= p_max, |a| <= a_max,
    b = +-1, grouped by closed-form classification item."""
    if p_max < 3 or a_max < 1:
        return {}
    out: dict[str, list] = {}
    for p in arith.primes(3):
        if p > p_max:
            break
        for a in range(-a_max, a_max + 1):
            if a == 0:
                continue
            for b in (-1, 1):
                fam = TrinomialFamily(p, a, b)
                if delta(fam) % p != 0:
                    continue
                # only the delta = +-p y^2 cases have finite exceptional sets
                if case_label(fam).y_witness is None:
                    continue
                c = classify(fam, **budget)
                if c.irreducible and c.monogenic:
                    item = theorem_item(c.case, p)
                    out.setdefault(item, []).append((item, p, a, b))
    return {k: sorted(v) for k, v in sorted(out.items())}
