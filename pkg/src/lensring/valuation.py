"""Level valuations w_l, normal forms, and the divisibility criteria.

For g in Q[chi]/I<K> and 0 <= l <= K-1, project g to Q[chi]/<1 + chi^(2^l)>.
A nonzero projection p has a unique normal form

    p = (2^a / u) * ((1 - chi)^b * v1 + 2 * v2)

with u odd, 0 <= b < 2^l, v1 and v2 integer polynomials, and v1(1) odd.  The
valuation is

    w_l(g) = a + b / 2^l,

or infinity when the projection vanishes.  The pair (a, b) is independent of
every choice made while computing it; the witnesses v1, v2 are returned so a
caller can replay the factorization.

Valuations obey a product rule (w_l of a product is the sum) and the usual
ultrametric-style sum rules, and they power two membership criteria for
4 * Z[chi]/I<K>.  Both criteria require the hypothesis that every projection
pr_l(g) lies in 4 * Z[chi]/<1 + chi^(2^l)>; under it,

  * w_l(g) >= 2 + K - l - 2^(-l) for every l proves membership;
  * an integral h with w_l(g) + w_l(h) >= 2 + K - l - 2^(-l) for every
    l != l_star and < at l_star proves non-membership.

The criteria return three-valued verdicts and never guess: failing to prove
is reported as inconclusive, not as the opposite claim.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cache
from math import lcm

from .polynomials import IntPolynomial, ONE, X
from .ring import LevelProjection, RingElement, project

__all__ = [
    "Valuation",
    "NormalForm",
    "normal_form",
    "normal_form_reconstruct",
    "w_l",
    "CriterionVerdict",
    "criterion_sufficient",
    "criterion_necessary",
    "criterion_necessary_search",
    "membership_bound",
    "x_polynomial",
    "valuation_to_text",
    "valuation_from_text",
]


@dataclass(frozen=True)
class Valuation:
    """The value a + b/2^level with 0 <= b < 2^level, or infinity.

    Infinity is the triple (None, None, None); finite values keep their
    level so that the fractional part stays in canonical form.
    """

    a: int | None
    b: int | None
    level: int | None

    def __post_init__(self) -> None:
        parts = (self.a, self.b, self.level)
        if all(p is None for p in parts):
            return
        if any(p is None for p in parts):
            raise ValueError("either all of a, b, level are set or none are")
        for p in parts:
            if not isinstance(p, int) or isinstance(p, bool):
                raise ValueError("a, b, level must be integers")
        if self.level < 0:
            raise ValueError("level must be >= 0")
        if not 0 <= self.b < (1 << self.level):
            raise ValueError(
                f"b must satisfy 0 <= b < 2^{self.level}, got {self.b}"
            )

    @classmethod
    def infinite(cls) -> "Valuation":
        return cls(None, None, None)

    @classmethod
    def finite(cls, a: int, b: int, level: int) -> "Valuation":
        return cls(a, b, level)

    @property
    def is_infinite(self) -> bool:
        return self.a is None

    def value(self) -> Fraction:
        if self.is_infinite:
            raise ValueError("the infinite valuation has no rational value")
        return Fraction(self.a) + Fraction(self.b, 1 << self.level)

    def __add__(self, other: "Valuation") -> "Valuation":
        if not isinstance(other, Valuation):
            return NotImplemented
        if self.is_infinite or other.is_infinite:
            return Valuation.infinite()
        if self.level != other.level:
            raise ValueError("cannot add valuations at different levels")
        total = ((self.a + other.a) << self.level) + self.b + other.b
        return Valuation(total >> self.level,
                         total - ((total >> self.level) << self.level),
                         self.level)

    def __lt__(self, other: "Valuation") -> bool:
        if not isinstance(other, Valuation):
            return NotImplemented
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.value() < other.value()

    def __le__(self, other: "Valuation") -> bool:
        if not isinstance(other, Valuation):
            return NotImplemented
        if self.is_infinite:
            return other.is_infinite
        if other.is_infinite:
            return True
        return self.value() <= other.value()

    def at_least(self, bound: Fraction) -> bool:
        """True when the valuation is infinite or >= the rational bound."""
        return self.is_infinite or self.value() >= bound

    def below(self, bound: Fraction) -> bool:
        """True when the valuation is finite and strictly below the bound."""
        return not self.is_infinite and self.value() < bound


def valuation_to_text(v: Valuation) -> str:
    """Serialize as `a+b/2^l`, for instance `0+3/2^2`, or `inf`."""
    if v.is_infinite:
        return "inf"
    return f"{v.a}+{v.b}/2^{v.level}"


_VALUATION_RE = re.compile(r"(-?\d+)\+(\d+)/2\^(\d+)")


def valuation_from_text(text: str) -> Valuation:
    body = text.strip()
    if body == "inf":
        return Valuation.infinite()
    match = _VALUATION_RE.fullmatch(body)
    if not match:
        raise ValueError(f"malformed valuation text {text!r}")
    return Valuation(int(match.group(1)), int(match.group(2)),
                     int(match.group(3)))


# ---------------------------------------------------------------------------
# normal form of a nonzero projection
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalForm:
    """Witnessed factorization p = (2^a / u)((1-chi)^b v1 + 2 v2)."""

    a: int
    b: int
    u: int
    v1: IntPolynomial
    v2: IntPolynomial


def _v2_int(x: int) -> int:
    return (x & -x).bit_length() - 1


def _expand_in_monomials(pairs) -> IntPolynomial:
    """sum of c * (1 - chi)^e as a polynomial in chi."""
    out: dict[int, int] = {}
    for c, e in pairs:
        if c == 0:
            continue
        row = 1
        sign_coeffs = [1]
        for _ in range(e):
            nxt = [0] * (len(sign_coeffs) + 1)
            for i, v in enumerate(sign_coeffs):
                nxt[i] += v
                nxt[i + 1] -= v
            sign_coeffs = nxt
        for i, v in enumerate(sign_coeffs):
            if v:
                out[i] = out.get(i, 0) + c * v
    if not out:
        return IntPolynomial(())
    top = max(out)
    return IntPolynomial(tuple(out.get(i, 0) for i in range(top + 1)))


def normal_form(p: LevelProjection) -> NormalForm:
    """Normal form of a nonzero projection.

    Clears denominators with the lcm, expands the integer vector in the
    basis (1-chi)^m by repeated synthetic division, and splits off the
    minimal two-adic valuation.  The returned (a, b) do not depend on the
    clearing strategy; the witnesses certify the factorization.
    """
    if p.is_zero():
        raise ValueError("the zero projection has no normal form")
    dim = 1 << p.level
    w = lcm(*(c.denominator for c in p.coeffs))
    a1 = _v2_int(w)
    u = w >> a1
    cur = [int(c * w) for c in p.coeffs]
    zm = []
    for _ in range(dim):
        zm.append(sum(cur))
        suffix = 0
        nxt = [0] * (len(cur) - 1)
        for i in range(len(cur) - 1, 0, -1):
            suffix += cur[i]
            nxt[i - 1] = -suffix
        cur = nxt
    a2 = min(_v2_int(v) for v in zm if v)
    b = next(m for m, v in enumerate(zm) if v and _v2_int(v) == a2)
    v1 = _expand_in_monomials(
        (zm[m] >> a2, m - b) for m in range(b, dim) if zm[m]
    )
    v2 = _expand_in_monomials(
        (zm[m] >> (a2 + 1), m) for m in range(b) if zm[m]
    )
    if v1(1) % 2 == 0:
        raise ArithmeticError("normal form witness v1 must be odd at 1")
    return NormalForm(a2 - a1, b, u, v1, v2)


def normal_form_reconstruct(nf: NormalForm, level: int) -> LevelProjection:
    """Rebuild the projection certified by a normal form."""
    one_minus_chi = ONE - X
    base = (one_minus_chi ** nf.b) * nf.v1 + 2 * nf.v2
    dim = 1 << level
    scalar = Fraction(2) ** nf.a / nf.u
    coeffs = [Fraction(0)] * dim
    for j, c in enumerate(base.coeffs):
        # reduce chi^j modulo 1 + chi^(2^level)
        if (j >> level) & 1:
            coeffs[j & (dim - 1)] -= c * scalar
        else:
            coeffs[j & (dim - 1)] += c * scalar
    return LevelProjection(level, tuple(coeffs))


def w_l(g: RingElement, l: int) -> Valuation:
    """The level-l valuation of g; infinite exactly when pr_l(g) = 0."""
    p = project(g, l)
    if p.is_zero():
        return Valuation.infinite()
    nf = normal_form(p)
    return Valuation(nf.a, nf.b, l)


# ---------------------------------------------------------------------------
# membership criteria
# ---------------------------------------------------------------------------

class CriterionVerdict(Enum):
    PROVES_MEMBERSHIP = "proves-membership"
    PROVES_NON_MEMBERSHIP = "proves-non-membership"
    INCONCLUSIVE = "inconclusive"


def membership_bound(K: int, l: int) -> Fraction:
    """The threshold 2 + K - l - 2^(-l)."""
    return Fraction(2 + K - l) - Fraction(1, 1 << l)


def _hypothesis_holds(g: RingElement) -> bool:
    return all(project(g, l).in_4Z() for l in range(g.level))


def criterion_sufficient(g: RingElement) -> CriterionVerdict:
    """Prove membership in 4 Z[chi]/I<K> from valuations alone.

    Requires every projection of g to lie in 4 Z[chi]/<1 + chi^(2^l)>;
    otherwise, and whenever some valuation falls below the bound, the
    verdict is inconclusive.
    """
    if not _hypothesis_holds(g):
        return CriterionVerdict.INCONCLUSIVE
    K = g.level
    for l in range(K):
        if not w_l(g, l).at_least(membership_bound(K, l)):
            return CriterionVerdict.INCONCLUSIVE
    return CriterionVerdict.PROVES_MEMBERSHIP


def criterion_necessary(g: RingElement, h: RingElement,
                        l_star: int) -> CriterionVerdict:
    """Prove non-membership using a one-level deficiency witness h.

    h must be integral and at the same level as g.  The verdict is
    proves-non-membership when w_l(g) + w_l(h) clears the bound at every
    l != l_star and falls strictly below it at l_star.
    """
    if g.level != h.level:
        raise ValueError(f"level mismatch: {g.level} vs {h.level}")
    if not h.is_integral():
        raise ValueError("the witness h must have integer coefficients")
    K = g.level
    if not isinstance(l_star, int) or isinstance(l_star, bool) \
            or not 0 <= l_star < K:
        raise ValueError(f"l_star must satisfy 0 <= l_star < {K}")
    if not _hypothesis_holds(g):
        return CriterionVerdict.INCONCLUSIVE
    for l in range(K):
        s = w_l(g, l) + w_l(h, l)
        bound = membership_bound(K, l)
        if l == l_star:
            if not s.below(bound):
                return CriterionVerdict.INCONCLUSIVE
        else:
            if not s.at_least(bound):
                return CriterionVerdict.INCONCLUSIVE
    return CriterionVerdict.PROVES_NON_MEMBERSHIP


@cache
def _one_minus_chi_valuations(K: int, j: int) -> tuple[Valuation, ...]:
    from .ring import make_element

    h = make_element(K, [1, -1]) ** j
    return tuple(w_l(h, l) for l in range(K))


def criterion_necessary_search(g: RingElement, max_power: int | None = None):
    """Scan the witness catalogue h = (1 - chi)^j, j = 0..max_power.

    max_power defaults to 2^K.  Returns (verdict, j, l_star) for the first
    witness with exactly one deficient level, or (inconclusive, None, None).
    """
    K = g.level
    if max_power is None:
        max_power = 1 << K
    if not _hypothesis_holds(g):
        return CriterionVerdict.INCONCLUSIVE, None, None
    wg = [w_l(g, l) for l in range(K)]
    bounds = [membership_bound(K, l) for l in range(K)]
    for j in range(max_power + 1):
        wh = _one_minus_chi_valuations(K, j)
        deficient = [
            l for l in range(K) if (wg[l] + wh[l]).below(bounds[l])
        ]
        if len(deficient) == 1:
            return CriterionVerdict.PROVES_NON_MEMBERSHIP, j, deficient[0]
    return CriterionVerdict.INCONCLUSIVE, None, None


# ---------------------------------------------------------------------------
# the x_m family
# ---------------------------------------------------------------------------

@cache
def x_polynomial(m: int) -> IntPolynomial:
    """x_0 = -chi and x_m = chi^(2^(m-1)) + 2 x_{m-1} (1 + chi^(2^(m-1)) + x_{m-1}).

    These satisfy (1 - chi)^(2^m) = 2 x_m + (1 + chi^(2^m)) identically in
    Z[chi], which splits powers of (1 - chi) across projection levels.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise ValueError(f"m must be a non-negative integer, got {m!r}")
    if m == 0:
        return IntPolynomial((0, -1))
    prev = x_polynomial(m - 1)
    mono = X ** (1 << (m - 1))
    return mono + 2 * prev * (ONE + mono + prev)
