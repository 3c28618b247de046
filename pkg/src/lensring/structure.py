"""Structure-set descriptors for fake lens spaces with cyclic 2-power group.

A lens-space dimension d >= 3 and a level K >= 1 fix the ambient data: the
group order N = 2^K and the count c = floor((d-1)/2) of interesting normal
invariants.  A normal invariant vector carries c residues t_4, t_8, ...,
t_{4c} modulo 2^K together with c residues t_2, t_6, ..., t_{4c-2} modulo 2.
Only the t_{4i} enter the obstruction

    rho[t] = sum_{i=1}^{e-1} 8 t_{4i} f'_k f^(d-2i-2) (f^2 - 1)
             (+ 8 t_{4e} f'_k f   when d = 2e+1 is odd),

an element of Q[chi]/I<K>; the vector is normally cobordant to the standard
structure exactly when rho[t] lies in 4 Z[chi]/I<K>.  The kernel of t |->
[rho[t] passes] is a subgroup of (Z_{2^K})^c which this module can enumerate
from scratch (kernel_oracle) and whose structure is read off a Smith normal
form.

The classification output is a descriptor with a free part of rank N/2 - 1
(odd d) or N/2 (even d) and, for d >= 5, the torsion summands

    r_{4i-2} of order 2              (i = 1..c, copied from t_{4i-2}),
    r_{4i}   of order 2^min(K, 2i)   (i = 1..c).

r_coordinates expresses a kernel member in those coordinates by triangular
back-substitution against the scaled best-polynomial basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

from . import ring
from .polynomials import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    IntPolynomial,
    _echelon_insert,
    _smith_normal_form,
    r_minus,
    r_plus,
)
from .ring import RingElement, is_in_4Z

__all__ = [
    "NormalInvariantVector",
    "TorsionSummand",
    "StructureSetDescriptor",
    "KernelSubgroup",
    "rho_bracket",
    "t_to_polynomial",
    "kernel_oracle",
    "t_bar",
    "structure_set",
    "r_coordinates",
    "polynomial_r_coordinates",
]


class TorsionSummand(NamedTuple):
    label: str
    order: int


def _validate_d(d: int, minimum: int = 3) -> int:
    if not isinstance(d, int) or isinstance(d, bool) or d < minimum:
        raise ValueError(f"d must be an integer >= {minimum}, got {d!r}")
    return (d - 1) // 2


@dataclass(frozen=True)
class NormalInvariantVector:
    """Residues (t_4, ..., t_{4c}) mod 2^K and (t_2, ..., t_{4c-2}) mod 2."""

    d: int
    K: int
    t4: tuple[int, ...]
    t2: tuple[int, ...]

    def __post_init__(self) -> None:
        c = _validate_d(self.d)
        ring._validate_level(self.K)
        t4 = tuple(self.t4)
        t2 = tuple(self.t2)
        if len(t4) != c or len(t2) != c:
            raise ValueError(
                f"expected {c} residues in each of t4 and t2 for d = {self.d}"
            )
        mod = 1 << self.K
        for v in t4:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < mod:
                raise ValueError(f"t4 entries must lie in [0, {mod}), got {v!r}")
        for v in t2:
            if v not in (0, 1):
                raise ValueError(f"t2 entries must be 0 or 1, got {v!r}")
        object.__setattr__(self, "t4", t4)
        object.__setattr__(self, "t2", t2)


def _rho_slot_vec(d: int, K: int, k: int, slot: int, scale: int):
    """Internal vector of the rho summand attached to t4[slot]."""
    c = (d - 1) // 2
    if d % 2 and slot == c - 1:
        return ring._family_vec(K, k, f_power=1, scale=scale)
    i = slot + 1
    return ring._family_vec(
        K, k, f_power=d - 2 * i - 2, f2_minus_1=True, scale=scale
    )


def rho_bracket(t: NormalInvariantVector, k: int = 1) -> RingElement:
    """The surgery obstruction element rho[t] in Q[chi]/I<K>.

    Only the t4 residues contribute; t2 is carried along untouched.  The
    sum is assembled termwise from the f'_k, f, f^2 - 1 building blocks, so
    no dense polynomial product is ever formed.
    """
    ring._validate_odd(k)
    n = 1 << t.K
    vecs = []
    for slot, coeff in enumerate(t.t4):
        if coeff:
            vecs.append(_rho_slot_vec(t.d, t.K, k, slot, 8 * coeff))
    z, den = ring._sum_vecs(vecs, n)
    return ring._element_from_vec(t.K, z, den)


def t_to_polynomial(t: NormalInvariantVector) -> IntPolynomial:
    """The degree < c polynomial q_t with rho[t] = 8 f'_k f q_t(f^2) for odd
    d, and rho[t] = 8 f'_k (f^2 - 1) q_t(f^2) for even d.

    Coefficients use the integer lifts of the t4 residues in [0, 2^K).
    """
    c = (t.d - 1) // 2
    coeffs = [0] * c
    if t.d % 2 == 0:
        for i in range(c):
            coeffs[c - 1 - i] = t.t4[i]
    else:
        coeffs[c - 1] = t.t4[0]
        for i in range(1, c):
            coeffs[c - 1 - i] = t.t4[i] - t.t4[i - 1]
    return IntPolynomial(tuple(coeffs))


@dataclass(frozen=True)
class KernelSubgroup:
    """The kernel of the obstruction map inside (Z_{2^K})^c."""

    ambient_rank: int
    modulus_exponent: int
    order: int
    generators: tuple[tuple[int, ...], ...]
    elementary_divisors: tuple[int, ...]


def kernel_oracle(d: int, K: int, k: int = 1,
                  budget: int | None = None) -> KernelSubgroup:
    """Enumerate {t4 : rho[t] in 4 Z[chi]/I<K>} and report its structure.

    Works from the definition alone: one linearized residue image per t4
    slot, a walk over all (2^K)^c vectors, and a Smith normal form to read
    off the elementary divisors.  Budget-gated like every enumeration here.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    c = _validate_d(d)
    ring._validate_level(K)
    ring._validate_odd(k)
    size = (1 << K) ** c
    if size > budget:
        raise BudgetExceededError(
            f"enumerating the kernel needs {size} tests,"
            f" over the budget of {budget}"
        )
    vecs = [_rho_slot_vec(d, K, k, slot, 8) for slot in range(c)]
    mats, modulus = ring._residue_images(vecs)
    width = len(mats[0])
    members = []
    for t in product(range(1 << K), repeat=c):
        ok = True
        for i in range(width):
            s = 0
            for j in range(c):
                tj = t[j]
                if tj:
                    s += tj * mats[j][i]
            if s % modulus:
                ok = False
                break
        if ok:
            members.append(t)
    rows: dict[int, list[int]] = {}
    for t in members:
        _echelon_insert(rows, t, K)
    generators = tuple(tuple(rows[lead]) for lead in sorted(rows))
    mod = 1 << K
    stacked = [list(g) for g in generators]
    stacked += [[mod if i == j else 0 for j in range(c)] for i in range(c)]
    divisors = _smith_normal_form(stacked)
    orders = []
    for delta in divisors:
        if delta == 0 or mod % delta:
            raise ArithmeticError(
                f"Smith divisor {delta} does not divide 2^{K}"
            )
        if mod // delta > 1:
            orders.append(mod // delta)
    orders.sort()
    total = 1
    for o in orders:
        total *= o
    if total != len(members):
        raise ArithmeticError(
            f"divisor product {total} disagrees with the member count"
            f" {len(members)}"
        )
    return KernelSubgroup(c, K, len(members), generators, tuple(orders))


# ---------------------------------------------------------------------------
# the classification descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureSetDescriptor:
    """Free rank plus ordered torsion summands (None when d < 5, where the
    torsion description is out of scope)."""

    free_rank: int
    torsion: tuple[TorsionSummand, ...] | None


def t_bar(d: int, K: int) -> tuple[TorsionSummand, ...]:
    """The torsion summands for d >= 5: the c order-2 labels r_{4i-2}
    followed by the labels r_{4i} of order 2^min(K, 2i)."""
    c = _validate_d(d, minimum=5)
    ring._validate_level(K)
    two_part = [TorsionSummand(f"r_{4 * i - 2}", 2) for i in range(1, c + 1)]
    big_part = [
        TorsionSummand(f"r_{4 * i}", 1 << min(K, 2 * i))
        for i in range(1, c + 1)
    ]
    return tuple(two_part + big_part)


def structure_set(d: int, K: int) -> StructureSetDescriptor:
    """The structure-set descriptor: free rank N/2 - 1 (odd d) or N/2
    (even d), torsion per t_bar for d >= 5."""
    _validate_d(d)
    n = ring._validate_level(K)
    free_rank = n // 2 - 1 if d % 2 else n // 2
    torsion = t_bar(d, K) if d >= 5 else None
    return StructureSetDescriptor(free_rank, torsion)


# ---------------------------------------------------------------------------
# coordinates on the kernel
# ---------------------------------------------------------------------------

def polynomial_r_coordinates(q: IntPolynomial, d: int, K: int) -> tuple[int, ...]:
    """Coordinates of q against the scaled best-polynomial basis, mod 2^K.

    Solves q = sum_n a_n 2^max(K-2n-2, 0) r_n by back-substitution from the
    top degree down, entirely over the integers; a_n is reported modulo
    2^min(K, 2n+2).  The result only depends on q modulo 2^K Z[x], which is
    what makes coordinates of residue vectors well defined.  Raises when q
    is not in the span.
    """
    c = _validate_d(d, minimum=5)
    ring._validate_level(K)
    if q.degree >= c:
        raise ValueError(
            f"degree overflow: deg q = {q.degree}, needs to be < {c}"
        )
    use_plus = d % 2 == 0
    basis = [
        r_plus(n) if use_plus else r_minus(n).polynomial for n in range(c)
    ]
    mod = 1 << K
    rem = [q.coefficient(j) for j in range(c)]
    coords = [0] * c
    for n in range(c - 1, -1, -1):
        g = rem[n] % mod
        s = max(K - 2 * n - 2, 0)
        if g % (1 << s):
            raise ArithmeticError(
                f"coefficient at degree {n} is not divisible by 2^{s};"
                " q is outside the lattice"
            )
        a = g >> s
        coords[n] = a
        if a:
            scaled = basis[n] * (a << s)
            for j, bc in enumerate(scaled.coeffs):
                rem[j] -= bc
    for j, v in enumerate(rem):
        if v % mod:
            raise ArithmeticError(
                f"residual coefficient at degree {j} is nonzero mod 2^{K}"
            )
    return tuple(coords)


def r_coordinates(t: NormalInvariantVector, k: int = 1) -> dict[str, int]:
    """Coordinates of a kernel member in the t_bar summands.

    The r_{4i-2} coordinates are the t_{4i-2} residues verbatim; the r_{4i}
    coordinates come from back-substituting the associated polynomial
    against the scaled basis.  Raises ValueError when rho[t] is not in
    4 Z[chi]/I<K> (the vector is not in the kernel, so it has no
    coordinates).
    """
    c = _validate_d(t.d, minimum=5)
    if not is_in_4Z(rho_bracket(t, k)):
        raise ValueError(
            "rho[t] is not in 4 Z[chi]/I<K>; only kernel members have"
            " r coordinates"
        )
    coords = polynomial_r_coordinates(t_to_polynomial(t), t.d, t.K)
    out: dict[str, int] = {}
    for i in range(1, c + 1):
        out[f"r_{4 * i - 2}"] = t.t2[i - 1]
    for i in range(1, c + 1):
        out[f"r_{4 * i}"] = coords[i - 1]
    return out
