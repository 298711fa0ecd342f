"""Motivic decomposition bookkeeping at the level of Poincare polynomials.

For a group with torsion data (p; d_i; k_i) and J-invariant (j_i), the
indecomposable summand appearing in the mod-p motive of any generically
split flag variety has Poincare polynomial

    prod_i (1 - t^{d_i p^{j_i}}) / (1 - t^{d_i}),

and the variety's own polynomial factors exactly through it; the
quotient records the twist multiplicities.  This module computes those
quotients, the canonical p-dimension and torsion-index bound carried by
the same data, rational-cycle rank counts, and integral lifts through
m-positive polynomials.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import sympy

from .errors import (
    MissingPrime,
    NegativeCoefficient,
    NoDivisor,
    NonIntegralRank,
    NotDivisible,
    NotGenericallySplit,
    SearchBudgetExceeded,
)
from .jinvariant import JInvariant, JLike, as_jinvariant
from .kac_table import GroupForm, TorsionData, torsion_data
from .polynomial import Poly
from .root_data import UNKNOWN, ThetaLike, is_generically_split, poincare_homogeneous


@dataclass(frozen=True)
class MotiveDecomposition:
    """total = summand * multiplicities, all coefficients nonnegative."""

    summand_poincare: Poly
    multiplicities: Poly
    total_poincare: Poly

    def __post_init__(self):
        if self.summand_poincare * self.multiplicities != self.total_poincare:
            raise NotDivisible("summand times multiplicities is not the total")
        if not self.multiplicities.is_nonnegative:
            raise NegativeCoefficient("negative twist multiplicity")
        if self.multiplicities[0] < 1:
            raise NegativeCoefficient("the untwisted copy is missing")

    @property
    def summand_count(self) -> int:
        """Number of twisted copies, the multiplicity value at t = 1."""
        return self.multiplicities(1)

    def twists(self) -> List[int]:
        """The multiset of twists, each i repeated multiplicities[i] times."""
        out = []
        for i, c in enumerate(self.multiplicities.coeffs):
            out.extend([i] * c)
        return out

    def to_dict(self) -> Dict:
        return {
            "summand": list(self.summand_poincare.coeffs),
            "multiplicities": list(self.multiplicities.coeffs),
            "total": list(self.total_poincare.coeffs),
        }


# ---------------------------------------------------------------------------
# The repeated summand and its numeric shadows
# ---------------------------------------------------------------------------

def rost_poincare(data: TorsionData, J: JLike) -> Poly:
    """Poincare polynomial of the indecomposable summand over a splitting field.

    prod_i (1 - t^{d_i p^{j_i}}) / (1 - t^{d_i}); the i-th factor is the
    geometric sum 1 + t^{d_i} + ... with p^{j_i} terms, so the value at
    t = 1 is p^{j_1 + ... + j_r}.
    """
    J = as_jinvariant(data, J)
    out = Poly.one()
    for d, j in zip(data.d, J.j):
        if j:
            out = out * Poly.geometric(d, data.p ** j)
    return out


def canonical_p_dimension(data: TorsionData, J: JLike) -> int:
    """sum d_i (p^{j_i} - 1), the degree of the summand polynomial."""
    J = as_jinvariant(data, J)
    return sum(d * (data.p ** j - 1) for d, j in zip(data.d, J.j))


def torsion_index_bound(J: JInvariant, p: Optional[int] = None) -> int:
    """Upper bound p^{sum j_i} for the p-part of the torsion index."""
    if p is not None and p != J.p:
        raise ValueError("p = %d but J lives at p = %d" % (p, J.p))
    return J.p ** J.weight


def rational_cycle_counts(data: TorsionData, J: JLike, flag_rank: int) -> Dict[str, int]:
    """Ranks of the rational graded cycles on X and on X x X.

    ``flag_rank`` is the total rank of the Chow ring of the split
    complete flag variety; the rank of the invariant subring R is
    derived from flag_rank = p^{|K|} * rk R and must come out integral.
    Returns rank_A_rat = p^{|K - J|} rk R and
    rank_B_rat = p^{|2K - J|} (rk R)^2.
    """
    J = as_jinvariant(data, J)
    p = data.p
    full = data.ring_rank
    if flag_rank <= 0 or flag_rank % full:
        raise NonIntegralRank("flag rank %d is not a positive multiple of p^|K| = %d"
                              % (flag_rank, full))
    rk_r = flag_rank // full
    k_minus_j = sum(k - j for k, j in zip(data.k, J.j))
    twok_minus_j = sum(2 * k - j for k, j in zip(data.k, J.j))
    return {
        "rk_R": rk_r,
        "rank_A_rat": p ** k_minus_j * rk_r,
        "rank_B_rat": p ** twok_minus_j * rk_r * rk_r,
    }


# ---------------------------------------------------------------------------
# Decomposition of a generically split flag variety
# ---------------------------------------------------------------------------

def decompose(form: GroupForm, p: int, J: JLike, theta: ThetaLike = None,
              tits_index: Optional[int] = None,
              splitting_degree: Optional[int] = None,
              pfister: Optional[bool] = None) -> MotiveDecomposition:
    """Split P(X_theta, t) into twisted copies of the mod-p summand.

    The quotient by rost_poincare must be exact with nonnegative
    coefficients; NotDivisible or NegativeCoefficient means the supplied
    J cannot occur for a group split generically by X_theta.  When Tits
    data (tits_index, splitting_degree) is supplied, the generic
    splitness table is consulted first and a definite or unresolved
    failure raises NotGenericallySplit; without Tits data the caller
    vouches for splitness.
    """
    data = torsion_data(form, p)
    J = as_jinvariant(data, J)
    if tits_index is not None or splitting_degree is not None:
        if tits_index is None or splitting_degree is None:
            raise ValueError("supply both tits_index and splitting_degree or neither")
        verdict = is_generically_split(form, theta, tits_index, splitting_degree, pfister)
        if verdict is UNKNOWN:
            raise NotGenericallySplit(
                "splitness depends on the Pfister case; pass pfister=True/False")
        if not verdict:
            raise NotGenericallySplit(
                "no vertex outside theta splits %s for d=%d, q=%d"
                % (form, tits_index, splitting_degree))
    total = poincare_homogeneous(form.base, theta)
    summand = rost_poincare(data, J)
    multiplicities = total.exact_div(summand)  # raises NotDivisible
    if not multiplicities.is_nonnegative:
        raise NegativeCoefficient(
            "negative multiplicity: J = %s is inconsistent with theta = %s" % (J, theta))
    return MotiveDecomposition(summand, multiplicities, total)


# ---------------------------------------------------------------------------
# Integral lifting via m-positive polynomials
# ---------------------------------------------------------------------------

def _prime_divisors(m: int) -> List[int]:
    out, f = [], 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


def _summand_map(m: int, summands: Iterable[Tuple[int, Poly]]) -> Dict[int, Poly]:
    table = {p: poly for p, poly in summands}
    missing = [p for p in _prime_divisors(m) if p not in table]
    if missing:
        raise MissingPrime("no summand polynomial for primes %s dividing %d"
                           % (missing, m))
    return {p: table[p] for p in _prime_divisors(m)}


def is_m_positive(g: Poly, m: int, summands: Iterable[Tuple[int, Poly]]) -> bool:
    """Is g nonzero and exactly divisible, with nonnegative quotient,
    by the mod-p summand polynomial for every prime p dividing m?"""
    table = _summand_map(m, summands)
    if not g:
        return False
    for poly in table.values():
        try:
            q = g.exact_div(poly)
        except NotDivisible:
            return False
        if not q.is_nonnegative:
            return False
    return True


def _divisors_of(total: Poly, cap: int) -> List[Poly]:
    """All monic-content divisors of total over Z, via exact factorization."""
    t = sympy.Symbol("t")
    expr = sum(c * t ** i for i, c in enumerate(total.coeffs))
    content, factors = sympy.factor_list(sympy.Poly(expr, t))
    content = int(content)
    count = 1
    for _base, mult in factors:
        count *= mult + 1
    if count * len(_divisors_of_int(abs(content))) > cap:
        raise SearchBudgetExceeded("divisor lattice of size %d exceeds budget" % count)
    bases = []
    for base, mult in factors:
        coeffs = [int(base.coeff_monomial(t ** i)) for i in range(base.degree() + 1)]
        bases.append((Poly(coeffs), mult))
    divisors = [Poly.one()]
    for base, mult in bases:
        divisors = [d * base ** e for d in divisors for e in range(mult + 1)]
    out = []
    for c in _divisors_of_int(abs(content)):
        out.extend(d * c for d in divisors)
    # Normalize sign so leading coefficients are positive, and dedupe.
    seen = {}
    for d in out:
        if d.coeffs and d.coeffs[-1] < 0:
            d = -d
        seen[d.coeffs] = d
    return list(seen.values())


def _divisors_of_int(n: int) -> List[int]:
    if n == 0:
        return [1]
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _box_size(f: Poly) -> int:
    size = 1
    for c in f.coeffs:
        size *= c + 1
    return size


def is_sum_indecomposable(f: Poly, m: int, summands: Iterable[Tuple[int, Poly]],
                          budget: int = 2 ** 22) -> bool:
    """Can f not be written as a sum of two m-positive polynomials?

    Any m-positive summand has nonnegative coefficients, so both parts
    of a decomposition sit inside the coefficient box 0 <= g <= f; the
    box is searched exhaustively, which is feasible at desk scale.
    """
    table = list(_summand_map(m, summands).items())
    if not is_m_positive(f, m, table):
        raise ValueError("f is not m-positive, indecomposability is moot")
    if _box_size(f) > budget:
        raise SearchBudgetExceeded("coefficient box of %d exceeds budget %d"
                                   % (_box_size(f), budget))
    ranges = [range(c + 1) for c in f.coeffs]
    for combo in itertools.product(*ranges):
        g = Poly(combo)
        if not g or g == f:
            continue
        rest = f - g
        if is_m_positive(g, m, table) and is_m_positive(rest, m, table):
            return False
    return True


def integral_decomposition(total: Poly, m: int,
                           summands: Iterable[Tuple[int, Poly]],
                           budget: int = 2 ** 22,
                           all_candidates: bool = False):
    """Minimal m-positive divisor of total and its twist multiplicities.

    Enumerates the divisors of total over Z, keeps the m-positive ones,
    and searches them in deterministic preference order (lowest degree
    first, then largest value at t = 1, then lexicographically smallest
    coefficients) for one that is not a sum of two m-positive
    polynomials.  Returns (f, total / f); with all_candidates=True, the
    list of every minimal candidate of the best degree is returned
    instead, since minimal divisors need not be unique.
    """
    if not total:
        raise NoDivisor("the zero polynomial has no m-positive divisor")
    table = list(_summand_map(m, summands).items())
    candidates = [d for d in _divisors_of(total, cap=budget)
                  if is_m_positive(d, m, table)]
    if not candidates:
        raise NoDivisor("no m-positive divisor of the given polynomial")
    candidates.sort(key=lambda f: (f.degree, -f(1), f.coeffs))
    found: List[Poly] = []
    for f in candidates:
        if found and f.degree > found[0].degree:
            break
        if is_sum_indecomposable(f, m, table, budget=budget):
            found.append(f)
            if not all_candidates:
                break
    if not found:
        raise NoDivisor("every m-positive divisor splits as a sum")
    if all_candidates:
        return [(f, total.exact_div(f)) for f in found]
    f = found[0]
    return f, total.exact_div(f)
