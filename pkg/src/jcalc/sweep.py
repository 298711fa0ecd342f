"""Table-wide divisibility sweeps.

Drives the decomposition check across every torsion-table row (classical
series instantiated up to a rank bound, all exceptional rows), every
admissible J-invariant value, and every parabolic subset whose flag
variety is generically split for Tits data consistent with that value.
For each such triple the flag Poincare polynomial must factor exactly
through the summand polynomial with nonnegative multiplicities.

Consistency matters: the splitting certificates of the vertex table
depend on the Tits algebra index d and the splitting degree q, and those
are coupled to the J-invariant.  A group whose row carries a
codimension-1 generator coupled to its Tits algebra (SL/mu, PGSp, PGO,
adjoint E6 at 3, adjoint E7 at 2) has d with p-part p^{j_1}, so
pretending d = 1 while j_1 > 0 pairs the value with parabolics it can
never meet; such pairs are exactly the ones the decomposition calculator
reports as NotDivisible.  The complete flag (empty theta) is certified
for every value: a group of inner type splits over the function field of
its Borel variety.

Distinct parabolics with the same Levi polynomial, and distinct values
with the same summand polynomial, are deduplicated before dividing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Sequence, Set, Tuple

from .errors import NotDivisible
from .jinvariant import JInvariant, enumerate_admissible
from .kac_table import GroupForm, table_rows, torsion_data
from .motive import rost_poincare
from .polynomial import Poly
from .root_data import (
    UNKNOWN,
    is_generically_split,
    poincare_complete_flag,
    poincare_weyl_subgroup,
)


def generically_split_thetas(form: GroupForm, tits_index: int = 1,
                             splitting_degree: int = 1) -> Iterator[frozenset]:
    """All theta certified generically split by the vertex table as-is.

    UNKNOWN outcomes (the Pfister-dependent rows) are excluded; only
    vertices decidable from (d, q) count.
    """
    vertices = list(form.base.vertices)
    for bits in itertools.product((False, True), repeat=len(vertices)):
        theta = frozenset(v for v, b in zip(vertices, bits) if b)
        verdict = is_generically_split(form, theta, tits_index, splitting_degree)
        if verdict is not UNKNOWN and verdict:
            yield theta


def _is_power_of_two(x: int) -> bool:
    return x >= 1 and x & (x - 1) == 0


def consistent_split_vertices(form: GroupForm, p: int,
                              j: Sequence[int]) -> Set[int]:
    """Vertices k for which some group realizing (p, j) splits over F(X)
    whenever k lies outside theta.

    This instantiates the vertex table at Tits data compatible with the
    J-invariant value instead of a fixed (d, q):

    * series A: d has p-part p^{j_1}, so k must be coprime to p;
    * series C: odd k, unconditionally;
    * series B/D: the quadratic-form case d = 1 certifies the end
      vertices; a Pfister form or maximal neighbor (dimension 2^m or
      2^m - 1 with value (0,...,0,1)) certifies every vertex; the PGO
      rows couple j_1 to the vector algebra class, so their end-vertex
      certificate needs j_1 = 0;
    * exceptional series: the d = 1 and small-q escapes are enabled
      exactly when a group with this value can have them (the Tits
      algebras of E6/E7 live at the other prime, q = 3 or 5 escapes are
      consistent at their own prime only).

    For the zero value every vertex qualifies: the group may be split.
    """
    s, n = form.base.series, form.base.rank
    everything = set(range(1, n + 1))
    if not any(j):
        return everything
    if s == "A":
        return {k for k in everything if k % p != 0}
    if s == "C":
        return {k for k in everything if k % 2 == 1}
    if s == "G":
        return everything
    if s == "F":
        return everything if p == 3 else {1, 2, 3}
    if s == "E" and n == 6:
        if p == 2:
            return {2, 3, 4, 5}
        if form.isogeny == "ad" and j[0] > 0:
            return {1, 3, 5, 6}
        return everything
    if s == "E" and n == 7:
        if p == 3:
            return {1, 2, 3, 4, 5, 6}
        if form.isogeny == "ad" and j[0] > 0:
            return {2, 5}
        return {2, 3, 4, 5}
    if s == "E" and n == 8:
        return everything if p == 5 else {2, 3, 4, 5}
    dim = 2 * n + 1 if s == "B" else 2 * n
    pfister_shape = (all(x == 0 for x in j[:-1]) and j[-1] == 1
                     and form.isogeny in ("so", "spin")
                     and (_is_power_of_two(dim) or _is_power_of_two(dim + 1)))
    if pfister_shape:
        return everything
    if form.isogeny == "pgo" and n % 2 == 0 and j[0] > 0:
        return set()
    return {n} if s == "B" else {n - 1, n}


def consistent_split_thetas(form: GroupForm, p: int,
                            J: JInvariant) -> Iterator[frozenset]:
    """All theta paired with this value in the divisibility sweep.

    The Borel (empty theta) always qualifies; any other theta must leave
    a consistent certificate vertex uncovered.
    """
    vertices = list(form.base.vertices)
    good = consistent_split_vertices(form, p, J.j)
    for bits in itertools.product((False, True), repeat=len(vertices)):
        theta = frozenset(v for v, b in zip(vertices, bits) if b)
        if not theta or (set(vertices) - theta) & good:
            yield theta


@dataclass
class SweepReport:
    rows: int = 0
    cases: int = 0
    divisions: int = 0
    failures: List[Tuple[str, int, Tuple[int, ...], Tuple[int, ...], str]] = field(
        default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def run_divisibility_sweep(max_rank: int = 8) -> SweepReport:
    """Check decomposition divisibility across the whole table.

    Returns a report with the number of (form, p) rows, the number of
    (J, theta) cases covered, the number of deduplicated polynomial
    divisions performed, and any failures (expected: none).
    """
    report = SweepReport()
    for form, p in table_rows(max_rank):
        data = torsion_data(form, p)
        report.rows += 1
        flag = poincare_complete_flag(form.base)

        levi_cache: Dict[FrozenSet[int], Poly] = {}
        quotient_cache: Dict[Tuple[Tuple, Tuple], bool] = {}
        for J in enumerate_admissible(form, p):
            summand = rost_poincare(data, J)
            skey = summand.coeffs
            for theta in consistent_split_thetas(form, p, J):
                if theta not in levi_cache:
                    levi_cache[theta] = flag.exact_div(
                        poincare_weyl_subgroup(form.base, theta))
                total = levi_cache[theta]
                report.cases += 1
                key = (skey, total.coeffs)
                if key in quotient_cache:
                    ok = quotient_cache[key]
                else:
                    report.divisions += 1
                    try:
                        ok = total.exact_div(summand).is_nonnegative
                    except NotDivisible:
                        ok = False
                    quotient_cache[key] = ok
                if not ok:
                    report.failures.append(
                        (form.name, p, J.j, tuple(sorted(theta)),
                         "division failed or went negative"))
    return report


def admissible_census(max_rank: int = 8) -> List[Tuple[str, int, int, int]]:
    """(form, p, box size, admissible count) for every table row."""
    out = []
    for form, p in table_rows(max_rank):
        data = torsion_data(form, p)
        box = 1
        for k in data.k:
            box *= k + 1
        out.append((form.name, p, box, len(enumerate_admissible(form, p))))
    return out
