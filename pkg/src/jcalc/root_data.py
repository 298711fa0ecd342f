"""Dynkin diagram bookkeeping.

Invariant degrees of Weyl groups, positive root counts, Poincare
polynomials of complete and partial flag varieties, and the table of
vertices whose absence from a parabolic makes the corresponding flag
variety generically split.

Vertex numbering follows Bourbaki throughout:

* A_n, B_n, C_n: the chain 1 - 2 - ... - n, with the double edge of
  B_n/C_n between n-1 and n;
* D_n: the chain 1 - ... - (n-2) with both n-1 and n attached to n-2;
* E_n: the chain 1 - 3 - 4 - 5 - 6 (- 7 (- 8)) with 2 attached to 4;
* F_4: 1 - 2 = 3 - 4 (double edge in the middle);
* G_2: 1 ~ 2 (triple edge).

All operations are pure functions on immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import InternalInconsistency, UnsupportedForm
from .polynomial import Poly

SERIES = ("A", "B", "C", "D", "E", "F", "G")


@dataclass(frozen=True)
class DynkinType:
    """A connected Dynkin diagram: series letter plus rank.

    Rank bounds are enforced at construction: E is restricted to ranks
    6..8, F to 4, G to 2 and D starts at 3.  D3 shares its diagram with
    A3 and is normalized to A3 wherever only degrees matter.
    """

    series: str
    rank: int

    def __post_init__(self):
        if self.series not in SERIES:
            raise ValueError("unknown series %r" % (self.series,))
        low, high = {
            "A": (1, None), "B": (1, None), "C": (1, None), "D": (3, None),
            "E": (6, 8), "F": (4, 4), "G": (2, 2),
        }[self.series]
        if self.rank < low or (high is not None and self.rank > high):
            raise ValueError("rank %d invalid for series %s" % (self.rank, self.series))

    def normalized(self) -> "DynkinType":
        """D3 is the same diagram as A3; identify them for degree lookups."""
        if self.series == "D" and self.rank == 3:
            return DynkinType("A", 3)
        return self

    @property
    def vertices(self) -> range:
        return range(1, self.rank + 1)

    def __str__(self) -> str:
        return "%s%d" % (self.series, self.rank)

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        text = text.strip()
        if len(text) < 2 or text[0].upper() not in SERIES or not text[1:].isdigit():
            raise ValueError("cannot parse Dynkin type from %r" % (text,))
        return cls(text[0].upper(), int(text[1:]))


# ---------------------------------------------------------------------------
# Weyl group degrees
# ---------------------------------------------------------------------------

_EXCEPTIONAL_DEGREES = {
    ("G", 2): (2, 6),
    ("F", 4): (2, 6, 8, 12),
    ("E", 6): (2, 5, 6, 8, 9, 12),
    ("E", 7): (2, 6, 8, 10, 12, 14, 18),
    ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
}

_EXCEPTIONAL_ORDERS = {
    ("G", 2): 12,
    ("F", 4): 1152,
    ("E", 6): 51840,
    ("E", 7): 2903040,
    ("E", 8): 696729600,
}


def weyl_degrees(t: DynkinType) -> Tuple[int, ...]:
    """Degrees of the basic polynomial invariants of the Weyl group.

    The product of the degrees is the order of the Weyl group and the
    sum of (degree - 1) is the number of positive roots.
    """
    t = t.normalized()
    n = t.rank
    if t.series == "A":
        return tuple(range(2, n + 2))
    if t.series in ("B", "C"):
        return tuple(range(2, 2 * n + 1, 2))
    if t.series == "D":
        return tuple(sorted(list(range(2, 2 * n - 1, 2)) + [n]))
    return _EXCEPTIONAL_DEGREES[(t.series, n)]


def weyl_order(t: DynkinType) -> int:
    order = 1
    for d in weyl_degrees(t):
        order *= d
    return order


def _closed_form_order(t: DynkinType) -> int:
    t = t.normalized()
    n = t.rank
    if t.series == "A":
        return math.factorial(n + 1)
    if t.series in ("B", "C"):
        return 2 ** n * math.factorial(n)
    if t.series == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return _EXCEPTIONAL_ORDERS[(t.series, n)]


def _self_check() -> None:
    # The exceptional degree lists are transcribed constants; guard against
    # transcription errors by checking the two classical identities.
    cases = [DynkinType(s, r) for (s, r) in _EXCEPTIONAL_DEGREES]
    cases += [DynkinType("A", 5), DynkinType("B", 4), DynkinType("C", 6),
              DynkinType("D", 7)]
    for t in cases:
        degs = weyl_degrees(t)
        if weyl_order(t) != _closed_form_order(t):
            raise InternalInconsistency("Weyl order mismatch for %s" % t)
        if sum(d - 1 for d in degs) != positive_root_count(t):
            raise InternalInconsistency("root count mismatch for %s" % t)


def positive_root_count(t: DynkinType) -> int:
    """Number of positive roots, equal to the dimension of the full flag."""
    t = t.normalized()
    n = t.rank
    counts = {
        "A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * n - n,
        "G": 6, "F": 24, "E": {6: 36, 7: 63, 8: 120}.get(n),
    }
    return counts[t.series]


def poincare_complete_flag(t: DynkinType) -> Poly:
    """Poincare polynomial of the complete flag variety of the given type.

    prod_i (1 - t^{d_i}) / (1 - t) over the invariant degrees d_i; the
    value at t = 1 is the Weyl group order and the degree is the number
    of positive roots.
    """
    p = Poly.one()
    for d in weyl_degrees(t):
        p = p * Poly.geometric(1, d)
    return p


# ---------------------------------------------------------------------------
# Diagram combinatorics
# ---------------------------------------------------------------------------

def dynkin_edges(t: DynkinType) -> Tuple[Tuple[int, int, int], ...]:
    """Edges (a, b, multiplicity) of the Dynkin diagram, a < b."""
    n = t.rank
    if t.series == "A":
        return tuple((i, i + 1, 1) for i in range(1, n))
    if t.series in ("B", "C"):
        return tuple((i, i + 1, 1) for i in range(1, n - 1)) + (((n - 1, n, 2),) if n >= 2 else ())
    if t.series == "D":
        chain = tuple((i, i + 1, 1) for i in range(1, n - 2))
        return chain + ((n - 2, n - 1, 1), (n - 2, n, 1))
    if t.series == "G":
        return ((1, 2, 3),)
    if t.series == "F":
        return ((1, 2, 1), (2, 3, 2), (3, 4, 1))
    # E series
    edges = [(1, 3, 1), (3, 4, 1), (4, 5, 1), (5, 6, 1), (2, 4, 1)]
    if n >= 7:
        edges.append((6, 7, 1))
    if n == 8:
        edges.append((7, 8, 1))
    return tuple(edges)


@dataclass(frozen=True)
class ParabolicSubset:
    """A subset theta of the vertices of an ambient Dynkin diagram.

    The empty subset is the Borel and yields the complete flag variety;
    the full vertex set yields a point.
    """

    ambient: DynkinType
    theta: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "theta", frozenset(self.theta))
        bad = [v for v in self.theta if not 1 <= v <= self.ambient.rank]
        if bad:
            raise ValueError("vertices %s outside 1..%d" % (sorted(bad), self.ambient.rank))

    @classmethod
    def borel(cls, ambient: DynkinType) -> "ParabolicSubset":
        return cls(ambient, frozenset())

    def complement(self) -> FrozenSet[int]:
        return frozenset(self.ambient.vertices) - self.theta

    @property
    def is_borel(self) -> bool:
        return not self.theta

    @property
    def is_full(self) -> bool:
        return len(self.theta) == self.ambient.rank

    def __str__(self) -> str:
        inner = ",".join(str(v) for v in sorted(self.theta))
        return "{%s} in %s" % (inner, self.ambient)


def _classify_tree(vertices: Sequence[int], edges: Sequence[Tuple[int, int, int]]) -> DynkinType:
    """Identify the type of a connected subdiagram from its labeled tree shape."""
    n = len(vertices)
    if n == 1:
        return DynkinType("A", 1)
    adj = {v: [] for v in vertices}
    maxmult = 1
    for a, b, m in edges:
        adj[a].append(b)
        adj[b].append(a)
        maxmult = max(maxmult, m)
    degrees = {v: len(adj[v]) for v in vertices}
    if maxmult == 3:
        return DynkinType("G", 2)
    if maxmult == 2:
        # Double-edge diagrams occurring inside B/C/F ambients are chains;
        # a double edge at an end is B/C (equal degrees), in the middle F4.
        (a, b, _m), = [e for e in edges if e[2] == 2]
        if degrees[a] == 1 or degrees[b] == 1:
            return DynkinType("B", n) if n >= 2 else DynkinType("A", 1)
        if n == 4:
            return DynkinType("F", 4)
        raise InternalInconsistency("unrecognized doubly-laced subdiagram")
    branch = [v for v in vertices if degrees[v] == 3]
    if not branch:
        return DynkinType("A", n)
    if len(branch) > 1:
        raise InternalInconsistency("more than one branch vertex in a subdiagram")
    # Arm lengths from the unique degree-3 vertex determine D vs E.
    center = branch[0]
    arms = []
    for start in adj[center]:
        length, prev, cur = 1, center, start
        while degrees[cur] == 2:
            nxt = [w for w in adj[cur] if w != prev][0]
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return DynkinType("D", n).normalized()
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return DynkinType("E", n)
    raise InternalInconsistency("unrecognized simply-laced subdiagram")


def theta_components(t: DynkinType, theta: Iterable[int]) -> List[DynkinType]:
    """Types of the connected components of the subdiagram spanned by theta."""
    theta = frozenset(theta)
    if not theta:
        return []
    edges = [e for e in dynkin_edges(t) if e[0] in theta and e[1] in theta]
    adj = {v: set() for v in theta}
    for a, b, _m in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = set()
    components = []
    for v in sorted(theta):
        if v in seen:
            continue
        stack, comp = [v], set()
        while stack:
            w = stack.pop()
            if w in comp:
                continue
            comp.add(w)
            stack.extend(adj[w] - comp)
        seen |= comp
        comp_edges = [e for e in edges if e[0] in comp]
        components.append(_classify_tree(sorted(comp), comp_edges))
    return components


ThetaLike = Union[ParabolicSubset, FrozenSet[int], Iterable[int], None]


def _theta_set(t: DynkinType, theta: ThetaLike) -> FrozenSet[int]:
    if theta is None:
        return frozenset()
    if isinstance(theta, ParabolicSubset):
        if theta.ambient != t:
            raise ValueError("parabolic ambient %s does not match %s" % (theta.ambient, t))
        return theta.theta
    return ParabolicSubset(t, frozenset(theta)).theta


def poincare_weyl_subgroup(t: DynkinType, theta: ThetaLike) -> Poly:
    """Length generating polynomial of the parabolic Weyl subgroup W_theta.

    W_theta is the direct product of the Weyl groups of the connected
    components of theta, so its Poincare polynomial is the product of the
    component flag polynomials.
    """
    p = Poly.one()
    for comp in theta_components(t, _theta_set(t, theta)):
        p = p * poincare_complete_flag(comp)
    return p


def poincare_homogeneous(t: DynkinType, theta: ThetaLike = None) -> Poly:
    """Poincare polynomial of the flag variety G/P_theta.

    Computed as the exact quotient P(W, t) / P(W_theta, t); the Borel
    (empty theta) gives the complete flag and the full vertex set gives
    the constant polynomial 1.
    """
    total = poincare_complete_flag(t)
    levi = poincare_weyl_subgroup(t, theta)
    try:
        q = total.exact_div(levi)
    except Exception as exc:  # inexact division means corrupted degree data
        raise InternalInconsistency(
            "P(W_theta) does not divide P(W) for %s, theta=%s" % (t, theta)) from exc
    if not q.is_nonnegative:
        raise InternalInconsistency("negative flag quotient for %s" % (t,))
    return q


# ---------------------------------------------------------------------------
# Generic splitness
# ---------------------------------------------------------------------------

class _Unknown:
    """Outcome of a test that depends on data beyond (d, q)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Unknown"

    def __bool__(self) -> bool:
        raise TypeError("Unknown splitness outcome has no truth value; "
                        "compare with `is UNKNOWN`")


UNKNOWN = _Unknown()


def is_generically_split(form, theta: ThetaLike, tits_index: int,
                         splitting_degree: int,
                         pfister: Optional[bool] = None):
    """Does the group split over the function field of the flag X_theta?

    ``tits_index`` is the index d of the Tits algebra (for D_n, of the
    algebra associated with the vector representation) and
    ``splitting_degree`` is the degree q of a splitting field.  Returns
    True when some vertex k outside theta satisfies the per-series
    criterion, False when no vertex can, and UNKNOWN when the answer
    depends on whether the underlying form is a Pfister form or its
    maximal neighbor (series B and D), which (d, q) cannot decide; the
    ``pfister`` flag lets the caller settle that case.

    Accepts a GroupForm or a bare DynkinType; only the type matters.
    """
    t = form.base if hasattr(form, "base") else form
    if not isinstance(t, DynkinType):
        raise UnsupportedForm("expected a Dynkin type or group form, got %r" % (form,))
    d, q = tits_index, splitting_degree
    outside = sorted(frozenset(t.vertices) - _theta_set(t, theta))
    if not outside:
        return False
    n = t.rank
    s = t.series

    if s == "A":
        return any(math.gcd(k, d) == 1 for k in outside)
    if s == "C":
        return any(k % 2 == 1 for k in outside)
    if s == "G":
        return True
    if s == "F":
        return q == 3 or any(k in (1, 2, 3) for k in outside)
    if s == "E" and n == 6:
        good = {3, 5}
        if d == 1:
            good |= {2, 4}
        if q % 2 == 1:
            good |= {1, 6}
        return any(k in good for k in outside)
    if s == "E" and n == 7:
        good = {2, 5}
        if d == 1:
            good |= {3, 4}
        if q == 3:
            good |= {1, 2, 3, 4, 5, 6}
        return any(k in good for k in outside)
    if s == "E" and n == 8:
        return q == 5 or any(k in (2, 3, 4, 5) for k in outside)

    # B and D carry the Pfister escape hatch: a Pfister form or maximal
    # neighbor splits over any X_theta.
    if s == "B":
        plain = n in outside
    else:  # D
        plain = d == 1 and any(k in (n - 1, n) for k in outside)
    if plain:
        return True
    if pfister is None:
        return UNKNOWN
    return bool(pfister)


_self_check()
