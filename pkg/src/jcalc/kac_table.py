"""Torsion data of split simple groups, after Kac's Table II.

For each supported (group form, prime) pair this module produces the
triple (r, d_1..d_r, k_1..k_r): the mod-p Chow ring of the compact group
is a truncated polynomial ring

    (Z/p)[x_1, ..., x_r] / (x_1^{p^{k_1}}, ..., x_r^{p^{k_r}})

on generators x_i of codimension d_i coprime to p.  The d_i * p^{k_i}
are the p-exceptional degrees of the group.  Alongside the numbers, each
row carries the known necessary constraints on J-invariant values
(chains like j_1 >= j_2 and Steenrod-derived bounds j_i <= j_target + 1,
with binomial gates evaluated mod p at check time).

Rows for the classical families SO_n, Spin_n, PGO_2n, half-spin and
PGSp_n are generated from closed formulas in n; the exceptional rows are
embedded literals.  Generators with k_i = 0 are identically zero in the
quotient and are dropped (this happens for PGO_2n with n odd, whose
codimension-1 generator has 2^0 exactly dividing n; the surviving data
then agrees with the SL/mu description of the same group).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import InternalInconsistency, UnsupportedForm
from .root_data import DynkinType

# isogeny tags, normalized per series:
#   A: "slmu" with mu | rank+1  (mu = 1 is SL, mu = rank+1 is PGL)
#   B: "spin" (simply connected) or "so" (adjoint)
#   C: "sc" (symplectic) or "pgsp" (adjoint)
#   D: "spin", "so", "halfspin", "pgo"
#   E6, E7: "sc" or "ad";  G2, F4, E8: "sc" (trivial center)
_ALIASES = {
    "A": {"sc": "slmu", "ad": "slmu", "slmu": "slmu"},
    "B": {"sc": "spin", "spin": "spin", "ad": "so", "so": "so"},
    "C": {"sc": "sc", "sp": "sc", "ad": "pgsp", "pgsp": "pgsp"},
    "D": {"sc": "spin", "spin": "spin", "so": "so",
          "halfspin": "halfspin", "hs": "halfspin", "ad": "pgo", "pgo": "pgo"},
    "E": {"sc": "sc", "ad": "ad"},
    "F": {"sc": "sc", "ad": "sc"},
    "G": {"sc": "sc", "ad": "sc"},
}


@dataclass(frozen=True)
class GroupForm:
    """A simple group of inner type: Dynkin type plus isogeny class.

    For the A series the isogeny is SL_{n+1}/mu_m, recorded in ``mu``
    (with mu = 1 the simply connected and mu = n+1 the adjoint group).
    Half-spin forms exist only in even D rank.
    """

    base: DynkinType
    isogeny: str
    mu: int = 1

    def __post_init__(self):
        s = self.base.series
        raw = self.isogeny
        alias = _ALIASES[s].get(raw)
        if alias is None:
            raise UnsupportedForm("isogeny %r not defined for series %s" % (raw, s))
        object.__setattr__(self, "isogeny", alias)
        if s == "A":
            n = self.base.rank + 1
            mu = n if raw == "ad" else self.mu
            object.__setattr__(self, "mu", mu)
            if mu < 1 or n % mu != 0:
                raise UnsupportedForm("mu = %d does not divide %d" % (mu, n))
        else:
            object.__setattr__(self, "mu", 1)
        if s == "E" and self.base.rank == 8:
            object.__setattr__(self, "isogeny", "sc")
        if self.isogeny == "halfspin" and self.base.rank % 2 != 0:
            raise UnsupportedForm(
                "half-spin forms need even D rank, got %s" % (self.base,))

    # -- convenience constructors --------------------------------------

    @classmethod
    def simply_connected(cls, base: DynkinType) -> "GroupForm":
        return cls(base, "sc")

    @classmethod
    def adjoint(cls, base: DynkinType) -> "GroupForm":
        if base.series == "A":
            return cls(base, "slmu", base.rank + 1)
        return cls(base, "ad")

    @classmethod
    def sl_mod_mu(cls, rank: int, mu: int) -> "GroupForm":
        return cls(DynkinType("A", rank), "slmu", mu)

    @property
    def quadratic_dimension(self) -> int:
        """n in SO_n / Spin_n, for B and D series forms."""
        if self.base.series == "B":
            return 2 * self.base.rank + 1
        if self.base.series == "D":
            return 2 * self.base.rank
        raise UnsupportedForm("%s is not an orthogonal form" % (self,))

    @property
    def name(self) -> str:
        s, r = self.base.series, self.base.rank
        if s == "A":
            if self.mu == 1:
                return "A%d" % r
            if self.mu == r + 1:
                return "A%dad" % r
            return "A%dmu%d" % (r, self.mu)
        if s in ("B", "C", "D"):
            return "%s%d%s" % (s, r, self.isogeny)
        if (s, r) in (("G", 2), ("F", 4), ("E", 8)):
            return "%s%d" % (s, r)
        return "%s%d%s" % (s, r, self.isogeny)

    def __str__(self) -> str:
        return self.name


_FORM_SUFFIXES = ("halfspin", "pgsp", "spin", "pgo", "so", "sc", "ad", "hs")


def parse_form(text: str) -> GroupForm:
    """Parse a compact form name such as E7sc, A4mu5, D6halfspin or Spin11.

    Classical aliases SLn, PGLn, SOn, Spinn, HalfSpinN, PGOn, Spn and
    PGSpn (n the dimension of the defining representation) are accepted.
    """
    raw = text.strip()
    low = raw.lower()
    classical = [("halfspin", "D", "halfspin"), ("pgsp", "C", "pgsp"),
                 ("spin", None, "spin"), ("pgo", "D", "pgo"), ("pgl", "A", "ad"),
                 ("so", None, "so"), ("sl", "A", "slmu"), ("sp", "C", "sc")]
    for prefix, _series, isogeny in classical:
        if low.startswith(prefix) and low[len(prefix):].split("mu")[0].isdigit():
            rest = low[len(prefix):]
            mu = 1
            if "mu" in rest:
                rest, mu_text = rest.split("mu", 1)
                mu = int(mu_text)
            n = int(rest)
            if mu != 1 and prefix != "sl":
                raise UnsupportedForm("mu only applies to SL forms")
            if prefix in ("sl", "pgl"):
                rank = n - 1
                mu = n if prefix == "pgl" else mu
                return GroupForm(DynkinType("A", rank), "slmu", mu)
            if prefix in ("sp", "pgsp"):
                if n % 2:
                    raise UnsupportedForm("symplectic dimension must be even")
                return GroupForm(DynkinType("C", n // 2), isogeny)
            series_letter = "B" if n % 2 else "D"
            return GroupForm(DynkinType(series_letter, (n - 1) // 2 if n % 2 else n // 2),
                             isogeny)
    head = raw[:1].upper()
    rest = raw[1:]
    digits = ""
    while rest and rest[0].isdigit():
        digits += rest[0]
        rest = rest[1:]
    if head not in "ABCDEFG" or not digits:
        raise UnsupportedForm("cannot parse form %r" % (text,))
    base = DynkinType(head, int(digits))
    tag = rest.strip().lower()
    if not tag:
        return GroupForm.simply_connected(base)
    if tag.startswith("mu"):
        return GroupForm(base, "slmu", int(tag[2:]))
    if tag == "ad":
        return GroupForm.adjoint(base)
    if tag in _FORM_SUFFIXES:
        return GroupForm(base, tag)
    raise UnsupportedForm("cannot parse form %r" % (text,))


# ---------------------------------------------------------------------------
# Torsion data
# ---------------------------------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class TorsionData:
    """The numbers (p; d_1..d_r; k_1..k_r) of one table row.

    d is nondecreasing with every entry coprime to p, and every k_i is
    at least 1 (zero exponents denote absent generators and never occur
    in stored data); r = 0 exactly when p is not a torsion prime.
    """

    p: int
    d: Tuple[int, ...]
    k: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(self.d))
        object.__setattr__(self, "k", tuple(self.k))
        if not _is_prime(self.p):
            raise ValueError("p = %r is not prime" % (self.p,))
        if len(self.d) != len(self.k):
            raise ValueError("d and k must have equal length")
        if any(di <= 0 or di % self.p == 0 for di in self.d):
            raise ValueError("codimensions must be positive and coprime to p")
        if any(self.d[i] > self.d[i + 1] for i in range(len(self.d) - 1)):
            raise ValueError("codimensions must be nondecreasing")
        if any(ki < 1 for ki in self.k):
            raise ValueError("exponents k_i must be >= 1")

    @property
    def r(self) -> int:
        return len(self.d)

    @property
    def caps(self) -> Tuple[int, ...]:
        """Truncation bounds p^{k_i}; exponent m_i ranges over 0..p^{k_i}-1."""
        return tuple(self.p ** ki for ki in self.k)

    @property
    def ring_rank(self) -> int:
        """Number of monomials of the truncated ring, p^{k_1 + ... + k_r}."""
        return self.p ** sum(self.k)

    def exceptional_degrees(self) -> Tuple[int, ...]:
        return tuple(di * self.p ** ki for di, ki in zip(self.d, self.k))


@dataclass(frozen=True)
class ConstraintRule:
    """One constraint on admissible J-invariant values.

    kind "ge": j_i >= j_j, required only when the gate binomial
    C(gate[0], gate[1]) is nonzero mod p (ungated when gate is None).
    kind "le": j_i <= j_j + offset.
    """

    kind: str
    i: int
    j: int
    offset: int = 0
    gate: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if self.kind not in ("ge", "le"):
            raise ValueError("rule kind must be 'ge' or 'le'")

    def as_dict(self) -> Dict:
        return {"kind": self.kind, "i": self.i, "j": self.j,
                "offset": self.offset,
                "gate": list(self.gate) if self.gate else None}

    def __str__(self) -> str:
        if self.kind == "ge":
            text = "j%d >= j%d" % (self.i, self.j)
            if self.gate:
                text += " if C(%d,%d) != 0 mod p" % self.gate
            return text
        tail = " + %d" % self.offset if self.offset else ""
        return "j%d <= j%d%s" % (self.i, self.j, tail)


def _ge(i: int, j: int, gate: Optional[Tuple[int, int]] = None) -> ConstraintRule:
    return ConstraintRule("ge", i, j, 0, gate)


def _le(i: int, j: int, offset: int = 1) -> ConstraintRule:
    return ConstraintRule("le", i, j, offset)


def _padic_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


Row = Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[ConstraintRule, ...]]


def _drop_trivial_generators(d: Sequence[int], k: Sequence[int],
                             rules: Sequence[ConstraintRule]) -> Row:
    """Remove generators with k_i = 0 and renumber the constraint indices."""
    keep = [idx for idx, ki in enumerate(k) if ki > 0]
    if len(keep) == len(k):
        return tuple(d), tuple(k), tuple(rules)
    remap = {old + 1: new + 1 for new, old in enumerate(keep)}
    out_rules = []
    for rule in rules:
        if rule.i not in remap or rule.j not in remap:
            raise InternalInconsistency(
                "constraint %s touches a dropped k=0 generator" % (rule,))
        out_rules.append(replace(rule, i=remap[rule.i], j=remap[rule.j]))
    return (tuple(d[i] for i in keep), tuple(k[i] for i in keep), tuple(out_rules))


def _chain_rules(gate_shift: int, first: int, r: int,
                 le_target) -> Tuple[ConstraintRule, ...]:
    """Gated chain rules shared by the orthogonal family rows.

    GE rules j_i >= j_{i+l} gated by C(i + gate_shift, l) mod 2, for
    i >= first, plus the bounds j_i <= j_{le_target(i)} + 1 whenever the
    target index exists and differs from i.
    """
    rules: List[ConstraintRule] = []
    for i in range(first, r + 1):
        for l in range(1, r - i + 1):
            rules.append(_ge(i, i + l, gate=(i + gate_shift, l)))
    for i in range(first, r + 1):
        target = le_target(i)
        if 1 <= target <= r and target != i:
            rules.append(_le(i, target))
    return tuple(rules)


def _so_row(n: int) -> Row:
    r = (n + 1) // 4
    d = [2 * i - 1 for i in range(1, r + 1)]
    k = [_log2_floor((n - 1) // (2 * i - 1)) for i in range(1, r + 1)]
    return _drop_trivial_generators(d, k, _chain_rules(-1, 1, r, lambda i: 2 * i - 1))


def _spin_row(n: int) -> Row:
    r = (n - 3) // 4
    d = [2 * i + 1 for i in range(1, r + 1)]
    k = [_log2_floor((n - 1) // (2 * i + 1)) for i in range(1, r + 1)]
    return _drop_trivial_generators(d, k, _chain_rules(0, 1, r, lambda i: 2 * i))


def _pgo_row(n: int) -> Row:
    # PGO_{2n}; the gate C(i-2, l) only makes sense from the second
    # generator on, and the codimension-1 generator drops out when n is odd.
    r = (n + 2) // 2
    d = [1] + [2 * i - 3 for i in range(2, r + 1)]
    k = [_padic_valuation(n, 2)] + \
        [_log2_floor((2 * n - 1) // (2 * i - 3)) for i in range(2, r + 1)]
    return _drop_trivial_generators(d, k, _chain_rules(-2, 2, r, lambda i: 2 * i - 2))


def _halfspin_row(n: int) -> Row:
    # Spin^{+/-}_{2n} with n even.
    r = n // 2
    d = [1] + [2 * i - 1 for i in range(2, r + 1)]
    k = [_padic_valuation(n, 2)] + \
        [_log2_floor((2 * n - 1) // (2 * i - 1)) for i in range(2, r + 1)]
    return _drop_trivial_generators(d, k, _chain_rules(-1, 1, r, lambda i: 2 * i - 1))


def _log2_floor(x: int) -> int:
    if x < 1:
        return -1
    return x.bit_length() - 1


_EXCEPTIONAL_ROWS: Dict[Tuple[str, int], Row] = {
    ("G2", 2): ((3,), (1,), ()),
    ("F4", 2): ((3,), (1,), ()),
    ("F4", 3): ((4,), (1,), ()),
    ("E6", 2): ((3,), (1,), ()),           # both isogenies
    ("E6sc", 3): ((4,), (1,), ()),
    ("E6ad", 3): ((1, 4), (2, 1), ()),
    ("E7", 3): ((4,), (1,), ()),           # both isogenies
    ("E7sc", 2): ((3, 5, 9), (1, 1, 1), (_ge(1, 2), _ge(2, 3))),
    ("E7ad", 2): ((1, 3, 5, 9), (1, 1, 1, 1), (_ge(2, 3), _ge(3, 4))),
    ("E8", 2): ((3, 5, 9, 15), (3, 2, 1, 1),
                (_ge(1, 2), _ge(2, 3), _le(1, 2), _le(2, 3))),
    ("E8", 3): ((4, 10), (1, 1), (_ge(1, 2),)),
    ("E8", 5): ((6,), (1,), ()),
}


def so_torsion_data(n: int) -> TorsionData:
    """Raw SO_n torsion data at p = 2, for any n >= 3.

    Useful where only the numbers matter and no group form is wanted
    (for example SO_4, whose diagram A1 x A1 is not a simple type).
    """
    if n < 3:
        raise UnsupportedForm("SO_n needs n >= 3")
    d, k, _rules = _so_row(n)
    return TorsionData(2, d, k)


def spin_torsion_data(n: int) -> TorsionData:
    """Raw Spin_n torsion data at p = 2, for any n >= 7."""
    if n < 7:
        raise UnsupportedForm("Spin_n has no torsion below n = 7")
    d, k, _rules = _spin_row(n)
    return TorsionData(2, d, k)


def _row(form: GroupForm, p: int) -> Optional[Row]:
    s, rank = form.base.series, form.base.rank
    if s == "A":
        if form.mu % p != 0:
            return None
        n = rank + 1
        k1 = _padic_valuation(n, p)
        if k1 == 0:
            raise InternalInconsistency("p | mu | n forces a positive valuation")
        return ((1,), (k1,), ())
    if s == "C":
        if form.isogeny != "pgsp" or p != 2:
            return None
        return ((1,), (_padic_valuation(2 * rank, 2),), ())
    if s in ("B", "D"):
        if p != 2:
            return None
        n = form.quadratic_dimension
        if form.isogeny == "so":
            row = _so_row(n)
        elif form.isogeny == "spin":
            row = _spin_row(n)
        elif form.isogeny == "pgo":
            row = _pgo_row(rank)
        else:
            row = _halfspin_row(rank)
        return row if row[0] else None
    if s == "G":
        return _EXCEPTIONAL_ROWS[("G2", 2)] if p == 2 else None
    if s == "F":
        return _EXCEPTIONAL_ROWS.get(("F4", p))
    if s == "E" and rank == 6:
        if p == 2:
            return _EXCEPTIONAL_ROWS[("E6", 2)]
        if p == 3:
            return _EXCEPTIONAL_ROWS[("E6%s" % form.isogeny, 3)]
        return None
    if s == "E" and rank == 7:
        if p == 2:
            return _EXCEPTIONAL_ROWS[("E7%s" % form.isogeny, 2)]
        if p == 3:
            return _EXCEPTIONAL_ROWS[("E7", 3)]
        return None
    if s == "E" and rank == 8:
        return _EXCEPTIONAL_ROWS.get(("E8", p))
    return None


def torsion_primes(form: GroupForm) -> List[int]:
    """Primes p for which the form has a nontrivial table row."""
    if not isinstance(form, GroupForm):
        raise UnsupportedForm("expected a GroupForm, got %r" % (form,))
    candidates = [2, 3, 5]
    if form.base.series == "A":
        candidates = _prime_factors(form.mu)
    return [p for p in candidates if _row(form, p) is not None]


def _prime_factors(n: int) -> List[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def torsion_data(form: GroupForm, p: int) -> TorsionData:
    """The (r, d, k) data of the (form, p) table row; r = 0 off-table."""
    if not isinstance(form, GroupForm):
        raise UnsupportedForm("expected a GroupForm, got %r" % (form,))
    if not _is_prime(p):
        raise ValueError("p = %r is not prime" % (p,))
    row = _row(form, p)
    if row is None:
        return TorsionData(p, (), ())
    d, k, _rules = row
    return TorsionData(p, d, k)


def constraint_rules(form: GroupForm, p: int) -> Tuple[ConstraintRule, ...]:
    """The constraint set of the (form, p) row, gates left symbolic."""
    if not isinstance(form, GroupForm):
        raise UnsupportedForm("expected a GroupForm, got %r" % (form,))
    row = _row(form, p)
    return row[2] if row is not None else ()


# ---------------------------------------------------------------------------
# Enumeration and dump
# ---------------------------------------------------------------------------

def classical_forms(max_rank: int) -> Iterator[GroupForm]:
    """All classical-series forms with a table row, rank <= max_rank."""
    for rank in range(1, max_rank + 1):
        n = rank + 1
        for mu in range(2, n + 1):
            if n % mu == 0:
                yield GroupForm.sl_mod_mu(rank, mu)
    for rank in range(1, max_rank + 1):
        yield GroupForm(DynkinType("C", rank), "pgsp")
    for rank in range(1, max_rank + 1):
        yield GroupForm(DynkinType("B", rank), "so")
        yield GroupForm(DynkinType("B", rank), "spin")
    for rank in range(3, max_rank + 1):
        yield GroupForm(DynkinType("D", rank), "spin")
        yield GroupForm(DynkinType("D", rank), "so")
        yield GroupForm(DynkinType("D", rank), "pgo")
        if rank % 2 == 0:
            yield GroupForm(DynkinType("D", rank), "halfspin")


def exceptional_forms() -> Iterator[GroupForm]:
    yield GroupForm(DynkinType("G", 2), "sc")
    yield GroupForm(DynkinType("F", 4), "sc")
    for tag in ("sc", "ad"):
        yield GroupForm(DynkinType("E", 6), tag)
        yield GroupForm(DynkinType("E", 7), tag)
    yield GroupForm(DynkinType("E", 8), "sc")


def table_rows(max_rank: int = 8) -> Iterator[Tuple[GroupForm, int]]:
    """All (form, p) pairs with a nontrivial row, classical ranks bounded."""
    seen = set()
    for form in list(classical_forms(max_rank)) + list(exceptional_forms()):
        for p in torsion_primes(form):
            key = (form, p)
            if key not in seen:
                seen.add(key)
                yield form, p


def expand_table(max_rank: int = 8) -> Iterator[Dict]:
    """Machine-readable dump rows: {form, p, r, d, k, rules}."""
    for form, p in table_rows(max_rank):
        data = torsion_data(form, p)
        yield {
            "form": form.name,
            "p": p,
            "r": data.r,
            "d": list(data.d),
            "k": list(data.k),
            "rules": [rule.as_dict() for rule in constraint_rules(form, p)],
        }
