"""Constructive lifting lemmas over matrix rings with finite coefficients.

Desk-scale, brute-force-verifiable models of idempotent lifting along
ring surjections with nilpotent kernel: single idempotents and
orthogonal families mod p lifted exactly to Z/p^n, lifting of mutually
inverse isomorphisms between idempotents, the Chinese-remainder
splitting of Z/m coefficients, and integer lifts of SL_l(Z/m) matrices
through elementary transvections.

Every construction returns objects whose defining identities hold as
exact matrix equations, and every public function verifies them before
returning; nothing is approximate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    DeterminantNotOne,
    HypothesisViolated,
    InternalInconsistency,
    NotAFamily,
    NotAlmostIdempotent,
    ParseError,
)

IntMatrix = Tuple[Tuple[int, ...], ...]


def _prime_power(m: int) -> Optional[Tuple[int, int]]:
    """(p, n) if m = p^n for a prime p, else None."""
    if m < 2:
        return None
    p = 2
    while p * p <= m:
        if m % p == 0:
            break
        p += 1
    else:
        return (m, 1)
    n, rest = 0, m
    while rest % p == 0:
        rest //= p
        n += 1
    return (p, n) if rest == 1 else None


def _factorize(m: int) -> List[Tuple[int, int]]:
    out, f = [], 2
    while f * f <= m:
        if m % f == 0:
            e = 0
            while m % f == 0:
                m //= f
                e += 1
            out.append((f, e))
        f += 1
    if m > 1:
        out.append((m, 1))
    return out


@dataclass(frozen=True)
class ModMatrix:
    """A square matrix with canonical entries in 0..m-1."""

    modulus: int
    entries: IntMatrix

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        rows = tuple(tuple(int(x) % self.modulus for x in row) for row in self.entries)
        size = len(rows)
        if any(len(row) != size for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "entries", rows)

    # -- constructors ---------------------------------------------------

    @classmethod
    def identity(cls, modulus: int, size: int) -> "ModMatrix":
        return cls(modulus, tuple(tuple(1 if i == j else 0 for j in range(size))
                                  for i in range(size)))

    @classmethod
    def zero(cls, modulus: int, size: int) -> "ModMatrix":
        return cls(modulus, tuple((0,) * size for _ in range(size)))

    @classmethod
    def from_rows(cls, modulus: int, rows: Sequence[Sequence[int]]) -> "ModMatrix":
        return cls(modulus, tuple(tuple(row) for row in rows))

    # -- accessors --------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "ModMatrix") -> None:
        if self.modulus != other.modulus or self.size != other.size:
            raise ValueError("matrix shape or modulus mismatch")

    def __add__(self, other: "ModMatrix") -> "ModMatrix":
        self._check(other)
        return ModMatrix(self.modulus, tuple(
            tuple(a + b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: "ModMatrix") -> "ModMatrix":
        self._check(other)
        return ModMatrix(self.modulus, tuple(
            tuple(a - b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.entries, other.entries)))

    def __neg__(self) -> "ModMatrix":
        return ModMatrix(self.modulus, tuple(tuple(-a for a in row) for row in self.entries))

    def __mul__(self, other):
        if isinstance(other, int):
            return ModMatrix(self.modulus,
                             tuple(tuple(other * a for a in row) for row in self.entries))
        self._check(other)
        n = self.size
        cols = list(zip(*other.entries))
        return ModMatrix(self.modulus, tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.entries))

    __rmul__ = __mul__

    @property
    def is_idempotent(self) -> bool:
        return self * self == self

    def reduce(self, modulus: int) -> "ModMatrix":
        if self.modulus % modulus:
            raise ValueError("can only reduce to a divisor of the modulus")
        return ModMatrix(modulus, self.entries)

    def det(self) -> int:
        """Determinant mod modulus, by exact integer expansion."""
        n = self.size
        rows = [list(r) for r in self.entries]
        # fraction-free Gaussian elimination over Z (Bareiss)
        sign, prev = 1, 1
        for c in range(n - 1):
            pivot_row = next((r for r in range(c, n) if rows[r][c]), None)
            if pivot_row is None:
                return 0
            if pivot_row != c:
                rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
                sign = -sign
            for r in range(c + 1, n):
                for cc in range(c + 1, n):
                    rows[r][cc] = (rows[r][cc] * rows[c][c] - rows[r][c] * rows[c][cc]) // prev
                rows[r][c] = 0
            prev = rows[c][c]
        return (sign * rows[n - 1][n - 1]) % self.modulus

    # -- text format --------------------------------------------------------

    def to_text(self) -> str:
        """Header line ``mod m size l`` then rows ';'-separated, entries ','."""
        body = ";".join(",".join(str(x) for x in row) for row in self.entries)
        return "mod %d size %d\n%s" % (self.modulus, self.size, body)

    @classmethod
    def parse(cls, text: str, modulus: Optional[int] = None) -> "ModMatrix":
        """Parse either the headered format or a bare row string plus modulus."""
        text = text.strip()
        if text.startswith("mod"):
            try:
                header, body = text.split("\n", 1)
                _mod, m_text, _size, l_text = header.split()
                m, size = int(m_text), int(l_text)
            except ValueError as exc:
                raise ParseError("bad matrix header in %r" % (text,)) from exc
        else:
            if modulus is None:
                raise ParseError("bare matrix text needs an explicit modulus")
            m, size, body = modulus, None, text
        try:
            rows = [[int(x) for x in row.split(",")] for row in body.strip().split(";")]
        except ValueError as exc:
            raise ParseError("bad matrix body in %r" % (text,)) from exc
        mat = cls.from_rows(m, rows)
        if size is not None and mat.size != size:
            raise ParseError("header says size %d, body has %d rows" % (size, mat.size))
        return mat


@dataclass(frozen=True)
class GradedEndo:
    """A matrix endomorphism of a graded module, slots tagged by degree.

    ``degrees[i]`` is the degree of the i-th basis vector; the degree-d
    component of the matrix maps the slot of degree g into degree g - d.
    """

    matrix: ModMatrix
    degrees: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))
        if len(self.degrees) != self.matrix.size:
            raise ValueError("one degree per basis vector required")

    def component(self, d: int) -> "GradedEndo":
        entries = tuple(
            tuple(x if self.degrees[i] == self.degrees[j] - d else 0
                  for j, x in enumerate(row))
            for i, row in enumerate(self.matrix.entries))
        return GradedEndo(ModMatrix(self.matrix.modulus, entries), self.degrees)

    @property
    def support_degrees(self) -> List[int]:
        out = set()
        for i, row in enumerate(self.matrix.entries):
            for j, x in enumerate(row):
                if x:
                    out.add(self.degrees[j] - self.degrees[i])
        return sorted(out)

    def is_homogeneous(self, d: int) -> bool:
        return self.support_degrees in ([], [d])


# ---------------------------------------------------------------------------
# Idempotent lifting
# ---------------------------------------------------------------------------

def lift_idempotent(a: ModMatrix) -> ModMatrix:
    """Lift an idempotent mod p to an exact idempotent over Z/p^n.

    Uses the polynomial iteration e <- 3e^2 - 2e^3, which fixes e mod p
    and squares the nilpotency order of e^2 - e at each step, so at most
    ceil(log2 n) + 1 rounds are needed.  No division occurs, so the
    construction is valid for every prime including 2.
    """
    pp = _prime_power(a.modulus)
    if pp is None:
        raise ValueError("modulus %d is not a prime power" % a.modulus)
    p, n = pp
    reduced = a.reduce(p)
    if not reduced.is_idempotent:
        raise NotAlmostIdempotent("matrix is not idempotent mod %d" % p)
    e = a
    rounds = max(1, n).bit_length() + 1
    for _ in range(rounds):
        if e.is_idempotent:
            break
        e2 = e * e
        e = 3 * e2 - 2 * (e2 * e)
    if not e.is_idempotent:
        raise InternalInconsistency("idempotent iteration failed to converge")
    if e.reduce(p) != reduced:
        raise InternalInconsistency("lift does not reduce to the input mod p")
    return e


def _corner(u: ModMatrix, x: ModMatrix) -> ModMatrix:
    return u * x * u


def lift_orthogonal_family(family: Sequence[ModMatrix]) -> List[ModMatrix]:
    """Lift a complete orthogonal idempotent family mod p to Z/p^n.

    The inputs must reduce mod p to pairwise orthogonal idempotents
    summing to the identity.  The first is lifted exactly, the rest are
    conjugated into the complementary corner (1-e)A(1-e) and handled
    recursively; the last output is whatever identity remains, which
    makes the sum exactly the identity.
    """
    if not family:
        raise NotAFamily("empty family")
    mod = family[0].modulus
    size = family[0].size
    pp = _prime_power(mod)
    if pp is None:
        raise ValueError("modulus %d is not a prime power" % mod)
    p, _n = pp
    if any(f.modulus != mod or f.size != size for f in family):
        raise NotAFamily("family members have mismatched shape or modulus")
    reductions = [f.reduce(p) for f in family]
    ident_p = ModMatrix.identity(p, size)
    if sum(reductions[1:], reductions[0]) != ident_p:
        raise NotAFamily("family does not sum to the identity mod %d" % p)
    for i, fi in enumerate(reductions):
        if not fi.is_idempotent:
            raise NotAFamily("member %d is not idempotent mod %d" % (i, p))
        for j in range(i + 1, len(reductions)):
            if fi * reductions[j] != ModMatrix.zero(p, size) or \
               reductions[j] * fi != ModMatrix.zero(p, size):
                raise NotAFamily("members %d and %d are not orthogonal mod %d" % (i, j, p))

    ident = ModMatrix.identity(mod, size)

    def rec(members: List[ModMatrix], unit: ModMatrix) -> List[ModMatrix]:
        # unit is the idempotent unit of the current corner ring.
        if len(members) == 1:
            return [unit]
        e = lift_idempotent_in_corner(members[0], unit)
        rest_unit = unit - e
        rest = [_corner(rest_unit, x) for x in members[1:]]
        return [e] + rec(rest, rest_unit)

    def lift_idempotent_in_corner(x: ModMatrix, unit: ModMatrix) -> ModMatrix:
        # The iteration 3e^2 - 2e^3 has no constant term, so it stays in
        # the corner; convergence is as in lift_idempotent.
        e = _corner(unit, x)
        _p, n = pp
        for _ in range(max(1, n).bit_length() + 1):
            if e * e == e:
                return e
            e2 = e * e
            e = 3 * e2 - 2 * (e2 * e)
        if e * e != e:
            raise InternalInconsistency("corner idempotent iteration diverged")
        return e

    lifted = rec(list(family), ident)
    # verify the advertised exact identities before returning
    total = lifted[0]
    for e in lifted[1:]:
        total = total + e
    if total != ident:
        raise InternalInconsistency("lifted family does not sum to the identity")
    for i, ei in enumerate(lifted):
        if not ei.is_idempotent:
            raise InternalInconsistency("lifted member %d is not idempotent" % i)
        if ei.reduce(p) != reductions[i]:
            raise InternalInconsistency("lifted member %d has the wrong reduction" % i)
        for j in range(i + 1, len(lifted)):
            zero = ModMatrix.zero(mod, size)
            if ei * lifted[j] != zero or lifted[j] * ei != zero:
                raise InternalInconsistency("lifted members %d, %d not orthogonal" % (i, j))
    return lifted


# ---------------------------------------------------------------------------
# Isomorphism lifting
# ---------------------------------------------------------------------------

def _nilpotency_order(a: ModMatrix, cap: int) -> int:
    """Smallest n with a^n = 0, found by direct powering up to cap."""
    zero = ModMatrix.zero(a.modulus, a.size)
    power = ModMatrix.identity(a.modulus, a.size)
    for n in range(1, cap + 1):
        power = power * a
        if power == zero:
            return n
    raise HypothesisViolated("matrix is not nilpotent within %d steps" % cap)


def lift_isomorphism(phi1: ModMatrix, phi2: ModMatrix,
                     psi12: ModMatrix, psi21: ModMatrix) -> Tuple[ModMatrix, ModMatrix]:
    """Upgrade a mod-p isomorphism between exact idempotents to an exact one.

    Hypotheses over Z/p^n: phi1 and phi2 are idempotent, and mod p the
    corner maps invert each other, psi21 psi12 = phi1 and
    psi12 psi21 = phi2.  The outputs

        theta12 = phi2 psi12 phi1,
        theta21 = (phi1 psi21 phi2) alpha*,

    where alpha = theta12 (phi1 psi21 phi2) - phi2 is nilpotent and
    alpha* = phi2 - alpha + alpha^2 - ... - (-alpha)^{n-1}, satisfy
    theta21 theta12 = phi1 and theta12 theta21 = phi2 exactly.
    """
    mod = phi1.modulus
    pp = _prime_power(mod)
    if pp is None:
        raise ValueError("modulus %d is not a prime power" % mod)
    p, n_exp = pp
    size = phi1.size
    for m in (phi2, psi12, psi21):
        if m.modulus != mod or m.size != size:
            raise ValueError("matrix shape or modulus mismatch")
    if not phi1.is_idempotent:
        raise HypothesisViolated("phi1 is not idempotent")
    if not phi2.is_idempotent:
        raise HypothesisViolated("phi2 is not idempotent")
    if (psi21 * psi12).reduce(p) != phi1.reduce(p):
        raise HypothesisViolated("psi21 psi12 != phi1 mod %d" % p)
    if (psi12 * psi21).reduce(p) != phi2.reduce(p):
        raise HypothesisViolated("psi12 psi21 != phi2 mod %d" % p)

    theta12 = phi2 * psi12 * phi1
    pre21 = phi1 * psi21 * phi2
    alpha = theta12 * pre21 - phi2
    if alpha.reduce(p) != ModMatrix.zero(p, size):
        raise HypothesisViolated("alpha does not vanish mod %d" % p)
    order = _nilpotency_order(alpha, cap=size * n_exp) if alpha != ModMatrix.zero(mod, size) else 1
    alpha_star = phi2
    power = phi2
    sign = -1
    for _ in range(1, order):
        power = power * alpha
        alpha_star = alpha_star + sign * power
        sign = -sign
    theta21 = pre21 * alpha_star

    if theta12 * theta21 != phi2 or theta21 * theta12 != phi1:
        raise InternalInconsistency("lifted isomorphisms fail their defining identities")
    return theta12, theta21


def lift_isomorphism_graded(phi1: GradedEndo, phi2: GradedEndo,
                            psi12: GradedEndo, psi21: GradedEndo,
                            degree: int = 0) -> Tuple[GradedEndo, GradedEndo]:
    """Graded wrapper: lift, then take the homogeneous components.

    With phi's of degree 0 and psi12 of degree d, psi21 of degree -d,
    the construction is automatically homogeneous; for inhomogeneous
    inputs the component extraction picks out the part that still
    satisfies the identities together with the degree-0 idempotents.
    """
    degrees = phi1.degrees
    for g in (phi2, psi12, psi21):
        if g.degrees != degrees:
            raise ValueError("graded endomorphisms over different gradings")
    t12, t21 = lift_isomorphism(phi1.matrix, phi2.matrix, psi12.matrix, psi21.matrix)
    g12 = GradedEndo(t12, degrees)
    g21 = GradedEndo(t21, degrees)
    if psi12.is_homogeneous(degree) and psi21.is_homogeneous(-degree) \
            and phi1.is_homogeneous(0) and phi2.is_homogeneous(0):
        g12, g21 = g12.component(degree), g21.component(-degree)
        if g12.matrix * g21.matrix != phi2.matrix or g21.matrix * g12.matrix != phi1.matrix:
            raise InternalInconsistency("homogeneous components lost the identities")
    return g12, g21


# ---------------------------------------------------------------------------
# Chinese remainder splitting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrtSplitting:
    """Transport between Z/m matrices and tuples of prime-power reductions."""

    modulus: int
    factors: Tuple[Tuple[int, int], ...]

    @classmethod
    def of(cls, m: int) -> "CrtSplitting":
        if m < 2:
            raise ValueError("modulus must be at least 2")
        return cls(m, tuple(_factorize(m)))

    @property
    def prime_power_moduli(self) -> Tuple[int, ...]:
        return tuple(p ** e for p, e in self.factors)

    def split(self, matrix: ModMatrix) -> Tuple[ModMatrix, ...]:
        if matrix.modulus != self.modulus:
            raise ValueError("matrix modulus %d is not %d" % (matrix.modulus, self.modulus))
        return tuple(matrix.reduce(q) for q in self.prime_power_moduli)

    def combine(self, parts: Sequence[ModMatrix]) -> ModMatrix:
        moduli = self.prime_power_moduli
        if len(parts) != len(moduli) or any(
                part.modulus != q for part, q in zip(parts, moduli)):
            raise ValueError("parts do not match the prime-power moduli %s" % (moduli,))
        size = parts[0].size
        if any(part.size != size for part in parts):
            raise ValueError("parts have mismatched sizes")
        entries = []
        for i in range(size):
            row = []
            for j in range(size):
                row.append(_crt([part.entries[i][j] for part in parts], moduli))
            entries.append(tuple(row))
        return ModMatrix(self.modulus, tuple(entries))


def _crt(residues: Sequence[int], moduli: Sequence[int]) -> int:
    x, m = 0, 1
    for r, q in zip(residues, moduli):
        # solve x' = x mod m, x' = r mod q with gcd(m, q) = 1
        inv = pow(m % q, -1, q)
        x = x + m * ((r - x) * inv % q)
        m *= q
    return x % m


def crt_split(m: int) -> CrtSplitting:
    """Prime factorization of m with invertible residue transport."""
    return CrtSplitting.of(m)


# ---------------------------------------------------------------------------
# SL lifting through elementary matrices
# ---------------------------------------------------------------------------

def _unit_mod(x: int, m: int) -> bool:
    from math import gcd
    return gcd(x % m, m) == 1


def sl_lift(matrix: ModMatrix) -> IntMatrix:
    """Integer matrix with determinant exactly 1 reducing to the input.

    Requires det = 1 mod m.  The matrix is driven to the identity over
    Z/m using only transvections (row additions), which is possible
    because Z/m is semi-local: a unit pivot is always reachable by a CRT
    combination of rows.  The recorded word of elementary matrices is
    then lifted letter by letter to Z with canonical representatives,
    giving determinant exactly 1.
    """
    m = matrix.modulus
    size = matrix.size
    if matrix.det() != 1 % m:
        raise DeterminantNotOne("determinant is %d mod %d" % (matrix.det(), m))
    work = [list(row) for row in matrix.entries]
    ops: List[Tuple[int, int, int]] = []  # row_i += a * row_j

    def apply(i: int, j: int, a: int) -> None:
        a %= m
        if a == 0 or i == j:
            return
        work[i] = [(x + a * y) % m for x, y in zip(work[i], work[j])]
        ops.append((i, j, a))

    primes = [p for p, _e in _factorize(m)]

    def make_pivot_unit(c: int) -> None:
        # choose, for each prime where the pivot vanishes, a row below
        # carrying a unit contribution, and add the CRT combination
        needed: Dict[int, int] = {}
        for p in primes:
            if work[c][c] % p == 0:
                row = next((r for r in range(c + 1, size) if work[r][c] % p != 0), None)
                if row is None:
                    raise InternalInconsistency(
                        "no unit combination in column %d despite det = 1" % c)
                needed[p] = row
        for row in set(needed.values()):
            coeff = _crt([1 if needed.get(p) == row else 0 for p in primes],
                         [p ** e for p, e in _factorize(m)])
            apply(c, row, coeff)

    def make_pivot_one(c: int) -> None:
        if work[c][c] % m == 1:
            return
        helper = next((r for r in range(c + 1, size) if _unit_mod(work[r][c], m)), None)
        if helper is None:
            # drive some lower entry to 1 using the unit pivot itself
            helper = c + 1
            u = work[c][c] % m
            apply(helper, c, (1 - work[helper][c]) * pow(u, -1, m))
        v = work[helper][c] % m
        apply(c, helper, (1 - work[c][c]) * pow(v, -1, m))

    for c in range(size - 1):
        make_pivot_unit(c)
        make_pivot_one(c)
        for r in range(size):
            if r != c and work[r][c] % m:
                apply(r, c, -work[r][c])
    # the trailing pivot is forced to 1 by the determinant
    last = size - 1
    if work[last][last] % m != 1:
        raise InternalInconsistency("trailing pivot is %d, determinant bookkeeping broken"
                                    % work[last][last])
    for r in range(last):
        if work[r][last] % m:
            apply(r, last, -work[r][last])
    if work != [list(row) for row in ModMatrix.identity(m, size).entries]:
        raise InternalInconsistency("elimination did not reach the identity")

    # T_s ... T_1 M = I over Z/m, so M itself is the word
    # E(b_1) ... E(b_s) with b_t = -a_t; lift each letter with its canonical
    # representative and multiply over Z.  Right-multiplying by I + b E_{ij}
    # is the column operation col_j += b col_i.
    lifted = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    for i, j, a in ops:
        b = (-a) % m
        for r in range(size):
            lifted[r][j] += b * lifted[r][i]
    out = tuple(tuple(x for x in row) for row in lifted)
    if ModMatrix(m, out) != matrix:
        raise InternalInconsistency("integer lift has the wrong reduction")
    if _int_det(out) != 1:
        raise InternalInconsistency("integer lift does not have determinant 1")
    return out


def _int_det(rows: IntMatrix) -> int:
    n = len(rows)
    work = [list(r) for r in rows]
    sign, prev = 1, 1
    for c in range(n - 1):
        pivot = next((r for r in range(c, n) if work[r][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            sign = -sign
        for r in range(c + 1, n):
            for cc in range(c + 1, n):
                work[r][cc] = (work[r][cc] * work[c][c] - work[r][c] * work[c][cc]) // prev
            work[r][c] = 0
        prev = work[c][c]
    return sign * work[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Instance generators for demos and randomized verification
# ---------------------------------------------------------------------------

def _prime_power_inverse(matrix: ModMatrix) -> ModMatrix:
    """Gauss-Jordan over Z/p^e, where units are exactly non-residues of p."""
    n, mod = matrix.size, matrix.modulus
    p = _prime_power(mod)[0]
    work = [list(row) + [1 if i == j else 0 for j in range(n)]
            for i, row in enumerate(matrix.entries)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if work[r][c] % p), None)
        if pivot is None:
            raise HypothesisViolated("matrix is not invertible mod %d" % mod)
        work[c], work[pivot] = work[pivot], work[c]
        inv = pow(work[c][c], -1, mod)
        work[c] = [(x * inv) % mod for x in work[c]]
        for r in range(n):
            if r != c and work[r][c]:
                coef = work[r][c]
                work[r] = [(x - coef * y) % mod for x, y in zip(work[r], work[c])]
    return ModMatrix(mod, tuple(tuple(row[n:]) for row in work))


def mod_inverse(matrix: ModMatrix) -> ModMatrix:
    """Inverse over Z/m, via the prime-power factors and CRT transport."""
    if _prime_power(matrix.modulus) is not None:
        return _prime_power_inverse(matrix)
    splitting = CrtSplitting.of(matrix.modulus)
    return splitting.combine([_prime_power_inverse(part)
                              for part in splitting.split(matrix)])


def random_unimodular(rng, modulus: int, size: int, steps: Optional[int] = None) -> ModMatrix:
    """Random product of transvections; determinant 1 by construction."""
    rows = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    for _ in range(steps if steps is not None else 3 * size):
        i, j = rng.randrange(size), rng.randrange(size)
        if i == j:
            continue
        a = rng.randrange(modulus)
        rows[i] = [(x + a * y) % modulus for x, y in zip(rows[i], rows[j])]
    return ModMatrix(modulus, tuple(tuple(r) for r in rows))


def _part_diagonal(modulus: int, size: int, start: int, stop: int) -> ModMatrix:
    return ModMatrix(modulus, tuple(
        tuple(1 if i == j and start <= i < stop else 0 for j in range(size))
        for i in range(size)))


def random_idempotent_family(rng, modulus: int, size: int, parts: int,
                             perturb: bool = True) -> List[ModMatrix]:
    """Conjugated block family, optionally perturbed inside p M_l(Z/p^n).

    The perturbation vanishes mod p, so the family still satisfies the
    lifting hypotheses without being exactly idempotent.
    """
    pp = _prime_power(modulus)
    if pp is None:
        raise ValueError("modulus %d is not a prime power" % modulus)
    p, _n = pp
    cuts = sorted(rng.sample(range(1, size), parts - 1)) if parts > 1 else []
    bounds = [0] + cuts + [size]
    u = random_unimodular(rng, modulus, size)
    u_inv = mod_inverse(u)
    family = [u * _part_diagonal(modulus, size, a, b) * u_inv
              for a, b in zip(bounds, bounds[1:])]
    if perturb:
        family = [f + ModMatrix(modulus, tuple(
            tuple(p * rng.randrange(modulus) for _ in range(size))
            for _ in range(size))) for f in family]
    return family


def random_isomorphism_instance(rng, modulus: int, size: int):
    """(phi1, phi2, psi12, psi21) satisfying the lifting hypotheses.

    phi's are exact conjugate idempotents of equal rank; the psi's invert
    each other exactly, then psi12 is perturbed inside p M_l(Z/p^n) so
    the hypotheses only survive mod p.
    """
    pp = _prime_power(modulus)
    if pp is None:
        raise ValueError("modulus %d is not a prime power" % modulus)
    p, _n = pp
    rank = rng.randrange(1, size)
    diag = _part_diagonal(modulus, size, 0, rank)
    g, h = random_unimodular(rng, modulus, size), random_unimodular(rng, modulus, size)
    g_inv, h_inv = mod_inverse(g), mod_inverse(h)
    phi1 = g * diag * g_inv
    phi2 = h * diag * h_inv
    psi12 = h * diag * g_inv
    psi21 = g * diag * h_inv
    noise = ModMatrix(modulus, tuple(
        tuple(p * rng.randrange(modulus) for _ in range(size)) for _ in range(size)))
    return phi1, phi2, psi12 + noise, psi21
