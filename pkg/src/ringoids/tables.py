"""Cayley tables, structural predicates, and the Ringoid container.

A ringoid here is a finite set {0, ..., n-1} with two binary operations,
written additively and multiplicatively, linked only by the two
distributive laws.  Nothing else is assumed; every stronger property
(associativity, commutativity, idempotency, neutral or absorbing
elements) is a flag computed from the tables.
"""

from __future__ import annotations

from dataclasses import dataclass


class CayleyTable:
    """A binary operation on {0, ..., n-1}, stored row-major.

    rows[a][b] is the product of a and b.  Row a is the left translation
    by a, column a the right translation.
    """

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        n = len(rows)
        if n < 1:
            raise ValueError("carrier must be non-empty")
        for a, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {a} has length {len(row)}, expected {n}")
            for b, v in enumerate(row):
                if not 0 <= v < n:
                    raise ValueError(f"entry ({a},{b}) = {v} is outside 0..{n - 1}")
        self.n = n
        self.rows = rows

    def __getitem__(self, a: int) -> tuple[int, ...]:
        return self.rows[a]

    def col(self, b: int) -> tuple[int, ...]:
        """Right translation by b as an image tuple."""
        return tuple(row[b] for row in self.rows)

    def transpose(self) -> CayleyTable:
        return CayleyTable(tuple(zip(*self.rows)))

    def __eq__(self, other):
        return isinstance(other, CayleyTable) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"CayleyTable({[list(r) for r in self.rows]})"


def is_commutative(t: CayleyTable) -> bool:
    rows = t.rows
    n = t.n
    return all(rows[a][b] == rows[b][a] for a in range(n) for b in range(a + 1, n))


def is_associative(t: CayleyTable) -> bool:
    rows = t.rows
    n = t.n
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            rab = rows[ra[b]]
            rb = rows[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    return False
    return True


def is_idempotent(t: CayleyTable) -> bool:
    return all(t.rows[a][a] == a for a in range(t.n))


def is_latin_square(t: CayleyTable) -> bool:
    """True iff every row and every column is a permutation."""
    n = t.n
    full = frozenset(range(n))
    if any(frozenset(row) != full for row in t.rows):
        return False
    return all(frozenset(t.col(b)) == full for b in range(n))


def neutral_element(t: CayleyTable) -> int | None:
    """The two-sided neutral element, or None.  Uniqueness is automatic."""
    n = t.n
    ident = tuple(range(n))
    for e in range(n):
        if t.rows[e] == ident and t.col(e) == ident:
            return e
    return None


def absorbing_element(t: CayleyTable) -> int | None:
    """The two-sided absorbing element, or None."""
    n = t.n
    for o in range(n):
        if all(v == o for v in t.rows[o]) and all(row[o] == o for row in t.rows):
            return o
    return None


def is_distributive(plus: CayleyTable, times: CayleyTable) -> bool:
    """Both distributive laws of times over plus, checked on all triples."""
    if plus.n != times.n:
        raise ValueError("tables have different carriers")
    n = plus.n
    p = plus.rows
    t = times.rows
    for a in range(n):
        ta = t[a]
        for b in range(n):
            pb = p[b]
            tab = ta[b]
            tba = t[b][a]
            for c in range(n):
                if ta[pb[c]] != p[tab][ta[c]]:
                    return False
                if t[pb[c]][a] != p[tba][t[c][a]]:
                    return False
    return True


@dataclass(frozen=True)
class ElementStats:
    """Sizes of the left/right neutralizer and annihilator sets of one element.

    For s in a groupoid: nl counts x with s*x = x, nr counts x with x*s = x,
    al counts x with s*x = s, ar counts x with x*s = s.
    """

    nl: int
    nr: int
    al: int
    ar: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.nl, self.nr, self.al, self.ar)


def element_stats(t: CayleyTable, s: int) -> ElementStats:
    n = t.n
    row = t.rows[s]
    col = t.col(s)
    nl = sum(1 for x in range(n) if row[x] == x)
    nr = sum(1 for x in range(n) if col[x] == x)
    al = sum(1 for x in range(n) if row[x] == s)
    ar = sum(1 for x in range(n) if col[x] == s)
    return ElementStats(nl, nr, al, ar)


def nfold_sum(plus: CayleyTable, a: int, k: int) -> int:
    """The k-fold sum a + a + ... + a for k >= 1.

    Requires an associative and commutative plus; under that assumption the
    bracketing is immaterial and a left fold is fine.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    acc = a
    for _ in range(k - 1):
        acc = plus.rows[acc][a]
    return acc


@dataclass(frozen=True)
class RingoidFlags:
    plus_commutative: bool
    plus_associative: bool
    plus_idempotent: bool
    times_commutative: bool
    times_associative: bool
    times_quasigroup: bool
    has_neutral_zero: bool
    has_absorbing_zero: bool

    def as_dict(self) -> dict[str, bool]:
        return {
            "plus_commutative": self.plus_commutative,
            "plus_associative": self.plus_associative,
            "plus_idempotent": self.plus_idempotent,
            "times_commutative": self.times_commutative,
            "times_associative": self.times_associative,
            "times_quasigroup": self.times_quasigroup,
            "has_neutral_zero": self.has_neutral_zero,
            "has_absorbing_zero": self.has_absorbing_zero,
        }


def classify(plus: CayleyTable, times: CayleyTable) -> RingoidFlags:
    """Structural flags of a table pair.  Distributivity is not re-checked here.

    has_neutral_zero records whether plus has a neutral element at all, and
    has_absorbing_zero whether some plus-neutral element is also
    times-absorbing (the element need not carry the label 0).
    """
    e = neutral_element(plus)
    o = absorbing_element(times)
    return RingoidFlags(
        plus_commutative=is_commutative(plus),
        plus_associative=is_associative(plus),
        plus_idempotent=is_idempotent(plus),
        times_commutative=is_commutative(times),
        times_associative=is_associative(times),
        times_quasigroup=is_latin_square(times),
        has_neutral_zero=e is not None,
        has_absorbing_zero=e is not None and e == o,
    )


class Ringoid:
    """Two Cayley tables on the same carrier satisfying both distributive laws."""

    __slots__ = ("plus", "times", "flags")

    def __init__(self, plus: CayleyTable, times: CayleyTable):
        if plus.n != times.n:
            raise ValueError("tables have different carriers")
        if not is_distributive(plus, times):
            raise ValueError("multiplication does not distribute over addition")
        self.plus = plus
        self.times = times
        self.flags = classify(plus, times)

    @classmethod
    def from_rows(cls, plus_rows, times_rows) -> Ringoid:
        return cls(CayleyTable(plus_rows), CayleyTable(times_rows))

    @property
    def n(self) -> int:
        return self.plus.n

    def is_semiring(self) -> bool:
        """Plus associative and commutative; nothing is required of times."""
        return self.flags.plus_associative and self.flags.plus_commutative

    def __eq__(self, other):
        return (
            isinstance(other, Ringoid)
            and self.plus.rows == other.plus.rows
            and self.times.rows == other.times.rows
        )

    def __hash__(self):
        return hash((self.plus.rows, self.times.rows))

    def __repr__(self):
        return f"Ringoid(n={self.n})"
