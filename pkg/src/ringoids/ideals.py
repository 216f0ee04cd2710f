"""Ideals, k-ideals, and the simplicity notions they induce.

A subset A is an ideal when it is closed under addition and absorbs
multiplication from both sides.  A k-ideal additionally never produces a
member when adding a member to a non-member.  Subsets are frozensets of
carrier elements.
"""

from __future__ import annotations

from .tables import (
    CayleyTable,
    Ringoid,
    absorbing_element,
    is_associative,
    is_commutative,
    neutral_element,
)

CONSTANT_SQUARE = "constant-square"
GROUP = "group"
GROUP_WITH_ABSORBING = "group-with-absorbing"
NOT_APPLICABLE = "not-applicable"


def _as_subset(r: Ringoid, subset) -> frozenset[int]:
    a = frozenset(subset)
    if not a:
        raise ValueError("subset must be non-empty")
    if not all(0 <= x < r.n for x in a):
        raise ValueError("subset contains elements outside the carrier")
    return a


def is_ideal(r: Ringoid, subset) -> bool:
    a = _as_subset(r, subset)
    plus = r.plus.rows
    times = r.times.rows
    for x in a:
        px = plus[x]
        if any(px[y] not in a for y in a):
            return False
        for s in range(r.n):
            if times[s][x] not in a or times[x][s] not in a:
                return False
    return True


def is_k_ideal(r: Ringoid, subset) -> bool:
    a = _as_subset(r, subset)
    if not is_ideal(r, a):
        return False
    plus = r.plus.rows
    outside = [y for y in range(r.n) if y not in a]
    for x in a:
        for y in outside:
            if plus[x][y] in a or plus[y][x] in a:
                return False
    return True


def _ideal_closure(r: Ringoid, seed: frozenset[int]) -> frozenset[int]:
    plus = r.plus.rows
    times = r.times.rows
    cur = set(seed)
    frontier = set(seed)
    while frontier:
        new = set()
        for x in frontier:
            for y in cur:
                new.add(plus[x][y])
                new.add(plus[y][x])
            for s in range(r.n):
                new.add(times[s][x])
                new.add(times[x][s])
        new -= cur
        cur |= new
        frontier = new
    return frozenset(cur)


def enumerate_ideals(r: Ringoid, k_only: bool = False) -> list[frozenset[int]]:
    """All ideals of r (including the full carrier), smallest first.

    Up to 16 elements this is a plain subset scan.  Beyond that every ideal
    is reconstructed as a join of principal ideals: close each singleton,
    then close the family under pairwise unions.
    """
    n = r.n
    found: set[frozenset[int]] = set()
    if n <= 16:
        for mask in range(1, 1 << n):
            a = frozenset(x for x in range(n) if mask >> x & 1)
            if is_ideal(r, a):
                found.add(a)
    else:
        principal = {_ideal_closure(r, frozenset([x])) for x in range(n)}
        found = set(principal)
        frontier = set(principal)
        while frontier:
            new = set()
            for a in frontier:
                for b in found:
                    u = _ideal_closure(r, a | b)
                    if u not in found:
                        new.add(u)
            found |= new
            frontier = new
    out = sorted(found, key=lambda a: (len(a), sorted(a)))
    if k_only:
        out = [a for a in out if is_k_ideal(r, a)]
    return out


def is_ideal_simple(r: Ringoid) -> bool:
    """No proper ideal has two or more elements."""
    return not any(2 <= len(a) < r.n for a in enumerate_ideals(r))


def is_ideal_free(r: Ringoid) -> bool:
    """No proper ideal at all, singletons included."""
    return all(len(a) == r.n for a in enumerate_ideals(r))


def is_k_ideal_simple(r: Ringoid) -> bool:
    """No proper k-ideal has two or more elements."""
    return not any(2 <= len(a) < r.n for a in enumerate_ideals(r, k_only=True))


def _require_idempotent_semiring(r: Ringoid) -> None:
    if not r.is_semiring():
        raise ValueError("plus must be associative and commutative")
    if not r.flags.plus_idempotent:
        raise ValueError("plus must be idempotent")


def plus_order(r: Ringoid) -> list[list[bool]]:
    """The semilattice order a <= b iff a + b = b of an idempotent plus."""
    _require_idempotent_semiring(r)
    n = r.n
    plus = r.plus.rows
    return [[plus[a][b] == b for b in range(n)] for a in range(n)]


def down_set(r: Ringoid, x: int) -> frozenset[int]:
    """All elements a with a + x = x."""
    _require_idempotent_semiring(r)
    if not 0 <= x < r.n:
        raise ValueError("element out of range")
    plus = r.plus.rows
    return frozenset(a for a in range(r.n) if plus[a][x] == x)


def top_element(r: Ringoid) -> int:
    """The sum of all elements; the top of the semilattice order."""
    _require_idempotent_semiring(r)
    plus = r.plus.rows
    acc = 0
    for x in range(1, r.n):
        acc = plus[acc][x]
    return acc


def minimal_elements(r: Ringoid) -> frozenset[int]:
    leq = plus_order(r)
    n = r.n
    return frozenset(
        a for a in range(n) if not any(b != a and leq[b][a] for b in range(n))
    )


def k_ideal_simple_fast(r: Ringoid) -> bool:
    """k-ideal-simplicity of an additively idempotent semiring, without
    enumerating subsets.

    Writing top for the sum of all elements and M for the minimal elements
    of the semilattice order, the semiring has a proper k-ideal with at
    least two elements exactly when some x outside M and distinct from top
    satisfies top*x <= x and x*top <= x; the witness is the down-set of x.
    """
    _require_idempotent_semiring(r)
    n = r.n
    if n == 1:
        return True
    leq = plus_order(r)
    top = top_element(r)
    minimal = minimal_elements(r)
    times = r.times.rows
    for x in range(n):
        if x == top or x in minimal:
            continue
        if leq[times[top][x]][x] and leq[times[x][top]][x]:
            return False
    return True


def semigroup_group_criterion(t: CayleyTable) -> bool:
    """A finite semigroup is a group iff every translation is onto.

    Requires associativity.  When the criterion holds, the group axioms are
    asserted outright rather than trusted.
    """
    if not is_associative(t):
        raise ValueError("operation must be associative")
    n = t.n
    full = frozenset(range(n))
    ok = all(frozenset(t.rows[a]) == full for a in range(n)) and all(
        frozenset(t.col(a)) == full for a in range(n)
    )
    if ok:
        e = neutral_element(t)
        assert e is not None, "onto translations must force a neutral element"
        for a in range(n):
            assert any(
                t.rows[a][x] == e and t.rows[x][a] == e for x in range(n)
            ), "onto translations must force inverses"
    return ok


def _subset_is_group(t: CayleyTable, members: frozenset[int]) -> bool:
    if not members:
        return False
    for a in members:
        if any(t.rows[a][b] not in members for b in members):
            return False
        if {t.rows[a][b] for b in members} != members:
            return False
        if {t.rows[b][a] for b in members} != members:
            return False
    return True


def trichotomy(r: Ringoid) -> str:
    """Which of the three shapes an ideal-simple, associative and commutative
    multiplication takes: constant on all products, a group, or a group away
    from an absorbing element.

    Inputs failing the hypotheses get "not-applicable" instead of an error.
    """
    times = r.times
    if not (is_associative(times) and is_commutative(times)):
        return NOT_APPLICABLE
    if not is_ideal_simple(r):
        return NOT_APPLICABLE
    n = r.n
    products = {times.rows[a][b] for a in range(n) for b in range(n)}
    if len(products) == 1:
        return CONSTANT_SQUARE
    if semigroup_group_criterion(times):
        return GROUP
    o = absorbing_element(times)
    if o is not None and _subset_is_group(times, frozenset(range(n)) - {o}):
        return GROUP_WITH_ABSORBING
    raise AssertionError("ideal-simple commutative semigroup escaped every case")
