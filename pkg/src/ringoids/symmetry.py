"""Automorphisms, endomorphisms, canonical forms, and symmetry invariants.

Permutations are image tuples: p[x] is where x goes.  Groups of
permutations are kept as plain sorted containers; nothing here needs more
group theory than closure under composition.
"""

from __future__ import annotations

from itertools import permutations, product
from math import factorial

from .tables import (
    CayleyTable,
    Ringoid,
    element_stats,
    is_commutative,
    is_idempotent,
    is_latin_square,
)

RIGHT_ZERO = "right-zero"
LEFT_ZERO = "left-zero"
IDEM_QUASIGROUP_3 = "idem-quasigroup-3"
TWO_ELEM_FLIP = "two-elem-flip"
TWO_ELEM_FLIP_ANTI = "two-elem-flip-anti"
NOT_FULL = "not-full"

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply q first, then p."""
    return tuple(p[q[x]] for x in range(len(p)))


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


class PermGroup:
    """A set of permutations of {0,...,n-1}, assumed closed under composition."""

    __slots__ = ("n", "perms")

    def __init__(self, n: int, perms):
        self.n = n
        self.perms = tuple(sorted(set(perms)))
        if not self.perms:
            raise ValueError("a permutation group needs at least the identity")

    @classmethod
    def from_generators(cls, n: int, gens) -> PermGroup:
        """Closure of the generators under composition."""
        closed = {identity_perm(n)}
        frontier = set(gens) - closed
        closed |= frontier
        while frontier:
            new = set()
            for g in frontier:
                for h in closed:
                    for cand in (compose(g, h), compose(h, g)):
                        if cand not in closed:
                            new.add(cand)
            closed |= new
            frontier = new
        return cls(n, closed)

    def __len__(self):
        return len(self.perms)

    def __iter__(self):
        return iter(self.perms)

    def __contains__(self, p):
        return p in set(self.perms)

    def orbits(self) -> list[frozenset[int]]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for p in self.perms:
            for x in range(self.n):
                rx, ry = find(x), find(p[x])
                if rx != ry:
                    parent[rx] = ry
        groups: dict[int, set[int]] = {}
        for x in range(self.n):
            groups.setdefault(find(x), set()).add(x)
        return [frozenset(v) for v in groups.values()]

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def __repr__(self):
        return f"PermGroup(n={self.n}, order={len(self.perms)})"


def _extension_consistent(rows, img, k: int) -> bool:
    # After assigning img[k], check every product constraint that just
    # became decidable: pairs (a, b) with a, b <= k whose product is also
    # assigned, where one of a, b, or the product equals k.
    for a in range(k + 1):
        ra = rows[a]
        ia = img[a]
        for b in range(k + 1):
            p = ra[b]
            if p > k:
                continue
            if a == k or b == k or p == k:
                if img[p] != rows[ia][img[b]]:
                    return False
    return True


def automorphisms(t: CayleyTable) -> PermGroup:
    """All table-preserving permutations, by depth-first image assignment."""
    n = t.n
    rows = t.rows
    out = []
    img = [-1] * n
    used = [False] * n

    def extend(k: int):
        if k == n:
            out.append(tuple(img))
            return
        for v in range(n):
            if used[v]:
                continue
            img[k] = v
            used[v] = True
            if _extension_consistent(rows, img, k):
                extend(k + 1)
            used[v] = False
        img[k] = -1

    extend(0)
    return PermGroup(n, out)


def endomorphisms(t: CayleyTable) -> list[tuple[int, ...]]:
    """All self-maps f with f(x*y) = f(x)*f(y).

    Small carriers are scanned outright; from five elements on the same
    depth-first consistency pruning as for automorphisms is used, without
    the injectivity bookkeeping.  Beyond six elements the output itself can
    be astronomically large (every map is an endomorphism of a right-zero
    table), so the call is refused.
    """
    n = t.n
    if n > 6:
        raise ValueError("carrier too large")
    rows = t.rows
    if n <= 4:
        out = []
        for img in product(range(n), repeat=n):
            if all(
                img[rows[a][b]] == rows[img[a]][img[b]]
                for a in range(n)
                for b in range(n)
            ):
                out.append(img)
        return sorted(out)
    out = []
    img = [-1] * n

    def extend(k: int):
        if k == n:
            out.append(tuple(img))
            return
        for v in range(n):
            img[k] = v
            if _extension_consistent(rows, img, k):
                extend(k + 1)
        img[k] = -1

    extend(0)
    return sorted(out)


def mult_monoid(t: CayleyTable) -> list[tuple[int, ...]]:
    """The transformation monoid generated by all translations of t."""
    n = t.n
    gens = {t.rows[a] for a in range(n)} | {t.col(a) for a in range(n)}
    closed = {identity_perm(n)} | gens
    frontier = set(closed)
    while frontier:
        new = set()
        for f in frontier:
            for g in closed:
                fg = tuple(f[g[x]] for x in range(n))
                gf = tuple(g[f[x]] for x in range(n))
                if fg not in closed:
                    new.add(fg)
                if gf not in closed:
                    new.add(gf)
        closed |= new
        frontier = new
    return sorted(closed)


def _is_plus_endo(f, plus: CayleyTable) -> bool:
    rows = plus.rows
    n = plus.n
    return all(f[rows[x][y]] == rows[f[x]][f[y]] for x in range(n) for y in range(n))


def ringoid_check_via_mult(plus: CayleyTable, times: CayleyTable) -> bool:
    """Distributivity phrased through translation maps: the pair is a ringoid
    exactly when every left and right multiplication is an endomorphism of
    the addition."""
    if plus.n != times.n:
        raise ValueError("tables have different carriers")
    for a in range(times.n):
        if not _is_plus_endo(times.rows[a], plus):
            return False
        if not _is_plus_endo(times.col(a), plus):
            return False
    return True


def parasemifield_check_via_mult(plus: CayleyTable, times: CayleyTable) -> bool:
    """True when every translation of times is an automorphism of plus.

    Together with distributivity this characterises the pairs whose
    multiplication is a quasigroup.
    """
    if plus.n != times.n:
        raise ValueError("tables have different carriers")
    full = frozenset(range(plus.n))
    for a in range(times.n):
        for f in (times.rows[a], times.col(a)):
            if frozenset(f) != full or not _is_plus_endo(f, plus):
                return False
    return True


def is_triply_transitive(g: PermGroup) -> bool:
    """Transitivity on ordered triples of distinct points; False below n=3."""
    n = g.n
    if n < 3:
        return False
    start = (0, 1, 2)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for tri in frontier:
            for p in g:
                image = (p[tri[0]], p[tri[1]], p[tri[2]])
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return len(seen) == n * (n - 1) * (n - 2)


def stats_lemmas_check(t: CayleyTable) -> tuple[int, int, int, int]:
    """For a table with transitive automorphism group, assert the counting
    identities on element stats and return the common value.

    The stats are constant across elements, the left neutralizer count
    matches the right annihilator count and vice versa, and commutativity
    collapses all four.
    """
    aut = automorphisms(t)
    if not aut.is_transitive():
        raise ValueError("automorphism group is not transitive")
    stats = [element_stats(t, s) for s in range(t.n)]
    first = stats[0]
    assert all(s == first for s in stats), "stats must not depend on the element"
    assert first.nl == first.ar, "left neutralizers must match right annihilators"
    assert first.al == first.nr, "left annihilators must match right neutralizers"
    if is_commutative(t):
        assert len(set(first.as_tuple())) == 1, "commutative tables have equal stats"
    return first.as_tuple()


def full_aut_classification(t: CayleyTable) -> str:
    """Which table shapes admit the full symmetric group as automorphisms.

    Returns "not-full" when the group is smaller; otherwise the table must
    be one of the known shapes (or a mirror of one) and is named.
    """
    n = t.n
    aut = automorphisms(t)
    if len(aut) != factorial(n):
        return NOT_FULL
    rows = t.rows
    if all(rows[x][y] == y for x in range(n) for y in range(n)):
        return RIGHT_ZERO
    if all(rows[x][y] == x for x in range(n) for y in range(n)):
        return LEFT_ZERO
    if n == 3 and is_idempotent(t) and is_latin_square(t):
        return IDEM_QUASIGROUP_3
    if n == 2 and all(rows[x][y] == 1 - y for x in range(2) for y in range(2)):
        return TWO_ELEM_FLIP
    if n == 2 and all(rows[x][y] == 1 - x for x in range(2) for y in range(2)):
        return TWO_ELEM_FLIP_ANTI
    raise AssertionError("full symmetric automorphism group on an unexpected table")


def relabel_table(t: CayleyTable, p: Perm) -> CayleyTable:
    """The table carried along p: new(p(x), p(y)) = p(old(x, y))."""
    n = t.n
    out = [[0] * n for _ in range(n)]
    rows = t.rows
    for x in range(n):
        px = p[x]
        for y in range(n):
            out[px][p[y]] = p[rows[x][y]]
    return CayleyTable(out)


def relabel_ringoid(r: Ringoid, p: Perm) -> Ringoid:
    return Ringoid(relabel_table(r.plus, p), relabel_table(r.times, p))


def _perm_candidates(n: int, fix_zero: bool):
    if fix_zero:
        for rest in permutations(range(1, n)):
            yield (0,) + rest
    else:
        yield from permutations(range(n))


def canonical_tables(
    tables: tuple[CayleyTable, ...], fix_zero: bool = False
) -> tuple[tuple[CayleyTable, ...], PermGroup]:
    """Lexicographically least simultaneous relabeling of several tables.

    The concatenated row-major encodings are minimised over all candidate
    permutations (optionally only those fixing 0), comparing incrementally
    so worse candidates are abandoned at the first losing cell.  Returns
    the relabeled tables and the automorphism group of the canonical form.
    """
    n = tables[0].n
    if any(t.n != n for t in tables):
        raise ValueError("tables have different carriers")
    all_rows = [t.rows for t in tables]
    best: list[int] | None = None
    winners: list[Perm] = []
    for p in _perm_candidates(n, fix_zero):
        pinv = inverse(p)
        if best is None:
            enc = []
            for rows in all_rows:
                for a in range(n):
                    src = rows[pinv[a]]
                    for b in range(n):
                        enc.append(p[src[pinv[b]]])
            best = enc
            winners = [p]
            continue
        verdict = 0
        i = 0
        for rows in all_rows:
            for a in range(n):
                src = rows[pinv[a]]
                for b in range(n):
                    v = p[src[pinv[b]]]
                    if v != best[i]:
                        verdict = -1 if v < best[i] else 1
                        break
                    i += 1
                if verdict:
                    break
            if verdict:
                break
        if verdict == 1:
            continue
        if verdict == -1:
            enc = []
            for rows in all_rows:
                for a in range(n):
                    src = rows[pinv[a]]
                    for b in range(n):
                        enc.append(p[src[pinv[b]]])
            best = enc
            winners = [p]
        else:
            winners.append(p)
    assert best is not None
    canon = []
    i = 0
    for _ in tables:
        rows = []
        for _a in range(n):
            rows.append(best[i : i + n])
            i += n
        canon.append(CayleyTable(rows))
    base = inverse(winners[0])
    aut = PermGroup(n, [compose(w, base) for w in winners])
    return tuple(canon), aut


def canonical_form(r: Ringoid, fix_zero: bool = False) -> tuple[Ringoid, PermGroup]:
    """Canonical relabeling of a ringoid plus the automorphism group of the
    canonical representative.  Mirror images are not identified."""
    (plus, times), aut = canonical_tables((r.plus, r.times), fix_zero)
    return Ringoid(plus, times), aut


def midpoint_groupoid(m: int) -> CayleyTable:
    """Averaging on Z/m for odd m: a∘b is the unique midpoint of a and b."""
    if m < 1 or m % 2 == 0:
        raise ValueError("modulus must be odd and positive")
    half = pow(2, -1, m) if m > 1 else 0
    return CayleyTable([[(half * (a + b)) % m for b in range(m)] for a in range(m)])
