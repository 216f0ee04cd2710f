"""Congruences of finite ringoids.

A congruence is an equivalence relation compatible with all four families
of translations x -> s+x, x -> x+s, x -> s*x, x -> x*s.  Partitions are
normalised so that class ids appear in first-occurrence order, which makes
equality of partitions purely syntactic.
"""

from __future__ import annotations

from collections import deque

from .ideals import is_ideal
from .tables import CayleyTable, Ringoid, neutral_element

PLUS_IDEMPOTENT = "idempotent"
PLUS_GROUP = "group"
PLUS_OTHER = "other"

CANCELLATIVE = "cancellative"
ABSORBING_DOUBLING = "absorbing-doubling"
NEITHER = "neither"


class Partition:
    """A partition of {0, ..., n-1} with normalised class ids."""

    __slots__ = ("n", "classof")

    def __init__(self, classof):
        classof = tuple(classof)
        n = len(classof)
        if n < 1:
            raise ValueError("empty carrier")
        remap: dict[int, int] = {}
        norm = []
        for c in classof:
            if c not in remap:
                remap[c] = len(remap)
            norm.append(remap[c])
        self.n = n
        self.classof = tuple(norm)

    @classmethod
    def identity(cls, n: int) -> Partition:
        return cls(range(n))

    @classmethod
    def full(cls, n: int) -> Partition:
        return cls([0] * n)

    @property
    def num_classes(self) -> int:
        return max(self.classof) + 1

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_classes)]
        for x, c in enumerate(self.classof):
            out[c].append(x)
        return out

    def relates(self, a: int, b: int) -> bool:
        return self.classof[a] == self.classof[b]

    def is_identity(self) -> bool:
        return self.num_classes == self.n

    def is_full(self) -> bool:
        return self.num_classes == 1

    def __eq__(self, other):
        return isinstance(other, Partition) and self.classof == other.classof

    def __hash__(self):
        return hash(self.classof)

    def __repr__(self):
        return f"Partition({list(self.classof)})"


def set_partitions(n: int):
    """Yield every partition of {0,...,n-1} as a restricted-growth tuple."""
    if n < 1:
        raise ValueError("empty carrier")
    rgs = [0] * n

    def rec(i: int, maxc: int):
        if i == n:
            yield tuple(rgs)
            return
        for c in range(maxc + 2):
            rgs[i] = c
            yield from rec(i + 1, max(maxc, c))

    yield from rec(1, 0)


def _translations(r: Ringoid) -> list[tuple[int, ...]]:
    """All unary translations of both operations, deduplicated."""
    n = r.n
    maps = set()
    for s in range(n):
        maps.add(r.plus.rows[s])
        maps.add(r.plus.col(s))
        maps.add(r.times.rows[s])
        maps.add(r.times.col(s))
    maps.discard(tuple(range(n)))
    return sorted(maps)


def principal_congruence(r: Ringoid, a: int, b: int) -> Partition:
    """The least congruence identifying a and b.

    Worklist closure over a union-find forest: each time two classes merge,
    the merged pair is pushed through every translation.  Functions map
    connecting chains to connecting chains, so propagating one pair per
    merge is enough.
    """
    n = r.n
    if not (0 <= a < n and 0 <= b < n):
        raise ValueError("element out of range")
    maps = _translations(r)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = deque([(a, b)])
    while queue:
        u, v = queue.popleft()
        ru, rv = find(u), find(v)
        if ru == rv:
            continue
        parent[ru] = rv
        for f in maps:
            fu, fv = f[u], f[v]
            if find(fu) != find(fv):
                queue.append((fu, fv))
    return Partition(find(x) for x in range(n))


def is_congruence(r: Ringoid, p: Partition) -> bool:
    """Direct compatibility check of a partition against all translations."""
    if p.n != r.n:
        raise ValueError("partition size mismatch")
    classof = p.classof
    maps = _translations(r)
    for block in p.blocks():
        rep = block[0]
        for other in block[1:]:
            for f in maps:
                if classof[f[rep]] != classof[f[other]]:
                    return False
    return True


def is_congruence_simple(r: Ringoid) -> bool:
    """True iff the only congruences are the identity and the full relation.

    A one-element ringoid counts as simple.  Every principal congruence of a
    simple ringoid must already be the full relation.
    """
    n = r.n
    if n == 1:
        return True
    for a in range(n):
        for b in range(a + 1, n):
            if not principal_congruence(r, a, b).is_full():
                return False
    return True


def all_congruences(r: Ringoid) -> list[Partition]:
    """Every congruence of r, by filtering all set partitions.  Guarded small."""
    n = r.n
    if n > 8:
        raise ValueError("carrier too large for the exhaustive partition scan")
    out = []
    for rgs in set_partitions(n):
        p = Partition(rgs)
        if is_congruence(r, p):
            out.append(p)
    return out


def _reachable_multiples(plus: CayleyTable, b: int) -> set[int]:
    """The set {b, b+b, b+b+b, ...}; the iteration cycles, no cap needed."""
    seen = set()
    x = b
    while x not in seen:
        seen.add(x)
        x = plus.rows[x][b]
    return seen


def preorder_rho(r: Ringoid) -> tuple[Partition, list[list[bool]]]:
    """The reachability preorder and its induced congruence.

    a is below b when some finite multiple of b equals x + a for some x.
    The symmetric part is an equivalence; it is returned as a partition
    together with the full preorder matrix.
    """
    if not r.is_semiring():
        raise ValueError("plus must be associative and commutative")
    n = r.n
    plus = r.plus
    cols = [set(plus.col(a)) for a in range(n)]
    mult = [_reachable_multiples(plus, b) for b in range(n)]
    leq = [[bool(mult[b] & cols[a]) for b in range(n)] for a in range(n)]
    for a in range(n):
        assert leq[a][a], "reachability preorder must be reflexive"
    for a in range(n):
        for b in range(n):
            if leq[a][b]:
                for c in range(n):
                    if leq[b][c]:
                        assert leq[a][c], "reachability preorder must be transitive"
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(n):
        for b in range(a + 1, n):
            if leq[a][b] and leq[b][a]:
                parent[find(a)] = find(b)
    part = Partition(find(x) for x in range(n))
    for a in range(n):
        twice = plus.rows[a][a]
        assert part.relates(a, twice), "every element must be related to its double"
    return part, leq


def rho_from_ideal(r: Ringoid, ideal: frozenset[int]) -> Partition:
    """The congruence x ~ y iff x + a = y + b for some a, b in the ideal.

    The pair relation is computed directly and then closed transitively; the
    lemma this encodes says no closure should ever be needed, which is
    asserted.
    """
    if not r.is_semiring():
        raise ValueError("plus must be associative and commutative")
    if not is_ideal(r, ideal):
        raise ValueError("subset is not an ideal")
    n = r.n
    plus = r.plus
    shifted = [frozenset(plus.rows[x][a] for a in ideal) for x in range(n)]
    rel = [[bool(shifted[x] & shifted[y]) for y in range(n)] for x in range(n)]
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in range(n):
        for y in range(x + 1, n):
            if rel[x][y]:
                parent[find(x)] = find(y)
    for x in range(n):
        for y in range(n):
            related = find(x) == find(y)
            assert rel[x][y] == related, "pair relation must already be transitive"
    return Partition(find(x) for x in range(n))


def plus_dichotomy(r: Ringoid) -> str:
    """For a congruence-simple semiring with a plus-neutral element, the
    additive structure is either idempotent or a group.  Reports which,
    with "other" as the honest fallback for inputs outside the theorem.
    """
    if not r.is_semiring():
        raise ValueError("plus must be associative and commutative")
    e = neutral_element(r.plus)
    if e is None:
        raise ValueError("plus has no neutral element")
    n = r.n
    if all(r.plus.rows[a][a] == a for a in range(n)):
        return PLUS_IDEMPOTENT
    if all(any(r.plus.rows[a][x] == e for x in range(n)) for a in range(n)):
        return PLUS_GROUP
    return PLUS_OTHER


def no_neutral_dichotomy(r: Ringoid) -> str:
    """Classification of non-idempotent simple semirings without a neutral.

    Either plus is cancellative, or there is a plus-absorbing element equal
    to every doubled element, or neither (the fallback for inputs outside
    the theorem's hypotheses).
    """
    if not r.is_semiring():
        raise ValueError("plus must be associative and commutative")
    if neutral_element(r.plus) is not None:
        raise ValueError("plus has a neutral element")
    n = r.n
    if all(r.plus.rows[a][a] == a for a in range(n)):
        raise ValueError("plus is idempotent")
    if all(len(set(r.plus.rows[s])) == n for s in range(n)):
        return CANCELLATIVE
    o = None
    for cand in range(n):
        if all(r.plus.rows[cand][x] == cand for x in range(n)):
            o = cand
            break
    if o is not None and all(r.plus.rows[x][x] == o for x in range(n)):
        return ABSORBING_DOUBLING
    return NEITHER
