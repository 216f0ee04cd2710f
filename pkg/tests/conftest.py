"""Shared generators for seeded random semirings used across the tests."""

import random

from ringoids.search import enumerate_additive_skeletons, zero_fixed_join_endomorphisms
from ringoids.tables import CayleyTable, Ringoid, is_distributive

_SKELETONS = {n: enumerate_additive_skeletons(n) for n in range(1, 6)}
_ENDOS = {}


def _endos_for(sk):
    if sk.rows not in _ENDOS:
        _ENDOS[sk.rows] = zero_fixed_join_endomorphisms(sk)
    return _ENDOS[sk.rows]


def random_idempotent_semiring(rng: random.Random, n: int) -> Ringoid:
    """A uniform-ish member of the idempotent absorbing-zero family.

    Rows of join-irreducible elements are drawn from the zero-fixing
    join-endomorphisms and the rest of the table is forced by joins;
    invalid draws are rejected by the distributivity check and retried.
    """
    sk = rng.choice(_SKELETONS[n])
    plus = sk.rows
    leq = [[plus[a][b] == b for b in range(n)] for a in range(n)]
    below = [frozenset(b for b in range(n) if b != a and leq[b][a]) for a in range(n)]
    irr = [x for x in range(1, n) if _is_join_irreducible(plus, below, x)]
    endos = _endos_for(sk)
    while True:
        pick = {j: rng.choice(endos) for j in irr}
        rows = []
        for x in range(n):
            acc = [0] * n
            for j in irr:
                if leq[j][x]:
                    acc = [plus[a][b] for a, b in zip(acc, pick[j])]
            rows.append(tuple(acc))
        times = CayleyTable(rows)
        if is_distributive(sk, times):
            return Ringoid(sk, times)


def _is_join_irreducible(plus, below, x):
    strict = below[x]
    if not strict:
        return False
    join = 0
    for b in strict:
        join = plus[join][b]
    return join != x


def random_mod_semiring(rng: random.Random) -> Ringoid:
    """Z_k with scaled multiplication c*x*y, a ring-like semiring."""
    k = rng.randint(2, 5)
    c = rng.randrange(k)
    plus = CayleyTable([[(a + b) % k for b in range(k)] for a in range(k)])
    times = CayleyTable([[(c * a * b) % k for b in range(k)] for a in range(k)])
    return Ringoid(plus, times)


def random_truncated_semiring(rng: random.Random) -> Ringoid:
    """Max as addition, addition truncated at the top as multiplication."""
    n = rng.randint(2, 5)
    plus = CayleyTable([[max(a, b) for b in range(n)] for a in range(n)])
    times = CayleyTable([[min(a + b, n - 1) for b in range(n)] for a in range(n)])
    return Ringoid(plus, times)


def random_xor_bilinear_semiring(rng: random.Random) -> Ringoid:
    """Bit-pair carrier with xor addition and a random bilinear product."""
    m1 = [[rng.randrange(2) for _ in range(2)] for _ in range(2)]
    m2 = [[rng.randrange(2) for _ in range(2)] for _ in range(2)]

    def form(m, x, y):
        xb = (x >> 1, x & 1)
        yb = (y >> 1, y & 1)
        return sum(xb[i] * m[i][j] * yb[j] for i in range(2) for j in range(2)) % 2

    times = CayleyTable([[form(m1, x, y) * 2 + form(m2, x, y) for y in range(4)]
                         for x in range(4)])
    plus = CayleyTable([[x ^ y for y in range(4)] for x in range(4)])
    return Ringoid(plus, times)


def random_semiring(rng: random.Random, max_order: int = 5) -> Ringoid:
    """One draw from the mixed bag of valid semiring families."""
    kind = rng.randrange(4)
    if kind == 0:
        return random_idempotent_semiring(rng, rng.randint(2, max_order))
    if kind == 1:
        return random_mod_semiring(rng)
    if kind == 2:
        return random_truncated_semiring(rng)
    return random_xor_bilinear_semiring(rng)
