import math
import random
from itertools import permutations, product

import pytest

from ringoids.symmetry import (
    PermGroup,
    automorphisms,
    canonical_form,
    canonical_tables,
    compose,
    endomorphisms,
    full_aut_classification,
    identity_perm,
    inverse,
    is_triply_transitive,
    midpoint_groupoid,
    mult_monoid,
    parasemifield_check_via_mult,
    relabel_ringoid,
    relabel_table,
    ringoid_check_via_mult,
    stats_lemmas_check,
)
from ringoids.tables import CayleyTable, is_distributive, is_latin_square

from conftest import random_semiring

RIGHT_ZERO3 = CayleyTable([[0, 1, 2]] * 3)
CHAIN3 = CayleyTable([[0, 1, 2], [1, 1, 2], [2, 2, 2]])
Z4_PLUS = CayleyTable([[(a + b) % 4 for b in range(4)] for a in range(4)])


def test_perm_primitives():
    p = (1, 2, 0)
    assert compose(p, inverse(p)) == identity_perm(3)
    assert compose(inverse(p), p) == identity_perm(3)
    q = (0, 2, 1)
    assert compose(p, q) == tuple(p[q[x]] for x in range(3))


def test_perm_group_generation():
    g = PermGroup.from_generators(3, [(1, 2, 0)])
    assert len(g) == 3
    assert g.is_transitive()
    s3 = PermGroup.from_generators(3, [(1, 0, 2), (1, 2, 0)])
    assert len(s3) == 6
    trivial = PermGroup.from_generators(3, [])
    assert len(trivial) == 1 and not trivial.is_transitive()


def test_orbits():
    g = PermGroup.from_generators(4, [(1, 0, 2, 3)])
    assert sorted(map(sorted, g.orbits())) == [[0, 1], [2], [3]]


def test_automorphisms_against_brute_force():
    rng = random.Random(321)
    for _ in range(25):
        n = rng.randint(1, 4)
        t = CayleyTable([[rng.randrange(n) for _ in range(n)] for _ in range(n)])
        got = set(automorphisms(t))
        brute = {
            p for p in permutations(range(n))
            if relabel_table(t, p) == t
        }
        assert got == brute


def test_automorphism_counts():
    assert len(automorphisms(RIGHT_ZERO3)) == 6
    assert len(automorphisms(CHAIN3)) == 1
    assert len(automorphisms(Z4_PLUS)) == 2  # x -> 3x is the only other one


def test_endomorphisms_contain_automorphisms_and_constants():
    endos = set(endomorphisms(CHAIN3))
    brute = {
        f for f in product(range(3), repeat=3)
        if all(f[CHAIN3.rows[x][y]] == CHAIN3.rows[f[x]][f[y]]
               for x in range(3) for y in range(3))
    }
    assert endos == brute
    assert (0, 0, 0) in endos and (1, 1, 1) in endos


def test_mult_monoid_closure():
    mm = mult_monoid(CHAIN3)
    fs = set(mm)
    for f in fs:
        for g in fs:
            assert tuple(f[g[x]] for x in range(3)) in fs
    assert identity_perm(3) in fs
    for a in range(3):
        assert CHAIN3.rows[a] in fs and CHAIN3.col(a) in fs


def test_ringoid_check_via_mult_agrees_with_distributivity():
    rng = random.Random(777)
    for _ in range(200):
        n = rng.randint(1, 4)
        plus = CayleyTable([[rng.randrange(n) for _ in range(n)] for _ in range(n)])
        times = CayleyTable([[rng.randrange(n) for _ in range(n)] for _ in range(n)])
        assert ringoid_check_via_mult(plus, times) == is_distributive(plus, times)


def test_parasemifield_check():
    # the midpoint operation distributes over itself and is a quasigroup
    m5 = midpoint_groupoid(5)
    assert parasemifield_check_via_mult(m5, m5)
    assert not parasemifield_check_via_mult(m5, CayleyTable([[0] * 5] * 5))
    z5 = CayleyTable([[(a + b) % 5 for b in range(5)] for a in range(5)])
    assert not parasemifield_check_via_mult(z5, m5)


def test_triply_transitive():
    s4 = PermGroup.from_generators(4, [(1, 0, 2, 3), (1, 2, 3, 0)])
    assert is_triply_transitive(s4)
    c4 = PermGroup.from_generators(4, [(1, 2, 3, 0)])
    assert not is_triply_transitive(c4)
    assert not is_triply_transitive(PermGroup.from_generators(2, [(1, 0)]))


def test_stats_lemmas_right_zero():
    assert stats_lemmas_check(RIGHT_ZERO3) == (3, 1, 1, 3)
    with pytest.raises(ValueError):
        stats_lemmas_check(CHAIN3)  # rigid, not transitive


def test_stats_lemmas_on_midpoints():
    for m in (3, 5, 7):
        assert stats_lemmas_check(midpoint_groupoid(m)) == (1, 1, 1, 1)


def test_full_aut_classification_order2():
    outcomes = {}
    for rows in product(range(2), repeat=4):
        t = CayleyTable([[rows[0], rows[1]], [rows[2], rows[3]]])
        outcomes[rows] = full_aut_classification(t)
    assert outcomes[(0, 1, 0, 1)] == "right-zero"
    assert outcomes[(0, 0, 1, 1)] == "left-zero"
    assert outcomes[(1, 0, 1, 0)] == "two-elem-flip"
    assert outcomes[(1, 1, 0, 0)] == "two-elem-flip-anti"
    full = [k for k, v in outcomes.items() if v != "not-full"]
    assert len(full) == 4


def test_full_aut_classification_order3():
    latin = CayleyTable([[0, 2, 1], [2, 1, 0], [1, 0, 2]])
    assert is_latin_square(latin)
    assert full_aut_classification(latin) == "idem-quasigroup-3"
    assert full_aut_classification(CHAIN3) == "not-full"


def test_relabel_round_trip():
    rng = random.Random(98)
    for _ in range(30):
        r = random_semiring(rng)
        p = tuple(rng.sample(range(r.n), r.n))
        moved = relabel_ringoid(r, p)
        back = relabel_ringoid(moved, inverse(p))
        assert back.plus == r.plus and back.times == r.times


def test_canonical_form_is_relabeling_invariant():
    rng = random.Random(135)
    for _ in range(40):
        r = random_semiring(rng, max_order=4)
        canon, aut = canonical_form(r)
        for _ in range(3):
            p = tuple(rng.sample(range(r.n), r.n))
            moved = relabel_ringoid(r, p)
            canon2, aut2 = canonical_form(moved)
            assert canon2.plus == canon.plus and canon2.times == canon.times
            assert len(aut2) == len(aut)


def test_canonical_form_aut_group_is_stabilizer():
    rng = random.Random(246)
    for _ in range(20):
        r = random_semiring(rng, max_order=4)
        canon, aut = canonical_form(r)
        brute = sum(
            1 for p in permutations(range(r.n))
            if relabel_ringoid(canon, p).plus == canon.plus
            and relabel_ringoid(canon, p).times == canon.times
        )
        assert len(aut) == brute
        for p in aut:
            moved = relabel_ringoid(canon, p)
            assert moved.plus == canon.plus and moved.times == canon.times


def test_canonical_tables_fix_zero():
    t = CayleyTable([[1, 1], [1, 0]])
    (free,), _ = canonical_tables((t,))
    (fixed,), _ = canonical_tables((t,), fix_zero=True)
    assert free.rows <= fixed.rows  # unrestricted minimum is no larger
    assert fixed == t  # only the identity fixes 0 on two points


def test_canonical_encoding_is_minimal():
    rng = random.Random(864)
    for _ in range(15):
        n = rng.randint(2, 4)
        t = CayleyTable([[rng.randrange(n) for _ in range(n)] for _ in range(n)])
        (canon,), _ = canonical_tables((t,))
        flat = [v for row in canon.rows for v in row]
        for p in permutations(range(n)):
            other = relabel_table(t, p)
            assert flat <= [v for row in other.rows for v in row]


def test_midpoint_groupoid():
    m7 = midpoint_groupoid(7)
    assert is_latin_square(m7)
    for a in range(7):
        for b in range(7):
            v = m7.rows[a][b]
            assert (2 * v) % 7 == (a + b) % 7
    with pytest.raises(ValueError):
        midpoint_groupoid(4)
    aut = automorphisms(m7)
    assert len(aut) == 42  # x -> cx + d with c nonzero
    assert aut.is_transitive()


def test_aut_size_divides_factorial():
    rng = random.Random(55)
    for _ in range(20):
        r = random_semiring(rng)
        assert math.factorial(r.n) % len(automorphisms(r.plus)) == 0
