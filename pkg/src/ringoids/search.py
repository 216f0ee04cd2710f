"""Exhaustive enumeration of additively idempotent semirings and related scans.

The enumerated family fixes element 0 as both the additive neutral and the
multiplicative absorber, with idempotent commutative associative addition.
Such an addition is exactly a join-semilattice with bottom 0, so the search
splits into two stages:

 1. additive skeletons: join tables of all semilattices with bottom, one
    representative per isomorphism class;
 2. multiplications: a table distributes over the skeleton exactly when
    every row is a zero-fixing join-endomorphism and row assignment is a
    join-homomorphism from the skeleton into the endomorphisms under
    pointwise join.  Rows of join-irreducible elements determine the rest,
    so the search branches only over those rows.

The row of the top element (the sum of everything) is branched first; a
known criterion rejects any branch in which some intermediate element x
satisfies top*x <= x and x*top <= x, which settles k-ideal-simplicity long
before the table is complete.  Candidate tables are verified and filtered
in vectorised batches, independently of the branching logic that produced
them.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from itertools import permutations, product
from multiprocessing import get_context

import numpy as np

from .congruences import is_congruence_simple, set_partitions
from .ideals import is_ideal_simple, is_k_ideal_simple, k_ideal_simple_fast
from .symmetry import PermGroup, automorphisms, canonical_tables, inverse, relabel_table
from .tables import CayleyTable, Ringoid, is_associative, is_commutative, is_latin_square

SEMIRING_CLASS = "semiring-idempotent-abszero"
GROUPOID_CLASS = "groupoid"

FILTER_CONGRUENCE_SIMPLE = "congruence-simple"
FILTER_K_IDEAL_SIMPLE = "k-ideal-simple"
FILTER_IDEAL_SIMPLE = "ideal-simple"
FILTER_ALL = "all"

FILTERS = (
    FILTER_CONGRUENCE_SIMPLE,
    FILTER_K_IDEAL_SIMPLE,
    FILTER_IDEAL_SIMPLE,
    FILTER_ALL,
)

WORK_CEILING_ENV = "RINGOID_WORK_CEILING"
DEFAULT_WORK_CEILING = 50_000_000

# Census of congruence-simple members of the family, up to isomorphism,
# keyed by (times class, order).  The general order-6 value is unknown.
KNOWN_SIMPLE_COUNTS = {
    ("general", 2): 2,
    ("general", 3): 5,
    ("general", 4): 428,
    ("general", 5): 138167,
    ("commutative", 2): 2,
    ("commutative", 3): 1,
    ("commutative", 4): 21,
    ("commutative", 5): 715,
    ("commutative", 6): 59640,
    ("associative", 2): 2,
    ("associative", 3): 0,
    ("associative", 4): 0,
    ("associative", 5): 0,
    ("associative", 6): 1,
}


@dataclass(frozen=True)
class SearchSpec:
    order: int
    structure_class: str = SEMIRING_CLASS
    times_commutative: bool = False
    times_associative: bool = False
    filter: str = FILTER_ALL
    count_only: bool = False
    prune: bool = True
    shard: tuple[int, int] | None = None

    def fingerprint(self) -> str:
        return json.dumps(
            {
                "order": self.order,
                "class": self.structure_class,
                "comm": self.times_commutative,
                "assoc": self.times_associative,
                "filter": self.filter,
            },
            sort_keys=True,
        )


@dataclass
class EnumerationResult:
    spec: SearchSpec
    count: int
    ringoids: list[Ringoid] | None
    tables: list[CayleyTable] | None
    provenance: dict


# ---------------------------------------------------------------------------
# additive skeletons


def _join_table(leq, n: int):
    rows = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            uppers = [x for x in range(n) if leq[a][x] and leq[b][x]]
            if not uppers:
                return None
            least = [u for u in uppers if all(leq[u][x] for x in uppers)]
            if len(least) != 1:
                return None
            rows[a][b] = rows[b][a] = least[0]
    return CayleyTable(rows)


def enumerate_additive_skeletons(n: int) -> list[CayleyTable]:
    """Join tables of all n-element semilattices with bottom 0, one per
    isomorphism class, in a fixed deterministic order.

    The search walks order relations on {1,...,n-1} pair by pair, keeping
    the relation transitively closed, then keeps the relations in which
    every pair has a least upper bound.
    """
    if not 1 <= n <= 8:
        raise ValueError("carrier too large")
    if n == 1:
        return [CayleyTable([[0]])]
    pairs = [(a, b) for a in range(1, n) for b in range(a + 1, n)]
    leq = [[x == y or x == 0 for y in range(n)] for x in range(n)]
    incomparable: set[tuple[int, int]] = set()
    raw: list[CayleyTable] = []

    def try_add(lo: int, hi: int):
        if (min(lo, hi), max(lo, hi)) in incomparable:
            return None
        added = []
        for x in range(n):
            if not leq[x][lo]:
                continue
            for y in range(n):
                if leq[hi][y] and not leq[x][y]:
                    if leq[y][x] or (min(x, y), max(x, y)) in incomparable:
                        for u, v in added:
                            leq[u][v] = False
                        return None
                    leq[x][y] = True
                    added.append((x, y))
        return added

    def rec(i: int):
        if i == len(pairs):
            table = _join_table(leq, n)
            if table is not None:
                raw.append(table)
            return
        a, b = pairs[i]
        if leq[a][b] or leq[b][a]:
            rec(i + 1)
            return
        for lo, hi in ((a, b), (b, a)):
            added = try_add(lo, hi)
            if added is not None:
                rec(i + 1)
                for u, v in added:
                    leq[u][v] = False
        incomparable.add((a, b))
        rec(i + 1)
        incomparable.discard((a, b))

    rec(0)
    seen = set()
    out = []
    for table in raw:
        canon = canonical_tables((table,), fix_zero=True)[0][0]
        if canon.rows not in seen:
            seen.add(canon.rows)
            out.append(canon)
    out.sort(key=lambda t: t.rows)
    return out


def zero_fixed_join_endomorphisms(plus: CayleyTable) -> list[tuple[int, ...]]:
    """All self-maps f with f(0) = 0 and f(x+y) = f(x)+f(y), sorted."""
    n = plus.n
    rows = plus.rows
    out = []
    for rest in product(range(n), repeat=n - 1):
        f = (0,) + rest
        ok = True
        for x in range(n):
            fx = rows[f[x]]
            rx = rows[x]
            for y in range(x + 1, n):
                if f[rx[y]] != fx[f[y]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(f)
    return out


# ---------------------------------------------------------------------------
# per-skeleton search context


class _SkeletonContext:
    """Everything the completion search needs about one additive skeleton."""

    def __init__(self, plus: CayleyTable):
        n = plus.n
        rows = plus.rows
        self.n = n
        self.plus = plus
        self.leq = tuple(
            tuple(rows[a][b] == b for b in range(n)) for a in range(n)
        )
        leq = self.leq
        top = 0
        for x in range(1, n):
            top = rows[top][x]
        self.top = top

        below = [frozenset(a for a in range(n) if leq[a][x] and a != x) for x in range(n)]
        irreducible = []
        for x in range(1, n):
            strict = below[x]
            red = any(
                rows[a][b] == x for a in strict for b in strict
            )
            if not red:
                irreducible.append(x)
        # reverse linear extension: elements with larger strict down-sets first
        irreducible.sort(key=lambda x: (len(below[x]), x), reverse=True)
        # vars_[0] is always the row of the top element; if top is itself
        # irreducible it doubles as that branch variable, otherwise the
        # remaining rows must join back to it exactly.
        self.virtual_top = top not in irreducible
        if self.virtual_top:
            vars_ = [top] + irreducible
        else:
            vars_ = [top] + [j for j in irreducible if j != top]
        self.vars = vars_
        self.nvars = len(vars_)
        self.irreducible = irreducible

        E = zero_fixed_join_endomorphisms(plus)
        self.E = E
        index = {f: i for i, f in enumerate(E)}
        self.zero_idx = index[tuple([0] * n)]
        m = len(E)
        self.joinE = [
            [index[tuple(rows[f[p]][g[p]] for p in range(n))] for g in E] for f in E
        ]
        self.leqE_mask = []
        for g in E:
            mask = 0
            for i, f in enumerate(E):
                if all(leq[f[p]][g[p]] for p in range(n)):
                    mask |= 1 << i
            self.leqE_mask.append(mask)
        self.val_eq_mask = [
            [sum(1 << i for i, f in enumerate(E) if f[p] == v) for v in range(n)]
            for p in range(n)
        ]
        self.val_nle_mask = [
            [sum(1 << i for i, f in enumerate(E) if not leq[f[p]][x]) for x in range(n)]
            for p in range(n)
        ]
        self.full_mask = (1 << m) - 1

        pos = {j: d for d, j in enumerate(vars_)}
        self.pos = pos
        # elements whose rows a given irreducible assignment feeds into
        self.elements_geq = {
            j: [x for x in range(n) if leq[j][x]] for j in irreducible
        }
        irr_set = set(irreducible)
        self.irr_above = {
            j: [i for i in irreducible if i != j and leq[j][i]] for j in irreducible
        }
        basis = {
            x: [j for j in irreducible if leq[j][x]] for x in range(n)
        }
        self.last_depth = {
            x: (max(pos[j] for j in basis[x]) if basis[x] else -1) for x in range(n)
        }
        self.determined_at = [[] for _ in range(self.nvars)]
        for x in range(n):
            d = self.last_depth[x]
            if d >= 0:
                self.determined_at[d].append(x)

        constraints: list[tuple[int, int, int, int]] = []
        for x in range(n):
            for y in range(x + 1, n):
                if leq[x][y] or leq[y][x]:
                    continue
                z = rows[x][y]
                for j in irreducible:
                    if leq[j][z] and not leq[j][x] and not leq[j][y]:
                        trigger = max(self.last_depth[x], self.last_depth[y], pos[j])
                        constraints.append((trigger, x, y, pos[j]))
        self.constraints_at = [[] for _ in range(self.nvars)]
        for trigger, x, y, jpos in constraints:
            self.constraints_at[trigger].append((x, y, jpos))

        self.prune_derived_at = [[] for _ in range(self.nvars)]
        for x in range(n):
            if x == 0 or x == top or x in irr_set:
                continue
            d = self.last_depth[x]
            if d >= 0:
                self.prune_derived_at[d].append(x)

        aut = automorphisms(plus)
        self.aut_nontrivial = [
            (p, inverse(p)) for p in aut if p != tuple(range(n))
        ]

        # ----- batch verification data -----
        self.plus_np = np.array(rows, dtype=np.uint8)
        self.plus_flat_idx = np.array(
            [rows[b][c] for b in range(n) for c in range(n)], dtype=np.intp
        )
        self.bgrid = np.repeat(np.arange(n), n)
        self.cgrid = np.tile(np.arange(n), n)
        self.leq_np = np.array(self.leq, dtype=bool)

        parts = []
        for rgs in set_partitions(n):
            k = max(rgs) + 1
            if k == 1 or k == n:
                continue
            blocks: dict[int, list[int]] = {}
            for el, c in enumerate(rgs):
                blocks.setdefault(c, []).append(el)
            rep_pairs = []
            for block in blocks.values():
                rep_pairs.extend((block[0], other) for other in block[1:])
            ok = all(
                rgs[rows[s][u]] == rgs[rows[s][v]]
                for (u, v) in rep_pairs
                for s in range(n)
            )
            if ok:
                parts.append((np.array(rgs, dtype=np.uint8), rep_pairs))
        self.plus_congruence_parts = parts

        closed_subsets = []
        for mask in range(1, 1 << n):
            members = [x for x in range(n) if mask >> x & 1]
            if not 2 <= len(members) < n:
                continue
            if all(mask >> rows[a][b] & 1 for a in members for b in members):
                inset = np.zeros(n, dtype=bool)
                inset[members] = True
                closed_subsets.append((inset, members))
        self.plus_closed_subsets = closed_subsets

    def root_count(self) -> int:
        return len(self.E)


# ---------------------------------------------------------------------------
# batched verification and filtering


def _batch_check_distributive(ctx: _SkeletonContext, tf3: np.ndarray) -> None:
    n = ctx.n
    pf = ctx.plus_np.reshape(-1)
    lhs = tf3[:, :, ctx.plus_flat_idx]
    rhs = pf[tf3[:, :, ctx.bgrid].astype(np.intp) * n + tf3[:, :, ctx.cgrid]]
    if not np.array_equal(lhs, rhs):
        raise AssertionError("left distributivity failed in batch verification")
    cols = tf3.transpose(0, 2, 1)
    lhs = cols[:, :, ctx.plus_flat_idx]
    rhs = pf[cols[:, :, ctx.bgrid].astype(np.intp) * n + cols[:, :, ctx.cgrid]]
    if not np.array_equal(lhs, rhs):
        raise AssertionError("right distributivity failed in batch verification")


def _batch_congruence_simple(ctx: _SkeletonContext, tf: np.ndarray) -> np.ndarray:
    n = ctx.n
    t = tf.shape[0]
    simple = np.ones(t, dtype=bool)
    for cls, rep_pairs in ctx.plus_congruence_parts:
        clst = cls[tf]
        ok = np.ones(t, dtype=bool)
        for u, v in rep_pairs:
            for s in range(n):
                ok &= clst[:, s * n + u] == clst[:, s * n + v]
                ok &= clst[:, u * n + s] == clst[:, v * n + s]
            if not ok.any():
                break
        simple &= ~ok
        if not simple.any():
            break
    return simple


def _batch_k_ideal_simple(ctx: _SkeletonContext, tf3: np.ndarray) -> np.ndarray:
    t = tf3.shape[0]
    ok = np.ones(t, dtype=bool)
    top = ctx.top
    for x in range(ctx.n):
        if x == 0 or x == top:
            continue
        bad = ctx.leq_np[tf3[:, top, x], x] & ctx.leq_np[tf3[:, x, top], x]
        ok &= ~bad
    return ok


def _batch_ideal_simple(ctx: _SkeletonContext, tf3: np.ndarray) -> np.ndarray:
    t = tf3.shape[0]
    has_ideal = np.zeros(t, dtype=bool)
    for inset, members in ctx.plus_closed_subsets:
        cond = np.ones(t, dtype=bool)
        for a in members:
            cond &= inset[tf3[:, :, a]].all(axis=1)
            cond &= inset[tf3[:, a, :]].all(axis=1)
            if not cond.any():
                break
        has_ideal |= cond
    return ~has_ideal


def _batch_filter(ctx: _SkeletonContext, spec: SearchSpec, flat: list[tuple]) -> tuple[int, list[tuple]]:
    """Verify a batch of candidate tables and apply the requested filter.

    Verification is a direct check of the emitted tables, not a replay of
    the branching that produced them; a failure here is a bug and raises.
    Returns the surviving count and, unless counting only, the survivors.
    """
    if not flat:
        return 0, []
    n = ctx.n
    tf = np.array(flat, dtype=np.uint8)
    tf3 = tf.reshape(len(flat), n, n)
    _batch_check_distributive(ctx, tf3)
    if spec.times_commutative and not np.array_equal(tf3, tf3.transpose(0, 2, 1)):
        raise AssertionError("commutativity constraint failed in batch verification")
    if spec.times_associative:
        ar = np.arange(len(flat))
        for a in range(n):
            ta = tf3[:, a, :]
            for b in range(n):
                w = tf3[:, a, b]
                lhs = tf3[ar, w]
                rhs = np.take_along_axis(ta, tf3[:, b, :].astype(np.intp), axis=1)
                if not np.array_equal(lhs, rhs):
                    raise AssertionError("associativity constraint failed in batch verification")
    if spec.filter == FILTER_CONGRUENCE_SIMPLE:
        keep = _batch_congruence_simple(ctx, tf)
    elif spec.filter == FILTER_K_IDEAL_SIMPLE:
        keep = _batch_k_ideal_simple(ctx, tf3)
    elif spec.filter == FILTER_IDEAL_SIMPLE:
        keep = _batch_ideal_simple(ctx, tf3)
    elif spec.filter == FILTER_ALL:
        keep = np.ones(len(flat), dtype=bool)
    else:
        raise ValueError(f"unknown filter {spec.filter!r}")
    if spec.count_only:
        return int(keep.sum()), []
    return int(keep.sum()), [flat[i] for i in np.flatnonzero(keep)]


# ---------------------------------------------------------------------------
# the completion search itself


def _prune_active(spec: SearchSpec) -> bool:
    return spec.prune and spec.filter in (
        FILTER_CONGRUENCE_SIMPLE,
        FILTER_K_IDEAL_SIMPLE,
    )


def _run_unit(ctx: _SkeletonContext, spec: SearchSpec, root_idx: int) -> tuple[int, list[tuple]]:
    """Search the subtree in which the top row equals E[root_idx]."""
    n = ctx.n
    e_tuples = ctx.E
    joine = ctx.joinE
    leq = ctx.leq
    top = ctx.top
    pruning = _prune_active(spec)
    commutative = spec.times_commutative
    associative = spec.times_associative
    nvars = ctx.nvars
    vars_ = ctx.vars
    virtual = ctx.virtual_top

    assign = [-1] * nvars
    row_val = [ctx.zero_idx] * n
    top_row = e_tuples[root_idx]
    det = [0]
    det_depth = [-2] * n
    det_depth[0] = -1

    batch: list[tuple] = []
    survivors: list[tuple] = []
    counts = [0]

    def flush(force: bool = False):
        if batch and (force or len(batch) >= 65536):
            kept, rows = _batch_filter(ctx, spec, batch)
            counts[0] += kept
            survivors.extend(rows)
            batch.clear()

    def assoc_ok(depth: int) -> bool:
        # Re-examine triples that involve rows determined at this depth;
        # a triple is decidable once rows a, b, and a*b are all determined.
        for a in det:
            ra = e_tuples[row_val[a]]
            for b in det:
                w = ra[b]
                if det_depth[w] < -1 or det_depth[w] > depth:
                    continue
                if det_depth[a] < depth and det_depth[b] < depth and det_depth[w] < depth:
                    continue
                rw = e_tuples[row_val[w]]
                rb = e_tuples[row_val[b]]
                for c in range(n):
                    if rw[c] != ra[rb[c]]:
                        return False
        return True

    def checks(depth: int) -> bool:
        if pruning:
            for x in ctx.prune_derived_at[depth]:
                if leq[top_row[x]][x] and leq[e_tuples[row_val[x]][top]][x]:
                    return False
        for x, y, jpos in ctx.constraints_at[depth]:
            target = joine[row_val[x]][row_val[y]]
            if not ctx.leqE_mask[target] >> assign[jpos] & 1:
                return False
        if associative and not assoc_ok(depth):
            return False
        return True

    def emit():
        if row_val[top] != assign[0]:
            return
        rows = tuple(e_tuples[row_val[x]] for x in range(n))
        for p, pinv in ctx.aut_nontrivial:
            smaller = False
            for a in range(n):
                src = rows[pinv[a]]
                ra = rows[a]
                stop = False
                for b in range(n):
                    v = p[src[pinv[b]]]
                    if v != ra[b]:
                        smaller = v < ra[b]
                        stop = True
                        break
                if stop:
                    break
            if smaller:
                return
        batch.append(tuple(v for row in rows for v in row))
        flush()

    def place(depth: int, e_idx: int) -> None:
        j = vars_[depth]
        assign[depth] = e_idx
        trail = []
        newly = []
        if not (virtual and depth == 0):
            e = e_idx
            for x in ctx.elements_geq[j]:
                trail.append((x, row_val[x]))
                row_val[x] = joine[row_val[x]][e]
        for x in ctx.determined_at[depth]:
            det.append(x)
            newly.append(x)
            det_depth[x] = depth
        ok = checks(depth)
        if ok:
            if depth + 1 == nvars:
                emit()
            else:
                descend(depth + 1)
        for x in newly:
            det.pop()
            det_depth[x] = -2
        for x, old in reversed(trail):
            row_val[x] = old
        assign[depth] = -1

    def descend(depth: int) -> None:
        j = vars_[depth]
        mask = ctx.leqE_mask[assign[0]]
        for i in ctx.irr_above[j]:
            mask &= ctx.leqE_mask[assign[ctx.pos[i]]]
        if commutative:
            for d2 in range(1 if virtual else 0, depth):
                i = vars_[d2]
                mask &= ctx.val_eq_mask[i][e_tuples[assign[d2]][j]]
        if pruning and leq[top_row[j]][j]:
            mask &= ctx.val_nle_mask[top][j]
        last = depth + 1 == nvars
        need_top = virtual and last
        cur_top = row_val[top]
        while mask:
            low = mask & -mask
            e_idx = low.bit_length() - 1
            mask ^= low
            if need_top and joine[cur_top][e_idx] != assign[0]:
                continue
            place(depth, e_idx)

    place(0, root_idx)
    flush(force=True)
    return counts[0], survivors


_WORKER_CACHE: dict = {}


def _unit_worker(args):
    skeleton_rows, spec, unit_id, root_idx = args
    ctx = _WORKER_CACHE.get(skeleton_rows)
    if ctx is None:
        ctx = _SkeletonContext(CayleyTable(skeleton_rows))
        _WORKER_CACHE[skeleton_rows] = ctx
    count, survivors = _run_unit(ctx, spec, root_idx)
    return unit_id, count, survivors


def complete_multiplications(skeleton: CayleyTable, spec: SearchSpec, sink) -> int:
    """Run the completion search over one skeleton, feeding every surviving
    multiplication table to sink as a CayleyTable.  Returns the number of
    tables that passed the filter."""
    ctx = _SkeletonContext(skeleton)
    total = 0
    for root_idx in range(ctx.root_count()):
        count, survivors = _run_unit(ctx, spec, root_idx)
        total += count
        for flat in survivors:
            n = ctx.n
            sink(CayleyTable([flat[a * n : (a + 1) * n] for a in range(n)]))
    return total


# ---------------------------------------------------------------------------
# checkpointing


def _read_checkpoint(path: str, fingerprint: str) -> dict[int, int]:
    done: dict[int, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header != f"# ringoids-checkpoint {fingerprint}":
            raise ValueError("checkpoint does not match this search specification")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            unit, count = line.split()
            done[int(unit)] = int(count)
    return done


def enumerate_ringoids(
    spec: SearchSpec,
    jobs: int = 1,
    checkpoint: str | None = None,
    resume: bool = False,
) -> EnumerationResult:
    """Enumerate the family described by spec, up to isomorphism.

    Work is split into units, one per (skeleton, top row) pair, so the
    result does not depend on jobs or on shard boundaries.  A checkpoint
    file records finished unit ids with their counts and can be resumed;
    checkpoints are restricted to counting runs.
    """
    if spec.structure_class == GROUPOID_CLASS:
        return _enumerate_groupoids(spec)
    if spec.structure_class != SEMIRING_CLASS:
        raise ValueError(f"unknown structure class {spec.structure_class!r}")
    if spec.filter not in FILTERS:
        raise ValueError(f"unknown filter {spec.filter!r}")
    if checkpoint and not spec.count_only:
        raise ValueError("checkpointing is supported for counting runs only")
    if spec.order == 1 and spec.filter != FILTER_ALL:
        # one-element structures are trivially simple and never counted
        return EnumerationResult(
            spec=spec,
            count=0,
            ringoids=None if spec.count_only else [],
            tables=None,
            provenance={"order": 1, "filter": spec.filter, "units": 0,
                        "skeletons": 1, "seconds": 0.0},
        )

    start = time.monotonic()
    skeletons = enumerate_additive_skeletons(spec.order)
    contexts = [_SkeletonContext(sk) for sk in skeletons]

    if not spec.count_only:
        projected = sum(ctx.root_count() ** ctx.nvars for ctx in contexts)
        ceiling = int(os.environ.get(WORK_CEILING_ENV, DEFAULT_WORK_CEILING))
        if projected > ceiling:
            raise RuntimeError(
                f"projected branch bound {projected} exceeds ceiling {ceiling}; "
                "re-run counting only or raise the ceiling"
            )

    units = [
        (si, ri)
        for si in range(len(skeletons))
        for ri in range(contexts[si].root_count())
    ]
    if spec.shard is not None:
        lo, hi = spec.shard
        if not 0 <= lo <= hi <= len(units):
            raise ValueError("shard out of range")
        active = list(range(lo, hi))
    else:
        active = list(range(len(units)))

    done: dict[int, int] = {}
    if resume:
        if not checkpoint:
            raise ValueError("resume requires a checkpoint path")
        if os.path.exists(checkpoint):
            done = _read_checkpoint(checkpoint, spec.fingerprint())

    pending = [u for u in active if u not in done]
    ck_handle = None
    if checkpoint:
        mode = "a" if resume and os.path.exists(checkpoint) else "w"
        ck_handle = open(checkpoint, mode, encoding="utf-8")
        if mode == "w":
            ck_handle.write(f"# ringoids-checkpoint {spec.fingerprint()}\n")
            ck_handle.flush()

    per_unit: dict[int, int] = dict(done)
    survivors: list[tuple[int, tuple]] = []

    def record(unit_id: int, count: int, flats: list[tuple]) -> None:
        per_unit[unit_id] = count
        si = units[unit_id][0]
        survivors.extend((si, flat) for flat in flats)
        if ck_handle:
            ck_handle.write(f"{unit_id} {count}\n")
            ck_handle.flush()

    work = [(skeletons[units[u][0]].rows, spec, u, units[u][1]) for u in pending]
    if jobs > 1 and len(work) > 1:
        with get_context("fork").Pool(processes=jobs) as pool:
            for unit_id, count, flats in pool.imap(_unit_worker, work, chunksize=1):
                record(unit_id, count, flats)
    else:
        for args in work:
            unit_id, count, flats = _unit_worker(args)
            record(unit_id, count, flats)
    if ck_handle:
        ck_handle.close()

    total = sum(per_unit[u] for u in active)
    ringoids = None
    if not spec.count_only:
        survivors.sort()
        ringoids = []
        for si, flat in survivors:
            n = spec.order
            times = CayleyTable([flat[a * n : (a + 1) * n] for a in range(n)])
            r = Ringoid(skeletons[si], times)
            _verify_emitted(r, spec)
            ringoids.append(r)
    elapsed = time.monotonic() - start
    return EnumerationResult(
        spec=spec,
        count=total,
        ringoids=ringoids,
        tables=None,
        provenance={
            "order": spec.order,
            "filter": spec.filter,
            "units": len(active),
            "skeletons": len(skeletons),
            "seconds": round(elapsed, 3),
        },
    )


def _verify_emitted(r: Ringoid, spec: SearchSpec) -> None:
    """Independent re-verification of one materialised result."""
    if spec.times_commutative:
        assert r.flags.times_commutative
    if spec.times_associative:
        assert r.flags.times_associative
    assert r.flags.plus_idempotent and r.flags.has_absorbing_zero
    if r.n <= 4:
        if spec.filter == FILTER_CONGRUENCE_SIMPLE:
            assert is_congruence_simple(r)
        elif spec.filter == FILTER_K_IDEAL_SIMPLE:
            assert is_k_ideal_simple(r) and k_ideal_simple_fast(r)
        elif spec.filter == FILTER_IDEAL_SIMPLE:
            assert is_ideal_simple(r)


def _enumerate_groupoids(spec: SearchSpec) -> EnumerationResult:
    """Raw scan over all tables of one operation; small orders only."""
    n = spec.order
    if n > 3:
        raise ValueError("raw groupoid scan is limited to three elements")
    if spec.filter != FILTER_ALL:
        raise ValueError("simplicity filters need two operations")
    start = time.monotonic()
    seen = set()
    out = []
    for cells in product(range(n), repeat=n * n):
        t = CayleyTable([cells[a * n : (a + 1) * n] for a in range(n)])
        if spec.times_commutative and not is_commutative(t):
            continue
        if spec.times_associative and not is_associative(t):
            continue
        canon = canonical_tables((t,))[0][0]
        if canon.rows not in seen:
            seen.add(canon.rows)
            out.append(canon)
    out.sort(key=lambda t: t.rows)
    elapsed = time.monotonic() - start
    return EnumerationResult(
        spec=spec,
        count=len(out),
        ringoids=None,
        tables=None if spec.count_only else out,
        provenance={"order": n, "seconds": round(elapsed, 3)},
    )


# ---------------------------------------------------------------------------
# scans for tables with large symmetry


def _minimal_transitive_groups(n: int) -> list[PermGroup]:
    """Transitive permutation groups sufficient to cover every transitive
    automorphism group at degree n.

    Any transitive group of degree up to five contains the cyclic group of
    a full cycle, except at degree four where the regular Klein group is
    the other minimal case.  This keeps the invariant-table generation
    complete while staying tiny.
    """
    groups: dict[tuple, PermGroup] = {}
    for p in permutations(range(n)):
        cl = PermGroup.from_generators(n, [p])
        if len(cl) == n and cl.is_transitive():
            groups.setdefault(cl.perms, cl)
    if n == 4:
        klein = PermGroup(
            4,
            [
                (0, 1, 2, 3),
                (1, 0, 3, 2),
                (2, 3, 0, 1),
                (3, 2, 1, 0),
            ],
        )
        groups.setdefault(klein.perms, klein)
    return [groups[k] for k in sorted(groups)]


def _stats_screen(t: CayleyTable) -> bool:
    from .tables import element_stats

    stats = [element_stats(t, s) for s in range(t.n)]
    first = stats[0]
    if any(s != first for s in stats):
        return False
    if first.nl != first.ar or first.al != first.nr:
        return False
    if is_commutative(t) and len(set(first.as_tuple())) != 1:
        return False
    return True


def _group_invariant_tables(group: PermGroup, n: int):
    """All tables commuting with every permutation in the group."""
    cells = [(x, y) for x in range(n) for y in range(n)]
    orbit_of: dict[tuple[int, int], int] = {}
    orbits: list[list[tuple[int, int]]] = []
    for cell in cells:
        if cell in orbit_of:
            continue
        idx = len(orbits)
        frontier = [cell]
        members = {cell}
        orbit_of[cell] = idx
        while frontier:
            x, y = frontier.pop()
            for p in group:
                image = (p[x], p[y])
                if image not in members:
                    members.add(image)
                    orbit_of[image] = idx
                    frontier.append(image)
        orbits.append(sorted(members))
    reps = [orbit[0] for orbit in orbits]
    allowed = []
    for rx, ry in reps:
        stab = [p for p in group if p[rx] == rx and p[ry] == ry]
        allowed.append([v for v in range(n) if all(p[v] == v for p in stab)])
    table = [[-1] * n for _ in range(n)]

    def rec(i: int):
        if i == len(reps):
            yield CayleyTable([row[:] for row in table])
            return
        rx, ry = reps[i]
        for v in allowed[i]:
            assigned = []
            ok = True
            frontier = [(rx, ry, v)]
            placed = set()
            while frontier:
                x, y, w = frontier.pop()
                if (x, y) in placed:
                    continue
                placed.add((x, y))
                if table[x][y] == -1:
                    table[x][y] = w
                    assigned.append((x, y))
                elif table[x][y] != w:
                    ok = False
                    break
                for p in group:
                    frontier.append((p[x], p[y], p[w]))
            if ok:
                yield from rec(i + 1)
            for x, y in assigned:
                table[x][y] = -1
        return

    yield from rec(0)


def scan_transitive_groupoids(n: int, require: tuple[str, ...] = ()) -> list[CayleyTable]:
    """All groupoids of order n with transitive automorphism group, up to
    isomorphism.

    Order three and below is a raw scan of every table.  At orders four and
    five, candidates are generated as tables invariant under a small
    covering family of transitive permutation groups, which loses nothing
    because a transitive automorphism group always contains one of them.
    The cheap stats invariants screen candidates before the automorphism
    computation.
    """
    if not 1 <= n <= 5:
        raise ValueError("scan is limited to five elements")
    known = {"quasigroup": is_latin_square, "commutative": is_commutative,
             "idempotent": lambda t: all(t.rows[x][x] == x for x in range(t.n))}
    for name in require:
        if name not in known:
            raise ValueError(f"unknown constraint {name!r}")

    candidates = []
    if n <= 3:
        for cells in product(range(n), repeat=n * n):
            candidates.append(
                CayleyTable([cells[a * n : (a + 1) * n] for a in range(n)])
            )
    else:
        for group in _minimal_transitive_groups(n):
            candidates.extend(_group_invariant_tables(group, n))

    seen = set()
    out = []
    for t in candidates:
        if not _stats_screen(t):
            continue
        if not automorphisms(t).is_transitive():
            continue
        canon = canonical_tables((t,))[0][0]
        if canon.rows in seen:
            continue
        seen.add(canon.rows)
        if all(known[name](canon) for name in require):
            out.append(canon)
    out.sort(key=lambda t: t.rows)
    return out


@dataclass
class ParasemifieldScan:
    order: int
    instances: list[Ringoid]
    with_commutative_semigroup_plus: list[Ringoid]


def scan_parasemifields(n: int) -> ParasemifieldScan:
    """All pairs (plus, times) of order n, up to isomorphism, in which times
    is a quasigroup and every times translation is an automorphism of plus.

    The addition of such a pair has a transitive automorphism group (for a
    single element this is vacuous), so candidate additions come from
    scan_transitive_groupoids.  The report singles out instances whose
    addition is a commutative semigroup; at any finite order above one
    there should be none.
    """
    if not 1 <= n <= 4:
        raise ValueError("scan is limited to four elements")
    instances = []
    for plus in scan_transitive_groupoids(n):
        aut = automorphisms(plus)
        perms = list(aut)
        prefixes: list[set[tuple]] = [set() for _ in range(n + 1)]
        for p in perms:
            for k in range(n + 1):
                prefixes[k].add(p[:k])
        rows: list[tuple] = []
        found: list[tuple[tuple, ...]] = []

        def rec():
            if len(rows) == n:
                found.append(tuple(rows))
                return
            k = len(rows)
            for cand in perms:
                ok = True
                for b in range(n):
                    col = tuple(rows[x][b] for x in range(k)) + (cand[b],)
                    if col not in prefixes[k + 1]:
                        ok = False
                        break
                if ok:
                    rows.append(cand)
                    rec()
                    rows.pop()

        rec()
        seen = set()
        for times_rows in found:
            times = CayleyTable(times_rows)
            best = min(relabel_table(times, p).rows for p in perms)
            if best in seen:
                continue
            seen.add(best)
            r = Ringoid(plus, CayleyTable(best))
            assert r.flags.times_quasigroup
            instances.append(r)
    with_comm_sg = [
        r
        for r in instances
        if r.flags.plus_commutative and r.flags.plus_associative and r.n > 1
    ]
    return ParasemifieldScan(
        order=n, instances=instances, with_commutative_semigroup_plus=with_comm_sg
    )
