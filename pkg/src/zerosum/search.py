"""Depth-first enumeration of the longest sequences lacking a zero-sum pattern.

The search walks multisets in nondecreasing element order, extending a prefix
only while it still lacks the forbidden pattern.  Lacking is hereditary under
taking subsequences, so the visited tree is exactly the downset of lacking
sequences and the deepest node gives the constant (max length + 1).

Two optional reductions shrink the tree without changing any result:

* automorphism pruning keeps only prefixes that are minimal in their orbit
  (sorted-tuple order); minimal multisets have minimal prefixes, so every
  orbit of maximal sequences keeps its representative;
* translation normalization, sound only for the criteria that forbid
  zero-sums of lengths divisible by exp(G) (translating a length-L
  subsequence changes its sum by L*g = 0 when exp | L), forces the first
  chosen element to be 0 since every nonempty sequence has a translate
  containing 0.

Whenever a reduction is on, the collected maximal set is re-expanded over the
orbit before reporting, so all option combinations return identical results.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Callable, Optional

from ._bits import apply_index_permutation, bit_tables, shift_mask, shift_permutations
from .criteria import Criterion
from .groups import GroupSpec, automorphisms, element_permutation
from .sequences import Sequence

DEFAULT_NODE_BUDGET = 2_000_000_000
AUT_PRUNING_MAX = 1000
_TASK_DEPTH = 2
_PROGRESS_MASK = (1 << 18) - 1


@dataclass(frozen=True)
class SearchOptions:
    """Tuning knobs.  None of them may change computed results, only cost.

    aut_pruning / shift_normalize default to automatic choices; an explicit
    True/False forces them.  node_budget None falls back to the
    ZEROSUM_BUDGET environment variable, then to DEFAULT_NODE_BUDGET; the
    budget caps visited nodes per search task.
    """

    collect_all: bool = False
    aut_pruning: Optional[bool] = None
    shift_normalize: Optional[bool] = None
    workers: int = 1
    node_budget: Optional[int] = None
    progress: Optional[Callable[[int, int], None]] = None


@dataclass
class SearchOutcome:
    max_length: int
    sequences: list[tuple[int, ...]]  # every maximal multiset, as counts, sorted
    nodes: int
    complete: bool


def resolve_budget(explicit: Optional[int]) -> int:
    if explicit is not None:
        if explicit < 0:
            raise ValueError("node budget must be >= 0")
        return explicit
    env = os.environ.get("ZEROSUM_BUDGET")
    if env:
        return int(env)
    return DEFAULT_NODE_BUDGET


def _stepper(group: GroupSpec, criterion: Criterion):
    """Per-criterion incremental state.

    A state is a tuple of bitmask rows whose first entry is the "blocked"
    set: appending e creates a forbidden zero-sum iff -e lies in it.  The
    remaining entries carry what is needed to maintain that set: reachable
    sums by subsequence length < exp for SHORT/EXACT_EXP, by length mod exp
    (nonempty) for EXP_MULTIPLE, by any length for ANY.
    """
    tables = bit_tables(group)
    parts = tables.parts
    exp = group.exponent

    if criterion is Criterion.ANY:

        def push(state, e):
            x = state[0]
            return (x | shift_mask(x, parts[e]),)

        return (1,), push

    if criterion in (Criterion.SHORT, Criterion.EXACT_EXP):
        short = criterion is Criterion.SHORT

        def push(state, e):
            rows = list(state[1:])
            pe = parts[e]
            for l in range(exp - 1, 0, -1):
                x = rows[l - 1]
                if x:
                    rows[l] |= shift_mask(x, pe)
            if short:
                blocked = 0
                for x in rows:
                    blocked |= x
            else:
                blocked = rows[exp - 1]
            return (blocked, *rows)

        rows0 = (1,) + (0,) * (exp - 1)
        return ((1 if short else rows0[exp - 1]), *rows0), push

    def push(state, e):
        mod = state[1:]
        rows = list(mod)
        pe = parts[e]
        for r in range(exp):
            x = mod[r]
            if x:
                rows[(r + 1) % exp] |= shift_mask(x, pe)
        rows[1 % exp] |= 1 << e
        blocked = rows[exp - 1] if exp > 1 else (rows[0] | 1)
        return (blocked, *rows)

    return ((0 if exp > 1 else 1,) + (0,) * exp), push


def _is_orbit_minimal(counts: list[int], perms_inv) -> bool:
    # Image counts under alpha are counts[pinv[j]] at index j.  In the
    # sorted-tuple order a multiset is smaller when the first differing
    # index carries a LARGER count, so any such image disqualifies counts.
    for pinv in perms_inv:
        for j, pj in enumerate(pinv):
            cj = counts[j]
            ci = counts[pj]
            if ci != cj:
                if ci > cj:
                    return False
                break
    return True


class _BudgetExhausted(Exception):
    pass


class _Ctx:
    __slots__ = (
        "size", "neg", "push", "caps", "perms", "budget", "nodes",
        "best", "best_list", "cap", "progress", "complete",
    )

    def __init__(self, size, neg, push, caps, perms, budget, cap, progress):
        self.size = size
        self.neg = neg
        self.push = push
        self.caps = caps
        self.perms = perms
        self.budget = budget
        self.cap = cap
        self.progress = progress
        self.nodes = 0
        self.best = -1
        self.best_list: list[tuple[int, ...]] = []
        self.complete = True


def _dfs(ctx: _Ctx, counts: list[int], state, start: int, length: int, limit, frontier) -> None:
    if frontier is not None and length == limit:
        frontier.append((tuple(counts), state, start))
        return
    ctx.nodes += 1
    if ctx.nodes > ctx.budget:
        ctx.complete = False
        raise _BudgetExhausted
    if ctx.progress is not None and not (ctx.nodes & _PROGRESS_MASK):
        ctx.progress(ctx.nodes, length)
    if length >= ctx.best:
        if length > ctx.best:
            if length > ctx.cap:
                raise RuntimeError(
                    f"search depth {length} exceeded the safety cap {ctx.cap}: "
                    "this indicates an implementation bug"
                )
            ctx.best = length
            ctx.best_list = [tuple(counts)]
        else:
            ctx.best_list.append(tuple(counts))
    blocked = state[0]
    neg = ctx.neg
    caps = ctx.caps
    perms = ctx.perms
    push = ctx.push
    for e in range(start, ctx.size):
        if (blocked >> neg[e]) & 1:
            continue
        if caps is not None and counts[e] >= caps[e]:
            continue
        counts[e] += 1
        if perms is not None and not _is_orbit_minimal(counts, perms):
            counts[e] -= 1
            continue
        _dfs(ctx, counts, push(state, e), e, length + 1, limit, frontier)
        counts[e] -= 1


def _aut_perms_inv(group: GroupSpec):
    perms = []
    for aut in automorphisms(group):
        p = element_permutation(aut)
        inv = [0] * len(p)
        for i, pi in enumerate(p):
            inv[pi] = i
        t = tuple(inv)
        if t != tuple(range(len(p))):
            perms.append(t)
    return tuple(perms)


def _run_seed(group, criterion, seed, prune, budget, cap):
    counts0, state, start = seed
    tables = bit_tables(group)
    _, push = _stepper(group, criterion)
    perms = _aut_perms_inv(group) if prune else None
    ctx = _Ctx(tables.size, tables.neg, push, None, perms, budget, cap, None)
    try:
        _dfs(ctx, list(counts0), state, start, _TASK_DEPTH, None, None)
    except _BudgetExhausted:
        pass
    return ctx.best, ctx.best_list, ctx.nodes, ctx.complete


def _seed_entry(args):
    return _run_seed(*args)


def longest_lacking_search(
    group: GroupSpec,
    criterion: Criterion,
    options: Optional[SearchOptions] = None,
    depth_cap: Optional[int] = None,
) -> SearchOutcome:
    """Exhaust the downset of criterion-lacking multisets over the group.

    Returns the maximum length together with every maximal multiset (the
    full set regardless of reductions; see the module docstring).
    """
    opts = options or SearchOptions()
    if opts.workers < 1:
        raise ValueError("workers must be >= 1")
    budget = resolve_budget(opts.node_budget)
    cap = depth_cap if depth_cap is not None else (1 << 30)

    shift_invariant = criterion in (Criterion.EXACT_EXP, Criterion.EXP_MULTIPLE)
    shiftn = opts.shift_normalize if opts.shift_normalize is not None else shift_invariant
    if shiftn and not shift_invariant:
        raise ValueError("translation normalization is only sound for exp-length criteria")

    if opts.aut_pruning is None:
        try:
            prune = len(automorphisms(group)) <= AUT_PRUNING_MAX
        except ValueError:
            prune = False
    else:
        prune = opts.aut_pruning
    perms = _aut_perms_inv(group) if prune else None

    tables = bit_tables(group)
    state0, push = _stepper(group, criterion)
    ctx = _Ctx(tables.size, tables.neg, push, None, perms, budget, cap, opts.progress)

    # Shallow walk: record the root and depth-1 nodes, seed tasks at depth 2.
    frontier: list = []
    counts = [0] * tables.size
    ctx.nodes += 1
    ctx.best = 0
    ctx.best_list = [tuple(counts)]
    root_end = 1 if shiftn else tables.size
    try:
        for e in range(root_end):
            if (state0[0] >> tables.neg[e]) & 1:
                continue
            counts[e] = 1
            if perms is not None and not _is_orbit_minimal(counts, perms):
                counts[e] = 0
                continue
            _dfs(ctx, counts, push(state0, e), e, 1, _TASK_DEPTH, frontier)
            counts[e] = 0
    except _BudgetExhausted:
        pass

    best, best_list, nodes, complete = ctx.best, ctx.best_list, ctx.nodes, ctx.complete
    args = [(group, criterion, seed, prune, budget, cap) for seed in frontier]
    if opts.workers > 1 and len(args) > 1:
        with get_context("fork").Pool(opts.workers) as pool:
            results = pool.map(_seed_entry, args, chunksize=max(1, len(args) // (opts.workers * 4)))
    else:
        results = [_seed_entry(a) for a in args]

    for b, bl, nn, comp in results:
        nodes += nn
        complete = complete and comp
        if b > best:
            best = b
            best_list = list(bl)
        elif b == best:
            best_list.extend(bl)

    found = set(best_list)
    if prune:
        aut_perms = [element_permutation(a) for a in automorphisms(group)]
        found = {apply_index_permutation(c, p) for c in found for p in aut_perms}
    if shiftn:
        found = {apply_index_permutation(c, p) for c in found for p in shift_permutations(group)}
    return SearchOutcome(best, sorted(found), nodes, complete)


def exists_lacking_subsequence(seq: Sequence, criterion: Criterion, target_length: int) -> bool:
    """Does seq have a criterion-lacking subsequence of the given length?

    (Lacking is hereditary, so a sequence of length >= target exists iff one
    of exactly target does.)
    """
    if target_length <= 0:
        return True
    if target_length > len(seq):
        return False
    group = seq.group
    tables = bit_tables(group)
    state0, push = _stepper(group, criterion)
    caps = seq.counts
    size = tables.size
    neg = tables.neg
    # suffix_caps[e]: how many terms with index >= e remain available
    suffix = [0] * (size + 1)
    for e in range(size - 1, -1, -1):
        suffix[e] = suffix[e + 1] + caps[e]
    used = [0] * size

    def rec(state, start: int, length: int) -> bool:
        if length == target_length:
            return True
        if length + suffix[start] - used[start] < target_length:
            return False
        blocked = state[0]
        for e in range(start, size):
            if used[e] >= caps[e]:
                continue
            if (blocked >> neg[e]) & 1:
                continue
            used[e] += 1
            if rec(push(state, e), e, length + 1):
                return True
            used[e] -= 1
        return False

    return rec(state0, 0, 0)
