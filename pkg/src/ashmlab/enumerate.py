"""Exhaustive generation of small ASMs/ASHMs and ASHL collision search.

This is the package's independent oracle: the generators are pruned
backtrackers whose output is checked (in the test suite) against raw
brute-force filters at tiny orders, and the collision search ties the
depth-sum criterion to ground truth over every colliding pair at n = 4.

Generation strategy:

* ASMs row by row.  A row is any alternating unit line; a partial matrix
  survives iff every column's partial sum is 0 or 1; each column must end
  at sum 1 (these conditions are exactly ASM-ness).
* ASHMs plane by plane over the ASM list, pruning on vertical partial sums
  in {0,1}.  The final plane is forced (it must bring every vertical sum to
  exactly 1), so the search tree is one level shorter than it looks.

Orders are capped because the spaces explode: the caps are configuration
(function argument, or the ASHMLAB_CAP environment variable), not
constants, and n = 5 ASHM enumeration additionally demands an explicit
acknowledgment flag.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .core import AshmlabError, SignMatrix, SignTensor
from .latinlike import AshlMatrix, ashl_of, max_multiplicity
from .tblocks import RangeOverflowError, TBlock, apply_tblocks

DEFAULT_ASM_CAP = 6
DEFAULT_ASHM_CAP = 4


class CapExceededError(AshmlabError):
    pass


def _effective_cap(cap: int | None, default: int) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("ASHMLAB_CAP")
    if env:
        return int(env)
    return default


@lru_cache(maxsize=None)
def _alternating_rows(n: int) -> tuple:
    """All length-n alternating unit lines, lexicographically ordered.

    There are 2^(n-1): any odd-size support admits exactly one valid signing.
    """
    rows: list[tuple] = []

    def extend(prefix: tuple, s: int):
        if len(prefix) == n:
            if s == 1:
                rows.append(prefix)
            return
        for v in (-1, 0, 1):
            if s + v in (0, 1):
                extend(prefix + (v,), s + v)

    extend((), 0)
    return tuple(sorted(rows))


def enumerate_asms(n: int, cap: int | None = None) -> Iterator[SignMatrix]:
    """Yield every n x n ASM exactly once, in a deterministic order."""
    limit = _effective_cap(cap, DEFAULT_ASM_CAP)
    if n > limit:
        raise CapExceededError(f"n={n} exceeds the ASM enumeration cap {limit}")
    if n < 1:
        raise ValueError("order must be positive")
    rows = _alternating_rows(n)
    grid = np.zeros((n, n), dtype=np.int8)
    colsum = np.zeros(n, dtype=np.int64)

    def rec(r: int):
        if r == n:
            if (colsum == 1).all():
                yield SignMatrix(grid.copy())
            return
        remaining = n - r - 1
        for row in rows:
            new = colsum + row
            # each column partial sum stays in {0,1}; a column at 0 must
            # still be able to reach 1
            if ((new < 0) | (new > 1)).any():
                continue
            if remaining == 0 and (new != 1).any():
                continue
            grid[r, :] = row
            colsum[:] = new
            yield from rec(r + 1)
            colsum[:] = new - row
        grid[r, :] = 0

    yield from rec(0)


def _asm_arrays(n: int, cap: int | None) -> np.ndarray:
    return np.array([m.a for m in enumerate_asms(n, cap=cap)], dtype=np.int8)


def enumerate_ashms(
    n: int,
    cap: int | None = None,
    allow_huge: bool = False,
    shard: "tuple[int, int] | None" = None,
) -> Iterator[SignTensor]:
    """Yield every n x n x n ASHM exactly once, plane by plane.

    ``shard=(index, count)`` restricts the search to first planes whose
    position in the ASM list is congruent to ``index`` mod ``count``; the
    union over all shards, ordered by first-plane position, equals the
    unsharded stream.
    """
    limit = _effective_cap(cap, DEFAULT_ASHM_CAP)
    if n >= 5 and not allow_huge:
        raise CapExceededError(
            "n >= 5 ASHM enumeration is a long run; pass allow_huge=True (CLI: --i-know-this-is-huge)"
        )
    if n > limit and not (n == 5 and allow_huge):
        raise CapExceededError(f"n={n} exceeds the ASHM enumeration cap {limit}")
    if n < 1:
        raise ValueError("order must be positive")
    planes = _asm_arrays(n, cap=max(n, DEFAULT_ASM_CAP))
    by_key = {p.tobytes(): idx for idx, p in enumerate(planes)}
    chosen = np.zeros((n, n, n), dtype=np.int8)

    def rec(k: int, vsum: np.ndarray):
        if k == n - 1:
            # the last plane is forced: it must top every vertical up to 1
            last = (1 - vsum).astype(np.int8)
            if last.tobytes() in by_key:
                chosen[:, :, n - 1] = last
                yield SignTensor(chosen.copy())
            return
        ok = ((planes >= -vsum) & (planes <= 1 - vsum)).all(axis=(1, 2))
        for idx in np.nonzero(ok)[0]:
            p = planes[idx]
            chosen[:, :, k] = p
            yield from rec(k + 1, vsum + p)
        return

    first_indices = range(len(planes))
    if shard is not None:
        which, count = shard
        first_indices = range(which, len(planes), count)
    zero = np.zeros((n, n), dtype=np.int64)
    if n == 1:
        yield SignTensor(np.ones((1, 1, 1), dtype=np.int8))
        return
    for idx in first_indices:
        if (planes[idx] < 0).any():
            continue  # a -1 in plane 1 would start some vertical at -1
        chosen[:, :, 0] = planes[idx]
        yield from rec(1, zero + planes[idx])


@dataclass(frozen=True)
class CollisionGroup:
    """All enumerated ASHMs sharing one ASHL (at least two of them)."""

    ashl: AshlMatrix
    members: tuple

    def __len__(self) -> int:
        return len(self.members)


def _ashl_key(l: AshlMatrix) -> str:
    # textual serialization as the grouping key: exact and overflow-proof
    return ";".join(",".join(str(int(v)) for v in row) for row in np.asarray(l))


def find_ashl_collisions(
    n: int,
    cap: int | None = None,
    allow_huge: bool = False,
    shard: "tuple[int, int] | None" = None,
) -> list:
    """Group enumerated ASHMs by ASHL; return the groups of size >= 2.

    Output is deterministically ordered by the serialized ASHL key; members
    keep generation order.
    """
    groups: dict = {}
    for t in enumerate_ashms(n, cap=cap, allow_huge=allow_huge, shard=shard):
        l = ashl_of(t)
        groups.setdefault(_ashl_key(l), []).append(t)
    out = []
    for key in sorted(groups):
        members = groups[key]
        if len(members) >= 2:
            out.append(CollisionGroup(ashl=ashl_of(members[0]), members=tuple(members)))
    return out


def merge_collision_shards(sharded: Sequence) -> list:
    """Deterministic union of per-shard ASHM lists into collision groups.

    Accepts the raw member lists (tensors) from each shard's enumeration;
    regrouping is global, since a colliding pair may straddle shards.
    """
    groups: dict = {}
    for members in sharded:
        for t in members:
            groups.setdefault(_ashl_key(ashl_of(t)), []).append(t)
    out = []
    for key in sorted(groups):
        members = groups[key]
        if len(members) >= 2:
            out.append(CollisionGroup(ashl=ashl_of(members[0]), members=tuple(members)))
    return out


# ---------------------------------------------------------------------------
# Randomized improvement search

def corner_trade_template(n: int) -> list:
    """The five-block corner/centre trade that lifts the odd construction.

    Four shallow corner blocks plus one deep central block of opposite total
    depth; instantiated at order n (sensible for odd n >= 11).
    """
    p = (n + 1) // 2
    return [
        TBlock(2, 1, p - 3, 3, 2, p - 2),
        TBlock(n - 2, n - 1, p - 3, n - 1, n, p - 2),
        TBlock(2, 2, p - 2, n, n - 1, p + 2, sign=-1),
        TBlock(n - 2, 1, p + 2, n - 1, 2, p + 3),
        TBlock(2, n - 1, p + 2, 3, n, p + 3),
    ]


def perturbation_search(a: SignTensor, budget: int, seed: int) -> list:
    """Randomized local search for tensors with more-repetitive ASHLs.

    Moves add depth-balanced block sets to the current tensor: the known
    corner/centre trade template is tried first, then random opposite-depth
    block pairs.  Moves that leave {-1,0,+1} or break ASHM-ness are skipped
    (they consume budget).  Any result whose ASHL max multiplicity beats the
    input's is recorded as (tensor, (value, count)).  Deterministic for a
    fixed seed.
    """
    rng = np.random.default_rng(seed)
    n = a.n
    baseline = max_multiplicity(ashl_of(a))[1]
    current = a
    results: list = []
    best = baseline

    def try_blocks(blocks) -> "SignTensor | None":
        try:
            t, report = apply_tblocks(current, blocks)
        except (RangeOverflowError, IndexError, ValueError):
            return None
        return t if report.valid else None

    for step in range(budget):
        if step == 0 and n >= 11:
            move = corner_trade_template(n)
        else:
            i1, i2 = sorted(rng.choice(np.arange(1, n + 1), size=2, replace=False).tolist())
            j1, j2 = sorted(rng.choice(np.arange(1, n + 1), size=2, replace=False).tolist())
            d = int(rng.integers(1, n))
            k1 = int(rng.integers(1, n - d + 1))
            k4 = int(rng.integers(1, n - d + 1))
            sign = int(rng.choice([-1, 1]))
            move = [
                TBlock(i1, j1, k1, i2, j2, k1 + d, sign),
                TBlock(i1, j1, k4, i2, j2, k4 + d, -sign),
            ]
        t = try_blocks(move)
        if t is None:
            continue
        vc = max_multiplicity(ashl_of(t))
        if vc[1] > best:
            best = vc[1]
            results.append((t, vc))
            current = t
    return results
