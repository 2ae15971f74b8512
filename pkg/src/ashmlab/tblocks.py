"""T-block algebra: the atomic differences between equal-order ASHMs.

A T-block T_{i1,j1,k1:i2,j2,k2} (i1<i2, j1<j2, k1<k2) is the integer tensor
with +1 at (i1,j1,k1), (i2,j2,k1), (i2,j1,k2), (i1,j2,k2) and -1 at
(i2,j1,k1), (i1,j2,k1), (i1,j1,k2), (i2,j2,k2): the eight corners of a
combinatorial box, signed so every row, column, and vertical line it touches
sums to zero.  Its *depth* is k2 - k1, negated for the negated block.

This module implements:

* ``decompose_difference`` -- the greedy plane-by-plane algorithm expressing
  A - B as a sum of T-blocks (always possible for ASHMs of equal order);
* ``decompose_paired``    -- the refinement producing pairs of opposite-depth
  blocks on shared vertical lines, which exists exactly when L(A) = L(B);
* ``same_ashl_certificate`` -- the depth-sum criterion: L(A) = L(B) iff every
  vertical line's touching blocks have depths summing to zero.

Intermediate difference tensors can transiently hold entries outside
{-1,0,+1}; they are kept in wide integers with an |entry| <= n sanity rail.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import AshmlabError, IntTensor, SignTensor, ValidationReport, int_tensor, validate_ashm
from .latinlike import ashl_of


class RangeOverflowError(AshmlabError):
    """Adding T-blocks pushed an entry outside {-1,0,+1}."""


class NotSameOrderError(AshmlabError):
    pass


class PreconditionFailedError(AshmlabError):
    pass


class DecompositionError(AshmlabError):
    """Internal failure: corrupt input (non-zero line sums) or fuse blown."""


@dataclass(frozen=True, order=True)
class TBlock:
    """A signed T-block in canonical coordinates (i1<i2, j1<j2, k1<k2)."""

    i1: int
    j1: int
    k1: int
    i2: int
    j2: int
    k2: int
    sign: int = 1

    def __post_init__(self):
        if not (self.i1 < self.i2 and self.j1 < self.j2 and self.k1 < self.k2):
            raise ValueError(f"T-block coordinates must be strictly ordered, got {self}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    def verticals(self) -> tuple:
        """The four vertical lines (i,j) carrying this block's entries."""
        return ((self.i1, self.j1), (self.i1, self.j2), (self.i2, self.j1), (self.i2, self.j2))

    def negated(self) -> "TBlock":
        return TBlock(self.i1, self.j1, self.k1, self.i2, self.j2, self.k2, -self.sign)

    def __str__(self) -> str:
        s = "-" if self.sign < 0 else ""
        return f"{s}T {self.i1},{self.j1},{self.k1}:{self.i2},{self.j2},{self.k2}"


_TBLOCK_RE = re.compile(
    r"^\s*(-?)\s*T\s+(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*:\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*$"
)


def parse_tblock(text: str) -> TBlock:
    """Parse the text form ``[-]T i1,j1,k1:i2,j2,k2``."""
    m = _TBLOCK_RE.match(text)
    if not m:
        raise AshmlabError(f"cannot parse T-block {text!r}")
    sign = -1 if m.group(1) == "-" else 1
    i1, j1, k1, i2, j2, k2 = (int(g) for g in m.groups()[1:])
    return TBlock(i1, j1, k1, i2, j2, k2, sign)


def depth(t: TBlock) -> int:
    """d(T) = k2 - k1, or k1 - k2 for the negated block."""
    return t.sign * (t.k2 - t.k1)


def materialize(t: TBlock, n: int) -> IntTensor:
    """The block's eight signed entries placed in an n x n x n integer tensor."""
    for name, v in (("i2", t.i2), ("j2", t.j2), ("k2", t.k2)):
        if v > n:
            raise IndexError(f"{name}={v} exceeds order {n}")
    out = np.zeros((n, n, n), dtype=np.int64)
    for (i, j, k) in ((t.i1, t.j1, t.k1), (t.i2, t.j2, t.k1), (t.i2, t.j1, t.k2), (t.i1, t.j2, t.k2)):
        out[i - 1, j - 1, k - 1] += t.sign
    for (i, j, k) in ((t.i2, t.j1, t.k1), (t.i1, t.j2, t.k1), (t.i1, t.j1, t.k2), (t.i2, t.j2, t.k2)):
        out[i - 1, j - 1, k - 1] -= t.sign
    return out


def sum_tblocks(blocks: Iterable[TBlock], n: int) -> IntTensor:
    total = np.zeros((n, n, n), dtype=np.int64)
    for b in blocks:
        total += materialize(b, n)
    return total


def apply_tblocks(a: SignTensor, blocks: Sequence[TBlock]) -> tuple:
    """Return (a + sum of blocks, its validation report).

    Raises :class:`RangeOverflowError` with the first offending coordinate if
    any resulting entry leaves {-1,0,+1}.
    """
    total = int_tensor(a) + sum_tblocks(blocks, a.n)
    if total.min() < -1 or total.max() > 1:
        bad = np.argwhere((total < -1) | (total > 1))[0]
        i, j, k = (int(x) + 1 for x in bad)
        raise RangeOverflowError(f"entry at ({i},{j},{k}) becomes {int(total[bad[0], bad[1], bad[2]])}")
    result = SignTensor(total.astype(np.int8))
    return result, validate_ashm(result)


def _normalized_block(i1: int, j1: int, k1: int, i2: int, j2: int, k2: int) -> TBlock:
    """Canonical block for a step that found the positive at (i1,j1,k1).

    The greedy step locates negatives at (i2,j1,k1), (i1,j2,k1), (i1,j1,k2)
    where i2/j2 may lie on either side of i1/j1; the orientation folds into
    the sign so that the materialized block has +1 at the chosen positive and
    -1 at the three chosen negatives.
    """
    sign = 1 if (i1 < i2) == (j1 < j2) else -1
    blk = TBlock(min(i1, i2), min(j1, j2), k1, max(i1, i2), max(j1, j2), k2, sign)
    mat = materialize(blk, max(i1, i2, j1, j2, k2))
    assert mat[i1 - 1, j1 - 1, k1 - 1] == 1
    assert mat[i2 - 1, j1 - 1, k1 - 1] == -1
    assert mat[i1 - 1, j2 - 1, k1 - 1] == -1
    assert mat[i1 - 1, j1 - 1, k2 - 1] == -1
    return blk


def _require_same_order(a: SignTensor, b: SignTensor):
    if a.n != b.n:
        raise NotSameOrderError(f"orders differ: {a.n} vs {b.n}")


def _lowest_nonzero_plane(d: IntTensor) -> int:
    """1-based index of the lowest plane with a non-zero entry, or 0."""
    for k in range(d.shape[2]):
        if d[:, :, k].any():
            return k + 1
    return 0


def _first_positive(plane: np.ndarray) -> tuple:
    pos = np.argwhere(plane > 0)
    if len(pos) == 0:
        raise DecompositionError("plane has non-zero entries but no positive one (corrupt input)")
    i, j = min((int(r) + 1, int(c) + 1) for r, c in pos)
    return i, j


def _greedy_step_coords(d: IntTensor, k1: int) -> tuple:
    """Locate the positive entry and its three negatives for one greedy step."""
    n = d.shape[0]
    plane = d[:, :, k1 - 1]
    i1, j1 = _first_positive(plane)
    i2 = next((i for i in range(1, n + 1) if d[i - 1, j1 - 1, k1 - 1] < 0), None)
    j2 = next((j for j in range(1, n + 1) if d[i1 - 1, j - 1, k1 - 1] < 0), None)
    k2 = next((k for k in range(k1 + 1, n + 1) if d[i1 - 1, j1 - 1, k - 1] < 0), None)
    if i2 is None or j2 is None or k2 is None:
        raise DecompositionError(
            f"no negative partner for positive entry at ({i1},{j1},{k1}); input lines do not sum to zero"
        )
    return i1, j1, i2, j2, k2


def decompose_difference(a: SignTensor, b: SignTensor) -> list:
    """Express A - B exactly as a sum of T-blocks.

    Greedy algorithm: take the lowest plane holding non-zero entries, its
    lexicographically first positive entry, the nearest negatives in its row
    line, column line, and vertical line (above), subtract the induced
    block, repeat.  Each step drops the plane's absolute-entry sum by at
    least 2, so the loop terminates; an n^4 fuse guards against corrupt
    input.
    """
    _require_same_order(a, b)
    n = a.n
    d = int_tensor(a) - int_tensor(b)
    blocks: list[TBlock] = []
    fuse = n**4
    while True:
        k1 = _lowest_nonzero_plane(d)
        if k1 == 0:
            return blocks
        if fuse <= 0:
            raise DecompositionError(f"fuse blown after {n**4} steps; decomposition did not terminate")
        fuse -= 1
        i1, j1, i2, j2, k2 = _greedy_step_coords(d, k1)
        blk = _normalized_block(i1, j1, k1, i2, j2, k2)
        d -= materialize(blk, n)
        if abs(d).max() > n:
            raise DecompositionError("difference entries exceeded the |entry| <= n sanity bound")
        blocks.append(blk)


DepthLedger = dict


def depth_ledger(blocks: Iterable[TBlock]) -> DepthLedger:
    """Map each touched vertical line (i,j) to the depths of blocks through it."""
    ledger: dict = {}
    for b in blocks:
        for v in b.verticals():
            ledger.setdefault(v, []).append(depth(b))
    return ledger


def signed_depth_ledger(blocks: Iterable[TBlock]) -> DepthLedger:
    """Depths counted with corner orientation: the ledger whose line sums are exact.

    A block meets each of its four vertical lines at one corner of its box.
    At the (i1,j1)/(i2,j2) corners its entries are +1 low, -1 high, so it
    contributes k1 - k2 = -d(T) to that line's k-weighted sum; at the other
    two corners it contributes +d(T).  With these signs,

        sum of ledger[(i,j)]  ==  sum_k k * (sum of blocks)[i,j,k]

    for every vertical line and *any* block list, which is the identity the
    equal-ASHL criterion rests on.  (The raw :func:`depth_ledger` keeps the
    unsigned depths; its sums coincide with these whenever all blocks meet
    the line at same-orientation corners, as in the worked examples.)
    """
    ledger: dict = {}
    for b in blocks:
        d = depth(b)
        for v, sgn in ((b.i1, b.j1), -1), ((b.i2, b.j2), -1), ((b.i1, b.j2), +1), ((b.i2, b.j1), +1):
            ledger.setdefault(v, []).append(sgn * d)
    return ledger


@dataclass(frozen=True)
class Certificate:
    """Joint result of the direct ASHL comparison and the depth-sum criterion.

    ``depth_sums_all_zero`` is computed from the orientation-signed ledger,
    whose per-line sums equal the k-weighted vertical sums of A - B exactly;
    the raw depth multiset is kept alongside for display.  The two booleans
    must agree (that is the theorem); ``theorem_consistent`` flags any
    disagreement so it surfaces as a counterexample artifact instead of
    being silently dropped.
    """

    equal_ashl: bool
    depth_sums_all_zero: bool
    blocks: tuple
    ledger: DepthLedger = field(repr=False)
    signed_ledger: DepthLedger = field(repr=False)

    @property
    def theorem_consistent(self) -> bool:
        return self.equal_ashl == self.depth_sums_all_zero

    def depth_sums(self) -> dict:
        return {v: sum(ds) for v, ds in self.signed_ledger.items()}


def same_ashl_certificate(a: SignTensor, b: SignTensor) -> Certificate:
    """Decompose A - B and report both sides of the depth-sum criterion."""
    _require_same_order(a, b)
    blocks = decompose_difference(a, b)
    signed = signed_depth_ledger(blocks)
    all_zero = all(sum(ds) == 0 for ds in signed.values())
    equal = bool(np.array_equal(ashl_of(a), ashl_of(b)))
    return Certificate(
        equal_ashl=equal,
        depth_sums_all_zero=all_zero,
        blocks=tuple(blocks),
        ledger=depth_ledger(blocks),
        signed_ledger=signed,
    )


def decompose_paired(a: SignTensor, b: SignTensor) -> list:
    """Express A - B as pairs of opposite-depth blocks on shared vertical lines.

    Requires L(A) = L(B); checked up front rather than trusted, because the
    step that picks the balancing positive entry k3 relies on it.  Each
    emitted pair is (T at k1..k2, -T at k4..k3) on the same (i,j) box with
    k4 = k3 - (k2 - k1), so the depths cancel and the four vertical lines
    coincide.  The flattened pairs sum exactly to A - B.
    """
    _require_same_order(a, b)
    if not np.array_equal(ashl_of(a), ashl_of(b)):
        raise PreconditionFailedError("inputs have different ASHLs; paired decomposition requires L(A) = L(B)")
    n = a.n
    d = int_tensor(a) - int_tensor(b)
    pairs: list[tuple] = []
    fuse = n**4
    while True:
        k1 = _lowest_nonzero_plane(d)
        if k1 == 0:
            return pairs
        if fuse <= 0:
            raise DecompositionError(f"fuse blown after {n**4} steps; paired decomposition did not terminate")
        fuse -= 1
        i1, j1, i2, j2, k2 = _greedy_step_coords(d, k1)
        vert = d[i1 - 1, j1 - 1, :]
        k3 = max((k for k in range(1, n + 1) if vert[k - 1] > 0 and k > k1), default=None)
        if k3 is None:
            raise DecompositionError(
                f"no balancing positive above plane {k1} in vertical ({i1},{j1}); ASHLs cannot be equal"
            )
        k4 = k3 - (k2 - k1)
        if not k1 < k4:
            raise DecompositionError(f"paired step produced k4={k4} <= k1={k1} (corrupt input)")
        first = _normalized_block(i1, j1, k1, i2, j2, k2)
        if k4 == k1 and k3 == k2:
            # degenerate: the balancing block would cancel the first outright
            raise DecompositionError("paired step degenerated to a zero pair")
        second = TBlock(first.i1, first.j1, k4, first.i2, first.j2, k3, -first.sign)
        d -= materialize(first, n)
        d -= materialize(second, n)
        if abs(d).max() > n:
            raise DecompositionError("difference entries exceeded the |entry| <= n sanity bound")
        pairs.append((first, second))
