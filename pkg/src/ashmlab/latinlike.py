"""The Latin-like square of a sign tensor and Latin-square decomposition.

The Latin-like square (ASHL) of an n x n x n sign tensor A is the n x n
integer matrix

    L(A)[i, j] = sum_k k * A[i, j, k].

For a permutation hypermatrix (planes are mutually orthogonal permutation
matrices) this is an ordinary Latin square, and the map is invertible:
``decompose_latin`` recovers the unique plane sequence.

ASHL matrices are represented as plain int64 numpy arrays.  Entries of a
general combination can be any integer, which is deliberate: difference
objects like L(A) - L(B) are manipulated directly when testing the
depth-sum criterion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import AshmlabError, SignMatrix, SignTensor, ParseError

AshlMatrix = np.ndarray


class NotLatinError(AshmlabError):
    """Raised when a matrix expected to be a Latin square is not one."""


def ashl_of(t: "SignTensor | np.ndarray") -> AshlMatrix:
    """L[i,j] = sum_k k * t[i,j,k].  Works on any sign tensor or int array."""
    a = t.a if isinstance(t, SignTensor) else np.asarray(t)
    n = a.shape[2]
    weights = np.arange(1, n + 1, dtype=np.int64)
    return (a.astype(np.int64) * weights).sum(axis=2)


def is_latin_square(m: AshlMatrix) -> bool:
    """True iff every row and column is a permutation of 1..n."""
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    n = a.shape[0]
    want = frozenset(range(1, n + 1))
    for i in range(n):
        if set(int(v) for v in a[i, :]) != want:
            return False
    for j in range(n):
        if set(int(v) for v in a[:, j]) != want:
            return False
    return True


@dataclass(frozen=True)
class PermutationSequence:
    """Ordered permutation matrices P_1..P_n decomposing a Latin square."""

    perms: tuple

    @property
    def n(self) -> int:
        return len(self.perms)

    def __iter__(self) -> Iterator[SignMatrix]:
        return iter(self.perms)

    def __getitem__(self, k: int) -> SignMatrix:
        """P_k, 1-based."""
        return self.perms[k - 1]

    def stack(self) -> SignTensor:
        """The sign tensor with plane k equal to P_k."""
        return SignTensor.from_planes(self.perms)

    def mutually_orthogonal(self) -> bool:
        """Each cell (i,j) is covered by exactly one P_k."""
        total = sum(p.a.astype(int) for p in self.perms)
        return bool((total == 1).all())


def decompose_latin(m: AshlMatrix) -> PermutationSequence:
    """Split a Latin square into its permutation matrices: P_k[i,j] = 1 iff m[i,j] = k.

    Raises :class:`NotLatinError` naming a violating row or column when the
    input is not a Latin square.
    """
    a = np.asarray(m)
    n = a.shape[0]
    want = frozenset(range(1, n + 1))
    for i in range(n):
        if set(int(v) for v in a[i, :]) != want:
            raise NotLatinError(f"row {i + 1} is not a permutation of 1..{n}: {a[i, :].tolist()}")
    for j in range(n):
        if set(int(v) for v in a[:, j]) != want:
            raise NotLatinError(f"column {j + 1} is not a permutation of 1..{n}: {a[:, j].tolist()}")
    perms = tuple(SignMatrix((a == k).astype(np.int8)) for k in range(1, n + 1))
    return PermutationSequence(perms)


def entry_histogram(m: AshlMatrix) -> dict:
    """Histogram of all n^2 entries, as a plain {value: count} dict."""
    vals, counts = np.unique(np.asarray(m), return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


def max_multiplicity(m: AshlMatrix) -> tuple:
    """(value, count) of the most frequent entry; ties break to the smaller value."""
    hist = entry_histogram(m)
    best_v, best_c = None, -1
    for v in sorted(hist):
        if hist[v] > best_c:
            best_v, best_c = v, hist[v]
    return (best_v, best_c)


def random_latin_square(n: int, rng: np.random.Generator) -> AshlMatrix:
    """A random Latin square: cyclic square, then row/column/symbol shuffles."""
    base = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n + 1
    rows = rng.permutation(n)
    cols = rng.permutation(n)
    syms = rng.permutation(n) + 1
    out = syms[base[rows][:, cols] - 1]
    return out.astype(np.int64)


# ---------------------------------------------------------------------------
# ASHL text form: line 1 is n, then n rows of n integers.

def dumps_ashl_txt(m: AshlMatrix) -> str:
    a = np.asarray(m)
    n = a.shape[0]
    lines = [str(n)]
    for i in range(n):
        lines.append(" ".join(str(int(v)) for v in a[i, :]))
    return "\n".join(lines) + "\n"


def loads_ashl_txt(text: str) -> AshlMatrix:
    toks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for tok in line.split():
            toks.append((tok, lineno))
    if not toks:
        raise ParseError("empty input: expected order n on the first line")
    try:
        n = int(toks[0][0])
    except ValueError:
        raise ParseError(f"line {toks[0][1]}: order {toks[0][0]!r} is not an integer") from None
    body = toks[1:]
    if n <= 0 or len(body) != n * n:
        raise ParseError(f"expected {n * n} entries for n={n}, found {len(body)}")
    out = np.zeros((n, n), dtype=np.int64)
    for idx, (tok, lineno) in enumerate(body):
        try:
            out[idx // n, idx % n] = int(tok)
        except ValueError:
            raise ParseError(f"line {lineno}: {tok!r} is not an integer") from None
    return out
