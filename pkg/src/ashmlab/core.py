"""Sign matrices, sign tensors, line extraction, and alternating-sign validation.

An alternating sign matrix (ASM) is a (0,+1,-1)-matrix in which the non-zero
entries of every row and column alternate in sign, beginning and ending with
+1.  An alternating sign hypermatrix (ASHM) is the n x n x n analogue: every
row line, column line, and vertical line must alternate the same way.

Conventions used throughout the package:

* positions are 1-based in all documentation, I/O, and error messages,
  matching the usual combinatorial notation a_{ijk};
* internally a tensor is stored as a numpy array ``a`` with
  ``a[i-1, j-1, k-1]``, so plane k (the k-th horizontal slice) is
  ``a[:, :, k-1]``;
* a sequence is an *alternating unit line* iff its non-zero entries are
  +1, -1, +1, ..., -1, +1.  Equivalently: all prefix sums lie in {0, 1}
  and the total sum is 1.  Both formulations are implemented and are
  cross-checked in the test suite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np


class AshmlabError(Exception):
    """Base class for errors raised by this package."""


class ParseError(AshmlabError):
    """Malformed ASHM-TXT or JSON input; message carries line/position info."""


def _as_sign_array(entries, shape_len: int) -> np.ndarray:
    a = np.asarray(entries, dtype=np.int8)
    if a.ndim != shape_len:
        raise ValueError(f"expected a {shape_len}-dimensional array, got shape {a.shape}")
    if a.ndim >= 1 and len(set(a.shape)) != 1:
        raise ValueError(f"expected equal dimensions, got shape {a.shape}")
    if a.size == 0:
        raise ValueError("order must be positive")
    if a.min(initial=0) < -1 or a.max(initial=0) > 1:
        bad = np.argwhere((a < -1) | (a > 1))[0]
        raise ValueError(f"entry out of range {{-1,0,1}} at position {tuple(int(x) + 1 for x in bad)}")
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SignMatrix:
    """An n x n matrix over {-1, 0, +1}; a candidate ASM.

    Construction only checks the alphabet; ASM validity is the separate
    predicate :func:`validate_asm`.
    """

    a: np.ndarray

    def __init__(self, entries):
        object.__setattr__(self, "a", _as_sign_array(entries, 2))

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def entry(self, i: int, j: int) -> int:
        """Entry at 1-based position (row i, column j)."""
        return int(self.a[i - 1, j - 1])

    def __eq__(self, other) -> bool:
        return isinstance(other, SignMatrix) and np.array_equal(self.a, other.a)

    def __hash__(self) -> int:
        return hash((self.n, self.a.tobytes()))

    def __repr__(self) -> str:
        return f"SignMatrix(n={self.n})"


@dataclass(frozen=True)
class SignTensor:
    """An n x n x n tensor over {-1, 0, +1}; a candidate ASHM.

    ``plane(k)`` is the k-th horizontal slice (ascending k), itself a
    :class:`SignMatrix`.
    """

    a: np.ndarray

    def __init__(self, entries):
        object.__setattr__(self, "a", _as_sign_array(entries, 3))

    @classmethod
    def from_planes(cls, planes: Sequence) -> "SignTensor":
        """Build from plane matrices listed in ascending k."""
        mats = [p.a if isinstance(p, SignMatrix) else np.asarray(p) for p in planes]
        n = len(mats)
        a = np.zeros((n, n, n), dtype=np.int8)
        for k, mat in enumerate(mats):
            if mat.shape != (n, n):
                raise ValueError(f"plane {k + 1} has shape {mat.shape}, expected {(n, n)}")
            a[:, :, k] = mat
        return cls(a)

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def entry(self, i: int, j: int, k: int) -> int:
        """Entry a_{ijk} (1-based)."""
        return int(self.a[i - 1, j - 1, k - 1])

    def plane(self, k: int) -> SignMatrix:
        """Plane P_k, 1-based."""
        return SignMatrix(self.a[:, :, k - 1])

    def planes(self) -> Iterator[SignMatrix]:
        return (self.plane(k) for k in range(1, self.n + 1))

    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self.a))

    def __eq__(self, other) -> bool:
        return isinstance(other, SignTensor) and np.array_equal(self.a, other.a)

    def __hash__(self) -> int:
        return hash((self.n, self.a.tobytes()))

    def __repr__(self) -> str:
        return f"SignTensor(n={self.n}, nonzeros={self.nonzero_count()})"


#: Integer tensor used for differences and partial sums; entries may leave
#: {-1,0,+1} mid-algorithm, so it is a plain wide-integer numpy array.
IntTensor = np.ndarray


def int_tensor(t: "SignTensor | np.ndarray") -> IntTensor:
    """Widen a sign tensor (or array) to an int64 working copy."""
    a = t.a if isinstance(t, SignTensor) else np.asarray(t)
    return np.array(a, dtype=np.int64)


LINE_KINDS = ("row", "column", "vertical")


@dataclass(frozen=True)
class Line:
    """One line of a tensor: n entries along a free axis, plus its address."""

    entries: tuple
    kind: str
    coordinates: tuple

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def extract_line(t, kind: str, fixed1: int, fixed2: int) -> Line:
    """Extract a row, column, or vertical line from a tensor.

    * ``row`` lines vary i for fixed (j, k) = (fixed1, fixed2);
    * ``column`` lines vary j for fixed (i, k);
    * ``vertical`` lines vary k for fixed (i, j).

    Entries are returned in increasing index order along the free axis.
    """
    a = t.a if isinstance(t, SignTensor) else np.asarray(t)
    n = a.shape[0]
    if kind not in LINE_KINDS:
        raise ValueError(f"unknown line kind {kind!r}")
    for name, v in (("fixed1", fixed1), ("fixed2", fixed2)):
        if not 1 <= v <= n:
            raise IndexError(f"{name}={v} out of range 1..{n}")
    if kind == "row":
        vals = a[:, fixed1 - 1, fixed2 - 1]
    elif kind == "column":
        vals = a[fixed1 - 1, :, fixed2 - 1]
    else:
        vals = a[fixed1 - 1, fixed2 - 1, :]
    return Line(tuple(int(v) for v in vals), kind, (fixed1, fixed2))


def is_alternating_unit_line(line: Iterable[int]) -> bool:
    """True iff the non-zero entries are +1,-1,...,-1,+1 (non-empty).

    Direct formulation: scan the non-zero subsequence and require it to
    start with +1, end with +1, and strictly alternate.
    """
    prev = 0
    seen = False
    for v in line:
        if v == 0:
            continue
        if not seen:
            if v != 1:
                return False
            seen = True
        elif v == prev:
            return False
        prev = v
    return seen and prev == 1


def is_alternating_unit_line_by_prefix_sums(line: Iterable[int]) -> bool:
    """Equivalent formulation: all prefix sums in {0,1} and total sum 1."""
    s = 0
    for v in line:
        s += v
        if s not in (0, 1):
            return False
    return s == 1


def validate_asm(m: "SignMatrix | np.ndarray") -> bool:
    """True iff every row and every column is an alternating unit line."""
    a = m.a if isinstance(m, SignMatrix) else np.asarray(m)
    for i in range(a.shape[0]):
        if not is_alternating_unit_line(a[i, :]):
            return False
    for j in range(a.shape[1]):
        if not is_alternating_unit_line(a[:, j]):
            return False
    return True


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of an ASHM check: overall flag plus every failing line.

    Failures are data, not errors; ``failing_lines`` holds (kind, fixed1,
    fixed2) triples naming each bad line so the CLI can print diagnostics.
    """

    valid: bool
    failing_lines: tuple = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.valid


def validate_ashm(t: SignTensor) -> ValidationReport:
    """Check all 3n^2 lines of a sign tensor for the ASHM property."""
    a = t.a if isinstance(t, SignTensor) else np.asarray(t)
    n = a.shape[0]
    failing = []
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            if not is_alternating_unit_line(a[:, j - 1, k - 1]):
                failing.append(("row", j, k))
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            if not is_alternating_unit_line(a[i - 1, :, k - 1]):
                failing.append(("column", i, k))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if not is_alternating_unit_line(a[i - 1, j - 1, :]):
                failing.append(("vertical", i, j))
    return ValidationReport(valid=not failing, failing_lines=tuple(failing))


# ---------------------------------------------------------------------------
# ASHM-TXT v1 and JSON interchange
#
# Text format: line 1 is n; then n plane blocks in ascending k, each with n
# rows of n space-separated integers in {-1,0,1}; blank line between planes;
# '#' begins a comment line.

def dumps_ashm_txt(t: SignTensor, comment: str | None = None) -> str:
    lines = []
    if comment:
        for c in comment.splitlines():
            lines.append(f"# {c}")
    lines.append(str(t.n))
    for k in range(1, t.n + 1):
        lines.append("")
        for i in range(1, t.n + 1):
            lines.append(" ".join(str(t.entry(i, j, k)) for j in range(1, t.n + 1)))
    return "\n".join(lines) + "\n"


def _tokens_with_positions(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for col, tok in enumerate(line.split()):
            yield tok, lineno, col + 1


def loads_ashm_txt(text: str) -> SignTensor:
    """Parse ASHM-TXT v1; rejects out-of-range entries and bad token counts."""
    toks = list(_tokens_with_positions(text))
    if not toks:
        raise ParseError("empty input: expected order n on the first line")
    tok, lineno, col = toks[0]
    try:
        n = int(tok)
    except ValueError:
        raise ParseError(f"line {lineno}: order {tok!r} is not an integer") from None
    if n <= 0:
        raise ParseError(f"line {lineno}: order must be positive, got {n}")
    need = n * n * n
    body = toks[1:]
    if len(body) != need:
        raise ParseError(f"expected {need} entries for n={n}, found {len(body)}")
    a = np.zeros((n, n, n), dtype=np.int8)
    idx = 0
    for k in range(n):
        for i in range(n):
            for j in range(n):
                tok, lineno, col = body[idx]
                try:
                    v = int(tok)
                except ValueError:
                    raise ParseError(f"line {lineno}, token {col}: {tok!r} is not an integer") from None
                if v not in (-1, 0, 1):
                    raise ParseError(f"line {lineno}, token {col}: entry {v} outside {{-1,0,1}}")
                a[i, j, k] = v
                idx += 1
    return SignTensor(a)


def dumps_ashm_json(t: SignTensor) -> str:
    planes = [[[t.entry(i, j, k) for j in range(1, t.n + 1)] for i in range(1, t.n + 1)] for k in range(1, t.n + 1)]
    return json.dumps({"n": t.n, "planes": planes})


def loads_ashm_json(text: str) -> SignTensor:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    if not isinstance(obj, dict) or "n" not in obj or "planes" not in obj:
        raise ParseError('expected an object {"n": int, "planes": [[[int]]]}')
    n = obj["n"]
    planes = obj["planes"]
    if not isinstance(n, int) or n <= 0:
        raise ParseError(f"bad order {n!r}")
    if len(planes) != n or any(len(p) != n or any(len(r) != n for r in p) for p in planes):
        raise ParseError(f"planes must be an {n}x{n}x{n} nested list")
    a = np.zeros((n, n, n), dtype=np.int8)
    for k, pl in enumerate(planes):
        for i, row in enumerate(pl):
            for j, v in enumerate(row):
                if v not in (-1, 0, 1):
                    raise ParseError(f"plane {k + 1} row {i + 1} col {j + 1}: entry {v} outside {{-1,0,1}}")
                a[i, j, k] = v
    return SignTensor(a)
