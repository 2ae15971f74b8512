"""Diamond ASMs, the many-equal-entries ASHM construction, and worked fixtures.

The central construction produces, for n >= 7, an n x n x n ASHM whose
Latin-like square repeats the value p = floor((n+1)/2):

    (n^2 + 4n - 19) / 2  times for odd n,
    (n^2 + 4n - 24) / 2  times for even n

(see NOTE below on the even count).  The layout: plane p holds the full
diamond ASM; planes p-k and p+k share a centrally nested diamond of order
n - 2k, each smaller diamond's +1s sitting on the -1s of the next larger
one; the remaining entries are corner diagonals in the low planes, mirrored
vertically (i -> n+1-i) into the high planes; for even n the top plane is a
pair of anti-diagonals.

NOTE on even n: the source construction's own tally for even orders works
out to (n^2+4n-24)/2, two less than the headline (n^2+4n-20)/2 figure; the
two cannot be reconciled (see the package README).  This module implements
the construction as specified; the acceptance suite encodes the headline
figure and documents the discrepancy.

Fixtures are shipped as ASHM-TXT data files with SHA-256 checksums so any
transcription damage surfaces as a data diff, not a silent wrong answer.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .core import AshmlabError, SignMatrix, SignTensor, loads_ashm_txt


class UnknownFixtureError(AshmlabError):
    pass


DIAMOND_VARIANTS = ("canonical", "flipped")


@dataclass(frozen=True)
class ConstructionParams:
    """The two half-order parameters the construction is phrased in."""

    n: int

    @property
    def p(self) -> int:
        return (self.n + 1) // 2

    @property
    def m(self) -> int:
        return (self.n + 2) // 2


def _nested_diamond(n: int, k: int, mirrored: bool = False) -> np.ndarray:
    """Diamond ASM of order n-2k embedded centrally in an n x n array.

    For odd n the diamonds are the unique centered ones.  For even n the two
    central rows break the symmetry: the default orientation centres the top
    half on column n/2+1 (the chain used by the tensor construction);
    ``mirrored`` gives the left-right reflection.
    """
    d = np.zeros((n, n), dtype=np.int8)
    if n % 2 == 1:
        c = (n + 1) // 2
        r = (n - 2 * k - 1) // 2
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                dist = abs(i - c) + abs(j - c)
                if dist <= r:
                    d[i - 1, j - 1] = (-1) ** (r - dist)
    else:
        p, m = n // 2, n // 2 + 1
        top_c, bot_c = (m, p) if not mirrored else (p, m)
        for i in range(k + 1, p + 1):
            half = i - k - 1
            for j in range(top_c - half, top_c + half + 1):
                d[i - 1, j - 1] = (-1) ** (half - abs(j - top_c))
        for i in range(m, n - k + 1):
            half = n - k - i
            for j in range(bot_c - half, bot_c + half + 1):
                d[i - 1, j - 1] = (-1) ** (half - abs(j - bot_c))
    return d


def diamond_asm(n: int, variant: str = "canonical") -> SignMatrix:
    """The diamond ASM D_n: the ASM of order n with the most non-zero entries.

    Odd n has a unique diamond and only the canonical variant.  Even n has
    two: ``canonical`` carries its +1 of row 1 in column n/2, ``flipped`` in
    column n/2+1.
    """
    if n < 1:
        raise ValueError("order must be positive")
    if variant not in DIAMOND_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "flipped" and n % 2 == 1:
        raise ValueError("odd orders have a unique diamond ASM; no flipped variant")
    if n % 2 == 1:
        return SignMatrix(_nested_diamond(n, 0))
    # even: the unmirrored chain orientation has row 1 centred on n/2+1,
    # which is the 'flipped' labelling
    return SignMatrix(_nested_diamond(n, 0, mirrored=(variant == "canonical")))


def _diag(extras: np.ndarray, i1: int, j1: int, i2: int, j2: int, sign: int):
    """Add ``sign`` along the lattice diagonal from (i1,j1) to (i2,j2)."""
    steps = i2 - i1
    dj = 1 if j2 >= j1 else -1
    if abs(j2 - j1) != steps:
        raise ValueError(f"({i1},{j1})..({i2},{j2}) is not a diagonal")
    for s in range(steps + 1):
        extras[i1 + s - 1, j1 + s * dj - 1] += sign


def max_entry_ashm(n: int) -> SignTensor:
    """The ASHM whose Latin-like square repeats p = floor((n+1)/2) maximally.

    Defined for n >= 7; the corner diagonals degenerate below that.
    """
    if n < 7:
        raise ValueError(f"construction requires n >= 7, got {n}")
    p, m = (n + 1) // 2, (n + 2) // 2
    t = np.zeros((n, n, n), dtype=np.int64)

    for k in range(0, p):
        d = _nested_diamond(n, k)
        t[:, :, p - k - 1] += d
        if k > 0:
            t[:, :, p + k - 1] += d

    extras = {kk: np.zeros((n, n), dtype=np.int64) for kk in range(1, p)}

    # plane p-1: two +/- diagonal pairs hugging the diamond's NE and SW flanks
    E = extras[p - 1]
    _diag(E, 1, m + 2, p - 2, n, +1)
    _diag(E, 2, m + 2, p - 2, n - 1, -1)
    _diag(E, m + 2, 1, n, p - 2, +1)
    _diag(E, m + 2, 2, n - 1, p - 2, -1)

    # plane 1: two + diagonals completing the permutation
    E = extras[1]
    _diag(E, 1, m + 1, p - 1, n, +1)
    _diag(E, m + 1, 1, n, p - 1, +1)

    # plane 2: corner +1s and two + anti-diagonals near the NW and SE corners
    E = extras[2]
    _diag(E, 2, p - 2, p - 2, 2, +1)
    _diag(E, m + 2, n - 1, n - 1, m + 2, +1)
    E[0, 0] += 1
    E[n - 1, n - 1] += 1

    # planes p-k for k = 2..p-3: corner + anti-diagonals of length k
    for k in range(2, p - 2):
        E = extras[p - k]
        _diag(E, 1, k, k, 1, +1)
        _diag(E, n - k + 1, n, n, n - k + 1, +1)

    # high planes p+1..: same nested diamond, extras mirrored vertically
    for kk, E in extras.items():
        t[:, :, kk - 1] += E
        t[:, :, 2 * p - kk - 1] += E[::-1, :]

    if n % 2 == 0:
        E = np.zeros((n, n), dtype=np.int64)
        _diag(E, 1, p, p, 1, +1)
        _diag(E, m, n, n, m, +1)
        t[:, :, n - 1] += E

    return SignTensor(t.astype(np.int8))


# ---------------------------------------------------------------------------
# Fixtures: the worked example tensors, shipped as checksummed data files.

_FIXTURES = {
    "uneven_distance": ("uneven_distance_A.txt", "uneven_distance_B.txt"),
    "interlaced": ("interlaced_A.txt", "interlaced_B.txt"),
    "2ashm": ("two_ashm_A.txt", "two_ashm_B.txt"),
    "four_by_four_pair": ("four_by_four_A.txt", "four_by_four_B.txt"),
    "three_by_three_neg": ("three_by_three_neg_A.txt", "three_by_three_neg_B.txt"),
    "n11_B": ("n11_B.txt",),
    "n13_B": ("n13_B.txt",),
}


def fixture_names() -> tuple:
    return tuple(sorted(_FIXTURES))


def _data_text(filename: str) -> str:
    return resources.files("ashmlab.data").joinpath(filename).read_text()


def _load_checked(filename: str, checksums: dict) -> SignTensor:
    text = _data_text(filename)
    digest = hashlib.sha256(text.encode()).hexdigest()
    if checksums.get(filename) != digest:
        raise AshmlabError(f"fixture file {filename} failed its checksum; data is corrupt")
    return loads_ashm_txt(text)


def _checksums() -> dict:
    out = {}
    for line in _data_text("CHECKSUMS").splitlines():
        if line.strip():
            digest, name = line.split()
            out[name] = digest
    return out


def fixture(name: str):
    """Load a named worked-example tensor (or pair of tensors).

    Pair fixtures return (A, B); single fixtures return one tensor.
    """
    if name not in _FIXTURES:
        raise UnknownFixtureError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}")
    sums = _checksums()
    tensors = tuple(_load_checked(f, sums) for f in _FIXTURES[name])
    return tensors if len(tensors) > 1 else tensors[0]
