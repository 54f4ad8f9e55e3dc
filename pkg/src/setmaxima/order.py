"""Hidden total order on element keys, plus the audited comparison gateway.

Every key comparison in the library flows through :meth:`KeySpace.compare`
and increments a :class:`ComparisonLedger`.  Raw key values are private;
the single unaudited escape hatch is :meth:`KeySpace.oracle_keys`, which
exists only for brute-force oracles and tests.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence


class ComparisonLedger:
    """Monotone counter of key comparisons, optionally recording (i, j) pairs."""

    __slots__ = ("count", "_transcript")

    def __init__(self, record_transcript: bool = False):
        self.count = 0
        self._transcript: list[tuple[int, int]] | None = (
            [] if record_transcript else None
        )

    def note(self, i: int, j: int) -> None:
        self.count += 1
        if self._transcript is not None:
            self._transcript.append((i, j))

    @property
    def transcript(self) -> tuple[tuple[int, int], ...] | None:
        if self._transcript is None:
            return None
        return tuple(self._transcript)

    def __repr__(self) -> str:
        return f"ComparisonLedger(count={self.count})"


class KeySpace:
    """Immutable store of n pairwise-distinct integer keys.

    Indexing is stable for the lifetime of the object; ordering information
    leaks only through :meth:`compare` (audited) and :meth:`oracle_keys`
    (unaudited, oracle/test use only).
    """

    __slots__ = ("_keys",)

    def __init__(self, keys: Iterable[int]):
        ks = tuple(keys)
        if len(set(ks)) != len(ks):
            raise ValueError("keys must be pairwise distinct")
        self._keys = ks

    @property
    def n(self) -> int:
        return len(self._keys)

    @classmethod
    def random(cls, n: int, seed: int) -> "KeySpace":
        """A random permutation of 1..n."""
        rng = random.Random(seed)
        keys = list(range(1, n + 1))
        rng.shuffle(keys)
        return cls(keys)

    def compare(self, i: int, j: int, ledger: ComparisonLedger) -> int:
        """Return -1 if key i < key j, +1 if key i > key j; costs one comparison."""
        if i == j:
            raise ValueError(f"compare({i}, {j}): indices must be distinct")
        if not (0 <= i < len(self._keys)) or not (0 <= j < len(self._keys)):
            raise IndexError(f"element index out of range: compare({i}, {j})")
        ledger.note(i, j)
        return -1 if self._keys[i] < self._keys[j] else 1

    def max_of_class(self, indices: Sequence[int], ledger: ComparisonLedger) -> int:
        """Index of the largest key among ``indices``; exactly len-1 comparisons."""
        if len(indices) == 0:
            raise ValueError("max_of_class of an empty class")
        if len(set(indices)) != len(indices):
            raise ValueError("max_of_class indices contain duplicates")
        best = indices[0]
        for idx in indices[1:]:
            if self.compare(idx, best, ledger) > 0:
                best = idx
        return best

    def oracle_keys(self) -> tuple[int, ...]:
        """Unaudited raw key access. Oracle and test use only: production
        solver paths must never call this."""
        return self._keys

    def __repr__(self) -> str:
        return f"KeySpace(n={len(self._keys)})"
