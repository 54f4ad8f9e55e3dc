"""The four set-maxima solvers, all reporting exact comparison counts.

* lattice propagation over good-covers (the interesting one)
* merge-sort baseline
* bucket baseline
* brute-force oracle (unaudited key access, reference counts only)

Each solve owns one ledger; audited solvers never read raw keys.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .lattice import (
    Label,
    Lattice,
    build_lattice,
    compute_parents,
    good_covers,
    label_sort_key,
)
from .order import ComparisonLedger, KeySpace
from .setsystem import SetSystem


@dataclass(frozen=True)
class MaximaResult:
    algorithm: str
    maxima: tuple[int, ...]
    comparisons: int
    bound: int

    def to_record(self, system: SetSystem, k: int | None = None, ok: bool | None = None) -> dict:
        ratio = self.comparisons / self.bound if self.bound else 0.0
        rec = {
            "algorithm": self.algorithm,
            "n": system.n,
            "m": system.m,
            "p": system.p,
            "k": k,
            "comparisons": self.comparisons,
            "bound": self.bound,
            "ok": ok,
        }
        rec["ratio"] = ratio
        return rec


def solve_bruteforce(system: SetSystem, keys: KeySpace) -> MaximaResult:
    """Ground truth by direct scan of the raw keys (unaudited).

    The reported comparison count is the reference sum(|S_i| - 1): what a
    per-set scan would pay without sharing any work.
    """
    system.require_valid()
    raw = keys.oracle_keys()
    maxima = tuple(max(s, key=raw.__getitem__) for s in system.sets)
    reference = system.p - system.m
    return MaximaResult("brute", maxima, reference, reference)


def sort_comparison_bound(n: int) -> int:
    return n * math.ceil(math.log2(n)) if n > 1 else 0


def solve_sort(
    system: SetSystem, keys: KeySpace, ledger: ComparisonLedger | None = None
) -> MaximaResult:
    """Sort all of X by merge sort, then answer every set for free.

    After sorting, each element's rank is known, so per-set maxima are
    membership lookups with zero further comparisons.
    """
    system.require_valid()
    ledger = ledger if ledger is not None else ComparisonLedger()
    start = ledger.count
    order = _merge_sort(list(range(system.n)), keys, ledger)
    rank = [0] * system.n
    for r, e in enumerate(order):
        rank[e] = r
    maxima = tuple(max(s, key=rank.__getitem__) for s in system.sets)
    used = ledger.count - start
    bound = sort_comparison_bound(system.n)
    if used > bound:
        raise AssertionError(f"merge sort used {used} > bound {bound}")
    return MaximaResult("sort", maxima, used, bound)


def _merge_sort(items: list[int], keys: KeySpace, ledger: ComparisonLedger) -> list[int]:
    if len(items) <= 1:
        return items
    mid = len(items) // 2
    left = _merge_sort(items[:mid], keys, ledger)
    right = _merge_sort(items[mid:], keys, ledger)
    out = []
    i = j = 0
    while i < len(left) and j < len(right):
        if keys.compare(left[i], right[j], ledger) < 0:
            out.append(left[i])
            i += 1
        else:
            out.append(right[j])
            j += 1
    out.extend(left[i:])
    out.extend(right[j:])
    return out


def bucket_comparison_bound(system: SetSystem) -> int:
    """Closed form: sum(|bucket| - 1) + sum_i(b_i - 1) over signature buckets."""
    buckets: dict[frozenset[int], int] = {}
    per_set: dict[int, int] = {i: 0 for i in range(1, system.m + 1)}
    for sig in system.signatures():
        if not sig:
            continue
        if sig not in buckets:
            buckets[sig] = 0
            for i in sig:
                per_set[i] += 1
        buckets[sig] += 1
    total = sum(size - 1 for size in buckets.values())
    total += sum(b - 1 for b in per_set.values() if b)
    return total


def solve_bucket(
    system: SetSystem, keys: KeySpace, ledger: ComparisonLedger | None = None
) -> MaximaResult:
    """Group elements into signature buckets; answer each set from the
    champions of the buckets it intersects."""
    system.require_valid()
    ledger = ledger if ledger is not None else ComparisonLedger()
    start = ledger.count
    buckets: dict[frozenset[int], list[int]] = {}
    for element, sig in enumerate(system.signatures()):
        if sig:
            buckets.setdefault(sig, []).append(element)
    if len(buckets) > min(system.n, (1 << system.m) - 1):
        raise AssertionError("more buckets than distinct signatures can exist")
    champion: dict[frozenset[int], int] = {}
    for sig in sorted(buckets, key=label_sort_key):
        champion[sig] = keys.max_of_class(sorted(buckets[sig]), ledger)
    maxima = []
    for i in range(1, system.m + 1):
        hits = [champion[sig] for sig in sorted(buckets, key=label_sort_key) if i in sig]
        best = hits[0]
        for cand in hits[1:]:
            if keys.compare(cand, best, ledger) > 0:
                best = cand
        maxima.append(best)
    used = ledger.count - start
    bound = bucket_comparison_bound(system)
    if used != bound:
        raise AssertionError(f"bucket count {used} != closed form {bound}")
    return MaximaResult("bucket", maxima=tuple(maxima), comparisons=used, bound=bound)


def solve_lattice(
    system: SetSystem,
    keys: KeySpace,
    cover_mode: str = "greedy",
    ledger: ComparisonLedger | None = None,
    prebuilt: tuple[Lattice, dict[Label, tuple[Label, ...]]] | None = None,
    debug_check: bool = False,
) -> MaximaResult:
    """Reduce each class to a champion, then push champions up the
    cover-pruned DAG, deepest layer first.

    With ``prebuilt`` the caller supplies the lattice and per-node covers
    (the geometric path does); otherwise covers come from the requested
    abstract mode.  The comparison count is asserted against the budget
    n + sum(|cover|) on every run.
    """
    system.require_valid()
    ledger = ledger if ledger is not None else ComparisonLedger()
    start = ledger.count
    if prebuilt is not None:
        lattice, covers = prebuilt
        algorithm = "lattice"
    else:
        lattice = compute_parents(build_lattice(system))
        covers = good_covers(lattice, mode=cover_mode)
        algorithm = "lattice"

    champion: dict[Label, int | None] = {}
    for label in lattice.labels_by_layer():
        node = lattice.nodes[label]
        if node.phi:
            champion[label] = keys.max_of_class(sorted(node.phi), ledger)
        else:
            champion[label] = None

    by_depth = [lb for lb in lattice.labels_by_layer(descending=True) if len(lb) >= 2]
    layer_of = len  # labels are frozensets
    prev_layer = None
    for label in by_depth:
        if debug_check and layer_of(label) != prev_layer:
            _check_loop_invariant(lattice, covers, champion, keys, layer_of(label))
            prev_layer = layer_of(label)
        value = champion[label]
        if value is None:
            continue
        for parent in covers[label]:
            cur = champion[parent]
            if cur is None or cur == value:
                # absorbing into an empty slot is free, and an element never
                # needs comparing with itself when it arrives on two paths
                champion[parent] = value
            elif keys.compare(value, cur, ledger) > 0:
                champion[parent] = value

    maxima = []
    for i in range(1, system.m + 1):
        best = champion[frozenset((i,))]
        if best is None:
            raise AssertionError(f"no champion reached set {i}")
        maxima.append(best)
    used = ledger.count - start
    bound = system.n + sum(len(c) for c in covers.values())
    if used > bound:
        raise AssertionError(f"lattice count {used} > budget {bound}")
    return MaximaResult(algorithm, tuple(maxima), used, bound)


def _check_loop_invariant(lattice, covers, champion, keys, layer):
    """Debug mode: before processing a layer, every node at or below it must
    already hold the max over its reachable classes (checked unaudited)."""
    raw = keys.oracle_keys()
    children: dict[Label, list[Label]] = {lb: [] for lb in lattice.nodes}
    for label, cover in covers.items():
        for parent in cover:
            children[parent].append(label)

    reach_best: dict[Label, int | None] = {}

    def best_of(label: Label) -> int | None:
        if label in reach_best:
            return reach_best[label]
        node = lattice.nodes[label]
        cands = [max(node.phi, key=raw.__getitem__)] if node.phi else []
        for child in children[label]:
            b = best_of(child)
            if b is not None:
                cands.append(b)
        result = max(cands, key=raw.__getitem__) if cands else None
        reach_best[label] = result
        return result

    for label, node in lattice.nodes.items():
        if node.layer >= layer:
            expected = best_of(label)
            if champion[label] != expected:
                raise AssertionError(
                    f"loop invariant broken at layer {layer}: node holds "
                    f"{champion[label]}, reachable max is {expected}"
                )


ALGORITHMS = {
    "lattice": solve_lattice,
    "sort": solve_sort,
    "bucket": solve_bucket,
    "brute": solve_bruteforce,
}
