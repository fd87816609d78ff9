"""Exhaustive enumeration of prime spherical curves.

Pipeline per ``n``: all first-occurrence-normalized double-occurrence words
(``(2n-1)!!`` of them), optional pruning passes, every ``2**n`` arrow
assignment through the genus test, canonical keys, dedupe.  The pruning
passes only discard words that cannot survive the final prime/realizable
check, so switching them off must not change the output.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict

import numpy as np

from . import _kernels
from .arrow import ArrowDiagram, CanonicalKey, canonicalize, is_prime, mirror
from .flype import mirror_class, orbit_partition
from .spherical import genus

__all__ = [
    "EnumerationConfig",
    "CountRow",
    "enumerate_prime",
    "chirality_partition",
    "orbit_counts",
    "count_report",
    "report_lines",
    "default_jobs",
]


@dataclass(frozen=True)
class EnumerationConfig:
    n_max: int = 8
    identify_mirrors: bool = True
    prune_parity: bool = True
    prune_split: bool = True
    prune_nugatory: bool = True
    jobs: int = 1
    # accepting genus > 0 is only for negative controls
    max_genus: int = 0

    def __post_init__(self):
        if self.n_max < 0:
            raise ValueError("n_max must be non-negative")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("PROJTAB_JOBS", "1")))
    except ValueError:
        return 1


def _nugatory_free(words: np.ndarray) -> np.ndarray:
    n = words.shape[1] // 2
    if n < 2:
        return np.ones(len(words), dtype=bool)
    out = np.empty(len(words), dtype=bool)
    step = 1 << 16
    for s in range(0, len(words), step):
        inter = _kernels._interleave(words[s:s + step])
        out[s:s + step] = inter.any(axis=2).all(axis=1)
    return out


def _decode(word: np.ndarray, mask: int) -> ArrowDiagram:
    seen = set()
    toks = []
    for x in word:
        k = int(x) + 1
        first = k not in seen
        seen.add(k)
        tail = bool((mask >> (k - 1)) & 1) == first
        toks.append(k if tail else -k)
    return ArrowDiagram(tuple(toks))


def _faces_ok(words: np.ndarray, max_genus: int) -> np.ndarray:
    if max_genus == 0:
        return _kernels.realizable_roles(words)
    n = words.shape[1] // 2
    ok = np.zeros((len(words), 1 << n), dtype=bool)
    for i, w in enumerate(words):
        for mask in range(1 << n):
            d = _decode(w, mask)
            ok[i, mask] = genus(d) <= max_genus
    return ok


def _process_chunk(args) -> list[bytes]:
    words, cfg = args
    if cfg.prune_parity:
        words = words[_kernels.parity_mask(words)]
    if cfg.prune_split:
        words = words[_kernels.prime_mask(words)]
    if cfg.prune_nugatory:
        words = words[_nugatory_free(words)]
    if len(words) == 0:
        return []
    ok = _faces_ok(words, cfg.max_genus)
    keys = set()
    for i, mask in zip(*np.nonzero(ok)):
        d = _decode(words[i], int(mask))
        if not is_prime(d):
            continue
        key = canonicalize(d)
        if cfg.identify_mirrors:
            key = min(key, canonicalize(mirror(d)))
        keys.add(key.code)
    return sorted(keys)


def _enumerate_n(n: int, cfg: EnumerationConfig) -> set[CanonicalKey]:
    if n == 0:
        return set()
    words = _kernels.generate_words(n)
    if cfg.jobs == 1 or len(words) < 50_000:
        codes = _process_chunk((words, cfg))
    else:
        chunks = np.array_split(words, cfg.jobs * 4)
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            codes = [c for part in pool.map(_process_chunk, [(ch, cfg) for ch in chunks]) for c in part]
    return {CanonicalKey(c) for c in codes}


def enumerate_prime(cfg: EnumerationConfig) -> dict[int, set[CanonicalKey]]:
    """Canonical keys of prime realizable diagrams for ``n = 1..n_max``."""
    return {n: _enumerate_n(n, cfg) for n in range(1, cfg.n_max + 1)}


def chirality_partition(
    keys,
) -> tuple[set[CanonicalKey], set[tuple[CanonicalKey, CanonicalKey]]]:
    """Split keys into amphichiral ones and (key, mirror key) pairs."""
    amphi = set()
    pairs = set()
    for k in keys:
        mk = canonicalize(mirror(k.diagram()))
        if mk == k:
            amphi.add(k)
        else:
            pairs.add((min(k, mk), max(k, mk)))
    return amphi, pairs


def orbit_counts(keys_by_n: dict[int, set[CanonicalKey]]) -> dict[int, int]:
    return {n: len(orbit_partition(keys)) for n, keys in keys_by_n.items()}


@dataclass(frozen=True)
class CountRow:
    n: int
    prime: int
    chiral_pairs: int
    orbits: int

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def count_report(cfg: EnumerationConfig, keys_by_n=None) -> list[CountRow]:
    if keys_by_n is None:
        keys_by_n = enumerate_prime(cfg)
    rows = []
    for n in sorted(keys_by_n):
        keys = keys_by_n[n]
        classes = {mirror_class(k) for k in keys}
        _, pairs = chirality_partition(classes)
        orbits = len(orbit_partition(classes)) if cfg.max_genus == 0 else 0
        rows.append(CountRow(n, len(keys), len(pairs), orbits))
    return rows


def report_lines(rows: list[CountRow]) -> list[str]:
    return [r.to_json() for r in rows]
