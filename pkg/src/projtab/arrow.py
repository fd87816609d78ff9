"""Arrow diagrams (oriented Gauss diagrams) of spherical curves.

A diagram is stored as a linear reading of the cyclic word of ``2n`` chord
endpoints.  Each endpoint is a signed integer: ``+k`` is the tail of chord
``k`` (the pass that crosses the other strand from its left), ``-k`` is the
head.  Chord ids are renumbered so that first occurrences increase.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "ArrowDiagram",
    "CanonicalKey",
    "SplitWitness",
    "ParseError",
    "DuplicateRole",
    "OddLength",
    "GapInIds",
    "parse",
    "format_tokens",
    "normalize",
    "rotate",
    "reverse",
    "mirror",
    "canonicalize",
    "interleavement",
    "nugatory_chords",
    "split_witness",
    "is_prime",
    "connected_sum",
    "TRIVIAL",
]

CANON_PREFIX = "canon:"


class ParseError(ValueError):
    """Raised when a token word does not describe an arrow diagram."""


class DuplicateRole(ParseError):
    pass


class OddLength(ParseError):
    pass


class GapInIds(ParseError):
    pass


def normalize(tokens: Iterable[int]) -> tuple[int, ...]:
    """Relabel chords so first occurrences read 1, 2, 3, ... left to right."""
    relabel: dict[int, int] = {}
    out = []
    for t in tokens:
        k = abs(t)
        if k not in relabel:
            relabel[k] = len(relabel) + 1
        out.append(relabel[k] if t > 0 else -relabel[k])
    return tuple(out)


def _validate(tokens: Sequence[int]) -> None:
    if len(tokens) % 2:
        raise OddLength(f"odd number of endpoints ({len(tokens)})")
    seen: set[int] = set()
    for t in tokens:
        if t == 0:
            raise ParseError("chord id 0 is not allowed")
        if t in seen:
            raise DuplicateRole(f"chord {abs(t)} has two {'tails' if t > 0 else 'heads'}")
        seen.add(t)
    n = len(tokens) // 2
    ids = {abs(t) for t in tokens}
    if ids != set(range(1, n + 1)):
        raise GapInIds(f"chord ids {sorted(ids)} are not 1..{n}")


@dataclass(frozen=True)
class ArrowDiagram:
    """An arrow diagram read from some basepoint in some direction."""

    tokens: tuple[int, ...]
    n: int = field(init=False)

    def __post_init__(self):
        toks = tuple(int(t) for t in self.tokens)
        _validate(toks)
        object.__setattr__(self, "tokens", normalize(toks))
        object.__setattr__(self, "n", len(toks) // 2)

    def __str__(self) -> str:
        return format_tokens(self.tokens)

    def positions(self) -> dict[int, tuple[int, int]]:
        """Map chord id -> (tail position, head position)."""
        tail: dict[int, int] = {}
        head: dict[int, int] = {}
        for i, t in enumerate(self.tokens):
            (tail if t > 0 else head)[abs(t)] = i
        return {k: (tail[k], head[k]) for k in tail}

    def partner(self) -> list[int]:
        """``partner[i]`` is the other position of the chord at position ``i``."""
        out = [0] * len(self.tokens)
        for t, h in self.positions().values():
            out[t] = h
            out[h] = t
        return out

    def word(self) -> tuple[int, ...]:
        """The unoriented double-occurrence word (chord ids only)."""
        return tuple(abs(t) for t in self.tokens)


TRIVIAL = ArrowDiagram(())


def format_tokens(tokens: Iterable[int]) -> str:
    return " ".join(f"{t:+d}" for t in tokens)


def parse(text: str) -> ArrowDiagram:
    """Parse a whitespace separated list of signed chord ids.

    >>> parse("+1 +2 +3 -1 -2 -3").n
    3
    """
    text = text.strip()
    if text.startswith(CANON_PREFIX):
        text = text[len(CANON_PREFIX):]
    try:
        toks = [int(s) for s in text.split()]
    except ValueError as exc:
        raise ParseError(f"not a signed integer: {exc}") from None
    return ArrowDiagram(tuple(toks))


def rotate(d: ArrowDiagram, k: int) -> ArrowDiagram:
    """Move the basepoint forward by ``k`` endpoints."""
    if d.n == 0:
        return d
    k %= len(d.tokens)
    return ArrowDiagram(d.tokens[k:] + d.tokens[:k])


def reverse(d: ArrowDiagram) -> ArrowDiagram:
    """Traverse the curve the other way.  Heads and tails stay put."""
    return ArrowDiagram(d.tokens[::-1])


def mirror(d: ArrowDiagram) -> ArrowDiagram:
    """Reflect the sphere: every arrow is reversed."""
    return ArrowDiagram(tuple(-t for t in d.tokens))


def _encode(tokens: Sequence[int]) -> bytes:
    # tail of chord k -> 2k, head -> 2k+1, after first-occurrence relabelling
    relabel: dict[int, int] = {}
    out = bytearray()
    for t in tokens:
        k = abs(t)
        if k not in relabel:
            relabel[k] = len(relabel) + 1
        out.append(2 * relabel[k] + (t < 0))
    return bytes(out)


def _decode(code: bytes) -> tuple[int, ...]:
    return tuple(-(b >> 1) if b & 1 else (b >> 1) for b in code)


@dataclass(frozen=True, order=True)
class CanonicalKey:
    """Minimal encoding over all basepoints and both traversal directions."""

    code: bytes

    @property
    def tokens(self) -> tuple[int, ...]:
        return _decode(self.code)

    @property
    def n(self) -> int:
        return len(self.code) // 2

    def diagram(self) -> ArrowDiagram:
        return ArrowDiagram(self.tokens)

    def __str__(self) -> str:
        return CANON_PREFIX + format_tokens(self.tokens)

    @classmethod
    def from_string(cls, text: str) -> "CanonicalKey":
        return canonicalize(parse(text))


def canonicalize(d: ArrowDiagram) -> CanonicalKey:
    toks = d.tokens
    m = len(toks)
    if m == 0:
        return CanonicalKey(b"")
    best = None
    for seq in (toks, toks[::-1]):
        for k in range(m):
            code = _encode(seq[k:] + seq[:k])
            if best is None or code < best:
                best = code
    return CanonicalKey(best)


def interleavement(d: ArrowDiagram) -> list[list[bool]]:
    """Symmetric matrix: ``M[i][j]`` iff chords i+1 and j+1 alternate."""
    pos = d.positions()
    spans = [sorted(pos[k]) for k in range(1, d.n + 1)]
    M = [[False] * d.n for _ in range(d.n)]
    for i in range(d.n):
        a, b = spans[i]
        for j in range(i + 1, d.n):
            c, e = spans[j]
            if (a < c < b) != (a < e < b):
                M[i][j] = M[j][i] = True
    return M


def nugatory_chords(d: ArrowDiagram) -> frozenset[int]:
    M = interleavement(d)
    return frozenset(i + 1 for i, row in enumerate(M) if not any(row))


@dataclass(frozen=True)
class SplitWitness:
    """Two complementary arcs of endpoint positions, each closed under chords.

    Arcs are half-open ``[start, stop)`` ranges on the stored linearization;
    the second arc wraps around.
    """

    arc: tuple[int, int]
    complement: tuple[int, int]


def split_witness(d: ArrowDiagram) -> SplitWitness | None:
    m = len(d.tokens)
    if d.n < 2:
        return None
    partner = d.partner()
    # a wrapping arc is the complement of a non-wrapping one
    for s in range(m):
        lo, hi = m, -1
        for e in range(s, m - 1):
            lo = min(lo, partner[e])
            hi = max(hi, partner[e])
            if lo >= s and hi <= e and (e - s + 1) < m:
                return SplitWitness((s, e + 1), (e + 1, s + m))
    return None


def is_prime(d: ArrowDiagram) -> bool:
    return split_witness(d) is None


def connected_sum(a: ArrowDiagram, b: ArrowDiagram, edge_a: int = -1, edge_b: int = -1) -> ArrowDiagram:
    """Splice ``b`` into ``a``.

    ``edge_a`` is the edge of ``a`` leaving endpoint ``edge_a``; ``b`` is cut
    open on its edge leaving endpoint ``edge_b``.  Defaults use the closing
    edge of each stored reading.
    """
    if a.n == 0:
        return b
    if b.n == 0:
        return a
    ta = a.tokens
    cut_a = edge_a % len(ta) + 1
    tb = rotate(b, edge_b % len(b.tokens) + 1).tokens
    shifted = tuple(t + a.n if t > 0 else t - a.n for t in tb)
    return ArrowDiagram(ta[:cut_a] + shifted + ta[cut_a:])
