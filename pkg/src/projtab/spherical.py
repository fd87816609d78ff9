"""Realizability of arrow diagrams as curves on the oriented 2-sphere.

The arrow diagram fixes the cyclic order of the four half-edges at every
double point, so it determines an embedding of the 4-regular graph into
some closed oriented surface.  The curve lives on the sphere exactly when
that surface has genus zero, i.e. when it has ``n + 2`` faces.

Half-edge numbering: edge ``i`` joins endpoint position ``i`` to position
``i + 1``.  Half-edge ``2i`` is its start (leaving position ``i``) and
``2i + 1`` its end (arriving at position ``i + 1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arrow import ArrowDiagram

__all__ = [
    "RotationSystem",
    "FaceSet",
    "rotation_system",
    "trace_faces",
    "face_count",
    "genus",
    "is_realizable",
    "parity_filter",
]


def out_half(i: int, m: int) -> int:
    return 2 * (i % m)


def in_half(i: int, m: int) -> int:
    return 2 * ((i - 1) % m) + 1


@dataclass(frozen=True)
class RotationSystem:
    """Counter-clockwise order of the four half-edges at each double point.

    ``rotation[k - 1]`` lists chord ``k``'s half-edges as
    (tail out, head out, tail in, head in): walking north along the head
    strand, the tail strand runs west to east across it.
    """

    n: int
    rotation: tuple[tuple[int, int, int, int], ...]

    @property
    def edges(self) -> list[tuple[int, int]]:
        m = 2 * self.n
        return [(i, (i + 1) % m) for i in range(m)]

    def sigma(self) -> list[int]:
        """Next half-edge counter-clockwise around the same vertex."""
        s = [0] * (4 * self.n)
        for rot in self.rotation:
            for j in range(4):
                s[rot[j]] = rot[(j + 1) % 4]
        return s


@dataclass(frozen=True)
class FaceSet:
    """Faces as cycles of half-edges.

    A half-edge ``h`` belongs to the face lying on the right when walking
    along its edge away from ``h``'s vertex.
    """

    faces: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.faces)

    def face_of(self) -> list[int]:
        size = sum(len(f) for f in self.faces)
        out = [0] * size
        for fi, f in enumerate(self.faces):
            for h in f:
                out[h] = fi
        return out


def rotation_system(d: ArrowDiagram) -> RotationSystem:
    m = len(d.tokens)
    rot = []
    for k, (t, h) in sorted(d.positions().items()):
        rot.append((out_half(t, m), out_half(h, m), in_half(t, m), in_half(h, m)))
    return RotationSystem(d.n, tuple(rot))


def trace_faces(r: RotationSystem) -> FaceSet:
    sigma = r.sigma()
    seen = [False] * len(sigma)
    faces = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        face = []
        h = start
        while not seen[h]:
            seen[h] = True
            face.append(h)
            h = sigma[h ^ 1]
        faces.append(tuple(face))
    return FaceSet(tuple(faces))


def face_count(d: ArrowDiagram) -> int:
    if d.n == 0:
        return 2
    return trace_faces(rotation_system(d)).count


def genus(d: ArrowDiagram) -> int:
    return (d.n + 2 - face_count(d)) // 2


def is_realizable(d: ArrowDiagram) -> bool:
    return face_count(d) == d.n + 2


def parity_filter(word: Sequence[int]) -> bool:
    """Gauss's even-interlacement condition on an unoriented word.

    Necessary for planarity; a ``False`` here rules out every arrow
    assignment.
    """
    first: dict[int, int] = {}
    spans = []
    for i, k in enumerate(word):
        if k in first:
            spans.append((first[k], i))
        else:
            first[k] = i
    for a, b in spans:
        crossings = sum(1 for c, e in spans if (a < c < b) != (a < e < b))
        if crossings % 2:
            return False
    return True
