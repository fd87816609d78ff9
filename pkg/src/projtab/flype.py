"""Flype sites, flype moves and flype orbits of spherical curves.

A flype site is a decomposition ``P = N(A + 1 + B)``: a tangle ``A`` (a disk
meeting the curve in two arcs), and a double point ``c`` joined to ``A`` by
two edges that are neighbours on the boundary of the disk.  The move
rotates ``A`` half a turn about the axis through ``c`` and slides ``c`` to
the opposite side of ``A``.

Tangles are found on the word: the two arcs of ``A`` are two disjoint
intervals of endpoint positions whose chords close up.  A combinatorial
4-cut only counts when its four cut edges bound a disk on the sphere, which
is read off the face structure: walking around the disk, consecutive cut
edges share a face, and the four faces met are distinct.

On the word, the move keeps the order in which every strand visits its
double points.  Reflecting ``A`` reverses every arrow inside it; ``c`` is
dropped from the two edges it occupied and reinserted on the two far edges
of ``A``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .arrow import ArrowDiagram, CanonicalKey, canonicalize, is_prime, mirror
from .spherical import face_count, rotation_system, trace_faces

__all__ = [
    "NotRealizable",
    "InvalidSite",
    "FlypeSite",
    "FlypeMove",
    "FlypeOrbit",
    "RESTRICTED_SHAPES",
    "find_flype_sites",
    "apply_flype",
    "flype_moves",
    "flype_orbit",
    "mirror_class",
    "generators_suffice",
    "orbit_to_dot",
    "orbit_partition",
    "reverse_site",
]

RESTRICTED_SHAPES = frozenset({"T2", "U3"})


class NotRealizable(ValueError):
    pass


class InvalidSite(ValueError):
    pass


@dataclass(frozen=True)
class FlypeSite:
    """One decomposition ``N(A + 1 + B)`` of a diagram.

    ``boundary`` lists the four cut edges of ``A`` (edge ``i`` leaves
    endpoint ``i``) as ``(p1, p2, p3, p4)``, counter-clockwise around ``A``
    in the order p3, p1, p2, p4.  ``p1`` and ``p2`` lead to ``crossing``.
    """

    crossing: int
    tangle: frozenset[int]
    tangle_arcs: tuple[tuple[int, int], tuple[int, int]]
    boundary: tuple[int, int, int, int]
    shape: str

    @property
    def ident(self) -> tuple[int, tuple[int, ...]]:
        return self.crossing, tuple(sorted(self.tangle))


@dataclass(frozen=True)
class FlypeMove:
    source: CanonicalKey
    site: FlypeSite
    result: CanonicalKey

    @property
    def nontrivial(self) -> bool:
        return self.result != self.source


class _Map:
    """Face data of one diagram, reused across all candidate cuts."""

    def __init__(self, d: ArrowDiagram):
        self.d = d
        self.m = len(d.tokens)
        self.face = trace_faces(rotation_system(d)).face_of()
        self.chord_at = [abs(t) for t in d.tokens]

    def inside(self, chords) -> list[bool]:
        return [k in chords for k in self.chord_at]

    def cut_edges(self, inside: list[bool]) -> list[int]:
        m = self.m
        return [i for i in range(m) if inside[i] != inside[(i + 1) % m]]

    def inner_outer(self, e: int, inside: list[bool]) -> tuple[int, int]:
        return (2 * e, 2 * e + 1) if inside[e] else (2 * e + 1, 2 * e)

    def disk_order(self, chords) -> list[int] | None:
        """Cut edges counter-clockwise around a disk holding ``chords``.

        ``None`` when the cut is not four edges bounding a disk.
        """
        inside = self.inside(chords)
        cuts = self.cut_edges(inside)
        if len(cuts) != 4:
            return None
        inner = {}
        outer = {}
        for e in cuts:
            hi, ho = self.inner_outer(e, inside)
            inner[e] = self.face[hi]
            outer[e] = self.face[ho]
        if len(set(outer.values())) != 4 or set(outer.values()) != set(inner.values()):
            return None
        by_right = {f: e for e, f in inner.items()}
        order = [cuts[0]]
        while len(order) < 4:
            nxt = by_right[outer[order[-1]]]
            if nxt == order[0]:
                return None
            order.append(nxt)
        if by_right[outer[order[-1]]] != order[0]:
            return None
        return order

    def enters(self, e: int, inside: list[bool]) -> bool:
        """Does the curve cross cut edge ``e`` into the inside?"""
        return inside[(e + 1) % self.m]

    def outer_position(self, e: int, inside: list[bool]) -> int:
        return e if not inside[e] else (e + 1) % self.m


def _arcs(cuts: tuple[int, int, int, int], m: int) -> tuple[tuple[int, int], tuple[int, int]]:
    k0, k1, k2, k3 = cuts
    return (k0 + 1, k1 + 1), (k2 + 1, k3 + 1)


def _shape(size: int, diagonal: bool) -> str:
    if size == 1:
        return "U1" if diagonal else "general"
    if size == 2:
        return "general" if diagonal else "T2"
    if size == 3:
        return "U3" if diagonal else "T3"
    return "general"


def _sites(d: ArrowDiagram) -> list[FlypeSite]:
    mp = _Map(d)
    m = mp.m
    n = d.n
    chord_at = mp.chord_at
    sites = []
    for cuts in combinations(range(m), 4):
        k0, k1, k2, k3 = cuts
        side = set(chord_at[k0 + 1:k1 + 1]) | set(chord_at[k2 + 1:k3 + 1])
        other = set(chord_at) - side
        if any(k in other for k in side):
            continue
        if side & set(chord_at[k1 + 1:k2 + 1]) or side & set(chord_at[k3 + 1:] + chord_at[:k0 + 1]):
            continue
        for S, arcs, strands in (
            (side, _arcs(cuts, m), {k0: k1, k1: k0, k2: k3, k3: k2}),
            (set(range(1, n + 1)) - side, ((k1 + 1, k2 + 1), (k3 + 1, k0 + 1 + m)),
             {k1: k2, k2: k1, k3: k0, k0: k3}),
        ):
            if not S:
                continue
            order = mp.disk_order(S)
            if order is None:
                continue
            inside = mp.inside(S)
            for j in range(4):
                x, y = order[j], order[(j + 1) % 4]
                px = mp.outer_position(x, inside)
                py = mp.outer_position(y, inside)
                if px == py or chord_at[px] != chord_at[py]:
                    continue
                c = chord_at[px]
                big = S | {c}
                if len(big) == n or mp.disk_order(big) is None:
                    continue
                p3 = order[(j - 1) % 4]
                p4 = order[(j + 2) % 4]
                # handedness of c must agree with the boundary orientation
                tail_at_x = d.tokens[px] > 0
                if tail_at_x != (mp.enters(x, inside) != mp.enters(y, inside)):
                    raise AssertionError(f"orientation mismatch at chord {c} of {d}")
                sites.append(
                    FlypeSite(
                        crossing=c,
                        tangle=frozenset(S),
                        tangle_arcs=arcs,
                        boundary=(x, y, p3, p4),
                        shape=_shape(len(S), strands[x] == p4),
                    )
                )
    sites.sort(key=lambda s: (s.crossing, sorted(s.tangle), s.boundary))
    return sites


def _require_realizable(d: ArrowDiagram) -> None:
    if d.n and face_count(d) != d.n + 2:
        raise NotRealizable(f"{d} does not lie on the sphere")


def find_flype_sites(d: ArrowDiagram, restricted: bool = False) -> list[FlypeSite]:
    _require_realizable(d)
    sites = _sites(d)
    if restricted:
        sites = [s for s in sites if s.shape in RESTRICTED_SHAPES]
    return sites


def _flype_tokens(d: ArrowDiagram, site: FlypeSite) -> list[int]:
    m = len(d.tokens)
    c = site.crossing
    inside = [abs(t) in site.tangle for t in d.tokens]
    _, _, p3, p4 = site.boundary
    enters = {e: inside[(e + 1) % m] for e in (p3, p4)}
    tail_at_p3 = enters[p3] != enters[p4]
    out = []
    for i, t in enumerate(d.tokens):
        k = abs(t)
        if k != c:
            out.append(-t if k in site.tangle else t)
        if i == p3:
            out.append(c if tail_at_p3 else -c)
        elif i == p4:
            out.append(-c if tail_at_p3 else c)
    return out


def apply_flype(d: ArrowDiagram, site: FlypeSite) -> ArrowDiagram:
    """Flype ``d`` at ``site``; the site must come from ``find_flype_sites``."""
    valid = {s.ident: s for s in _sites(d)}
    if valid.get(site.ident) != site:
        raise InvalidSite(f"{site.ident} is not a flype site of {d}")
    return ArrowDiagram(tuple(_flype_tokens(d, site)))


def reverse_site(d: ArrowDiagram, site: FlypeSite) -> tuple[ArrowDiagram, FlypeSite]:
    """Flype result together with the site that undoes the move."""
    raw = _flype_tokens(d, site)
    relabel: dict[int, int] = {}
    for t in raw:
        relabel.setdefault(abs(t), len(relabel) + 1)
    out = ArrowDiagram(tuple(raw))
    want = (relabel[site.crossing], tuple(sorted(relabel[k] for k in site.tangle)))
    for s in _sites(out):
        if s.ident == want:
            return out, s
    raise InvalidSite("flype result has no matching reverse site")


def mirror_class(key: CanonicalKey) -> CanonicalKey:
    """Representative of ``{key, mirror(key)}``."""
    return min(key, canonicalize(mirror(key.diagram())))


def flype_moves(d: ArrowDiagram, restricted: bool = False) -> list[FlypeMove]:
    src = canonicalize(d)
    return [
        FlypeMove(src, s, canonicalize(ArrowDiagram(tuple(_flype_tokens(d, s)))))
        for s in find_flype_sites(d, restricted)
    ]


@dataclass
class FlypeOrbit:
    """Breadth-first flype closure from a start diagram."""

    start: CanonicalKey
    distance: dict[CanonicalKey, int]
    edges: list[tuple[CanonicalKey, CanonicalKey, str]]
    identify_mirrors: bool

    @property
    def keys(self) -> frozenset[CanonicalKey]:
        return frozenset(self.distance)

    def __len__(self) -> int:
        return len(self.distance)


def flype_orbit(
    d: ArrowDiagram | CanonicalKey, restricted: bool = False, identify_mirrors: bool = True
) -> FlypeOrbit:
    if isinstance(d, CanonicalKey):
        d = d.diagram()
    _require_realizable(d)
    if not is_prime(d):
        raise ValueError("flype orbits are defined for prime diagrams")

    def norm(k: CanonicalKey) -> CanonicalKey:
        return mirror_class(k) if identify_mirrors else k

    start = norm(canonicalize(d))
    distance = {start: 0}
    edges: set[tuple[CanonicalKey, CanonicalKey, str]] = set()
    queue = deque([start])
    while queue:
        key = queue.popleft()
        for mv in flype_moves(key.diagram(), restricted):
            dst = norm(mv.result)
            if dst == key:
                continue
            edges.add((key, dst, mv.site.shape))
            if dst not in distance:
                distance[dst] = distance[key] + 1
                queue.append(dst)
    return FlypeOrbit(start, distance, sorted(edges), identify_mirrors)


def generators_suffice(d: ArrowDiagram | CanonicalKey, identify_mirrors: bool = True) -> bool:
    """Restricted flypes reach everything that unrestricted flypes reach."""
    full = flype_orbit(d, restricted=False, identify_mirrors=identify_mirrors)
    small = flype_orbit(d, restricted=True, identify_mirrors=identify_mirrors)
    return full.keys == small.keys


def orbit_to_dot(orbit: FlypeOrbit, names: dict[CanonicalKey, str] | None = None) -> str:
    names = names or {}
    ids = {k: i for i, k in enumerate(sorted(orbit.distance))}
    lines = ["graph flype_orbit {", "  node [shape=box, fontname=monospace];"]
    for k, i in ids.items():
        label = names.get(k, str(k))
        lines.append(f'  n{i} [label="{label}\\nN_f={orbit.distance[k]}"];')
    shapes: dict[tuple[int, int], set[str]] = {}
    for a, b, shape in orbit.edges:
        pair = (min(ids[a], ids[b]), max(ids[a], ids[b]))
        shapes.setdefault(pair, set()).add(shape)
    for (i, j), tags in sorted(shapes.items()):
        lines.append(f'  n{i} -- n{j} [label="{",".join(sorted(tags))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def orbit_partition(keys: Iterable[CanonicalKey], restricted: bool = False) -> list[FlypeOrbit]:
    """Split mirror-identified keys into flype orbits, ordered by seed."""
    remaining = {mirror_class(k) for k in keys}
    orbits = []
    while remaining:
        seed = min(remaining)
        orb = flype_orbit(seed, restricted=restricted)
        orbits.append(orb)
        remaining -= orb.keys
    return orbits
