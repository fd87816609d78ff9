"""Regenerate ``src/projtab/data/aliases.tsv``.

Names of alternating-table projections come from Conway normal-form
diagrams built with a small tangle algebra on rotation systems (numerator
closures of rational and Montesinos tangles).  Orbits without a Conway
construction here (the polyhedral 8_16, 8_17, 8_18) are matched by knot
determinant, which is the spanning-tree count of the checkerboard graph and
is constant on a flype orbit.  Non-alternating-table members of an orbit
are named after their source: 7_{i+3} from 7_i, and 8_19 .. 8_27 from the
seven n = 8 sources listed in ``DESCENDANTS``.

Run from the repository root::

    python scripts/derive_aliases.py > src/projtab/data/aliases.tsv
"""

from __future__ import annotations

import itertools
import sys
from collections import defaultdict
from fractions import Fraction

import numpy as np

from projtab.arrow import ArrowDiagram, canonicalize, format_tokens
from projtab.catalog import build_catalog
from projtab.flype import flype_orbit, mirror_class
from projtab.spherical import rotation_system, trace_faces

_ids = itertools.count()


class Tangle:
    """Four-ended projection piece: vertex rotations, links and ports."""

    def __init__(self):
        self.rot: dict[int, list[int]] = {}
        self.link: dict[int, int] = {}
        self.ports: dict[str, int] = {}

    @staticmethod
    def crossing() -> "Tangle":
        t = Tangle()
        v = next(_ids)
        hs = [next(_ids) for _ in range(4)]
        t.rot[v] = hs  # CCW: NE, NW, SW, SE
        for h, name in zip(hs, ("NE", "NW", "SW", "SE")):
            p = next(_ids)
            t.link[h] = p
            t.link[p] = h
            t.ports[name] = p
        return t

    @staticmethod
    def zero() -> "Tangle":
        t = Tangle()
        for a, b in (("NW", "NE"), ("SW", "SE")):
            pa, pb = next(_ids), next(_ids)
            t.link[pa] = pb
            t.link[pb] = pa
            t.ports[a] = pa
            t.ports[b] = pb
        return t

    def _join(self, p: int, q: int) -> None:
        a, b = self.link.pop(p), self.link.pop(q)
        if a == q:
            raise ValueError("closing a free loop")
        self.link[a] = b
        self.link[b] = a

    def __add__(self, other: "Tangle") -> "Tangle":
        t = Tangle()
        t.rot = {**self.rot, **other.rot}
        t.link = {**self.link, **other.link}
        t._join(self.ports["NE"], other.ports["NW"])
        t._join(self.ports["SE"], other.ports["SW"])
        t.ports = {"NW": self.ports["NW"], "SW": self.ports["SW"],
                   "NE": other.ports["NE"], "SE": other.ports["SE"]}
        return t

    def reflect(self) -> "Tangle":
        """Mirror across the NW-SE diagonal."""
        t = Tangle()
        t.rot = {v: [h[0], h[3], h[2], h[1]] for v, h in self.rot.items()}
        t.link = dict(self.link)
        p = self.ports
        t.ports = {"NW": p["NW"], "SE": p["SE"], "NE": p["SW"], "SW": p["NE"]}
        return t

    def numerator(self) -> ArrowDiagram:
        t = Tangle()
        t.rot = self.rot
        t.link = dict(self.link)
        t._join(self.ports["NW"], self.ports["NE"])
        t._join(self.ports["SW"], self.ports["SE"])
        return t._trace()

    def _trace(self) -> ArrowDiagram:
        owner = {h: (v, i) for v, hs in self.rot.items() for i, h in enumerate(hs)}
        v0 = min(self.rot)
        start = self.rot[v0][0]
        h = start
        visits = []
        while True:
            w, i = owner[self.link[h]]
            out = (i + 2) % 4
            visits.append((w, out))
            h = self.rot[w][out]
            if h == start:
                break
        if len(visits) != 2 * len(self.rot):
            raise ValueError("not a knot")
        first = {}
        tail_first = {}
        for w, out in visits:
            if w in first:
                tail_first[w] = out == (first[w] - 1) % 4
            else:
                first[w] = out
        seen = set()
        toks = []
        label = {}
        for w, _ in visits:
            label.setdefault(w, len(label) + 1)
            is_first = w not in seen
            seen.add(w)
            tail = tail_first[w] == is_first
            toks.append(label[w] if tail else -label[w])
        return ArrowDiagram(tuple(toks))


def twist(a: int) -> Tangle:
    t = Tangle.crossing()
    for _ in range(a - 1):
        t = t + Tangle.crossing()
    return t


def rational(*terms: int) -> Tangle:
    t = twist(terms[0])
    for a in terms[1:]:
        t = t.reflect() + twist(a)
    return t


def vertical(*terms: int) -> Tangle:
    """Conway's ``a b ... 0``."""
    return rational(*terms).reflect() + Tangle.zero()


def montesinos(*parts: tuple[int, ...]) -> ArrowDiagram:
    t = vertical(*parts[0])
    for p in parts[1:]:
        t = t + vertical(*p)
    return t.numerator()


def determinant(d: ArrowDiagram) -> int:
    faces = trace_faces(rotation_system(d))
    face_of = faces.face_of()
    rot = rotation_system(d).rotation
    adj = defaultdict(set)
    for hs in rot:
        for i in range(4):
            adj[face_of[hs[i]]].add(face_of[hs[(i + 1) % 4]])
    color = {0: 0}
    stack = [0]
    while stack:
        f = stack.pop()
        for g in adj[f]:
            if g not in color:
                color[g] = 1 - color[f]
                stack.append(g)
    black = sorted(f for f in color if color[f] == 0)
    index = {f: i for i, f in enumerate(black)}
    L = np.zeros((len(black), len(black)))
    for hs in rot:
        pair = (face_of[hs[0]], face_of[hs[2]])
        if color[pair[0]]:
            pair = (face_of[hs[1]], face_of[hs[3]])
        a, b = index[pair[0]], index[pair[1]]
        if a != b:
            L[a, a] += 1
            L[b, b] += 1
            L[a, b] -= 1
            L[b, a] -= 1
    return int(round(abs(np.linalg.det(L[1:, 1:])))) if len(black) > 1 else 1


def continued_numerator(terms) -> int:
    x = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        x = a + 1 / x
    return x.numerator


RATIONAL = {
    "3_1": (3,), "4_1": (2, 2), "5_1": (5,), "5_2": (3, 2),
    "6_1": (4, 2), "6_2": (3, 1, 2), "6_3": (2, 1, 1, 2),
    "7_1": (7,), "7_2": (5, 2), "7_3": (4, 3), "7_4": (3, 1, 3),
    "7_5": (3, 2, 2), "7_6": (2, 2, 1, 2), "7_7": (2, 1, 1, 1, 2),
    "8_1": (6, 2), "8_2": (5, 1, 2), "8_3": (4, 4), "8_4": (4, 1, 3),
    "8_6": (3, 3, 2), "8_7": (4, 1, 1, 2), "8_8": (2, 3, 1, 2),
    "8_9": (3, 1, 1, 3), "8_11": (3, 2, 1, 2), "8_12": (2, 2, 2, 2),
    "8_13": (3, 1, 1, 1, 2), "8_14": (2, 2, 1, 1, 2),
}
MONTESINOS = {
    "8_5": ((3,), (3,), (2,)),
    "8_10": ((3,), (2, 1), (2,)),
    "8_15": ((2, 1), (2, 1), (2,)),
}
BY_DETERMINANT = {"8_16": 35, "8_17": 37, "8_18": 45}
DESCENDANTS = {
    "7_5": ["7_8"], "7_6": ["7_9"], "7_7": ["7_10"],
    "8_6": ["8_19"], "8_8": ["8_20"], "8_11": ["8_21"], "8_12": ["8_22", "8_23"],
    "8_13": ["8_24"], "8_14": ["8_25", "8_26"], "8_15": ["8_27"],
}


def main() -> int:
    entries = build_catalog(8, aliases={})
    orbit_of = {e.key: (e.n, e.orbit) for e in entries}
    members = defaultdict(list)
    for e in entries:
        members[(e.n, e.orbit)].append(e.key)
    names = {"1_1": mirror_class(canonicalize(ArrowDiagram((1, -1))))}
    for name, terms in RATIONAL.items():
        d = rational(*terms).numerator()
        assert determinant(d) == continued_numerator(terms), name
        names[name] = mirror_class(canonicalize(d))
    for name, parts in MONTESINOS.items():
        names[name] = mirror_class(canonicalize(montesinos(*parts)))
    dets = {}
    for key, (n, orb) in orbit_of.items():
        dets.setdefault((n, orb), determinant(key.diagram()))
    taken = {orbit_of[k] for k in names.values()}
    for name, det in BY_DETERMINANT.items():
        (orb,) = [o for o, v in dets.items() if o[0] == 8 and v == det and o not in taken]
        (key,) = members[orb]
        names[name] = key
    for parent, kids in DESCENDANTS.items():
        orb = flype_orbit(names[parent])
        far = sorted((k for k in orb.distance if k != names[parent]), key=lambda k: (orb.distance[k], k))
        assert len(far) == len(kids), parent
        if parent == "8_12":
            assert [orb.distance[k] for k in far] == [1, 2]
        if parent == "8_14":
            assert [orb.distance[k] for k in far] == [1, 1]
        names.update(zip(kids, far))
    assert len(set(names.values())) == len(names) == len(entries)
    print("# name<TAB>token word of a projection in the named class (either mirror)")
    print("# Derived by scripts/derive_aliases.py: Conway normal-form diagrams for")
    print("# rational and Montesinos knots, determinant matching for 8_16..8_18,")
    print("# flype descendants named after their parent orbit (8_25/8_26 by key order).")
    order = sorted(names, key=lambda s: tuple(int(x) for x in s.split("_")))
    for name in order:
        print(f"{name}\t{format_tokens(names[name].tokens)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
