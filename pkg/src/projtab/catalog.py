"""The flype-closure table of prime projections and its verification.

The build starts from the exhaustive enumeration only to pick one seed per
flype class (the smallest key); the table itself is the closure of those
seeds under T2/U3 flypes, which must land exactly on the enumerated set.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .arrow import CanonicalKey, canonicalize, mirror, parse
from .enumerator import EnumerationConfig, enumerate_prime
from .flype import flype_orbit, generators_suffice, mirror_class

__all__ = [
    "EXPECTED_COUNTS",
    "EXPECTED_ORBITS",
    "ARNOLD_N7",
    "CatalogEntry",
    "VerificationMismatch",
    "UnknownAliasKey",
    "DuplicateAlias",
    "CheckResult",
    "build_catalog",
    "load_aliases",
    "save_catalog",
    "load_catalog",
    "catalog_lines",
    "chiral_listing",
    "mirror_expanded",
    "verify_catalog",
    "check_counts",
    "check_orbits",
    "check_flype_deltas",
    "check_arnold",
    "check_generators",
    "DEFAULT_ALIASES",
]

EXPECTED_COUNTS = {1: 1, 2: 0, 3: 1, 4: 1, 5: 2, 6: 3, 7: 10, 8: 27}
EXPECTED_ORBITS = {3: 1, 4: 1, 5: 2, 6: 3, 7: 7, 8: 18}
ARNOLD_N7 = 6

DEFAULT_ALIASES = Path(__file__).parent / "data" / "aliases.tsv"


class VerificationMismatch(RuntimeError):
    pass


class UnknownAliasKey(ValueError):
    pass


class DuplicateAlias(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    key: CanonicalKey
    n: int
    orbit: int
    nf: int
    amphichiral: bool
    mirror: CanonicalKey
    alias: str

    def to_json(self) -> str:
        row = asdict(self)
        row["key"] = str(self.key)
        row["mirror"] = str(self.mirror)
        return json.dumps(row)

    @classmethod
    def from_json(cls, line: str) -> "CatalogEntry":
        row = json.loads(line)
        return cls(
            key=CanonicalKey.from_string(row["key"]),
            n=row["n"],
            orbit=row["orbit"],
            nf=row["nf"],
            amphichiral=row["amphichiral"],
            mirror=CanonicalKey.from_string(row["mirror"]),
            alias=row["alias"],
        )


def load_aliases(path: str | Path | None) -> dict[str, CanonicalKey]:
    """Read ``name<TAB>token-word`` lines; keys are mirror-class representatives."""
    if path is None:
        return {}
    path = Path(path)
    if not path.exists():
        return {}
    names: dict[str, CanonicalKey] = {}
    owners: dict[CanonicalKey, str] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, _, word = raw.partition("\t")
        name = name.strip()
        key = mirror_class(canonicalize(parse(word)))
        if name in names:
            raise DuplicateAlias(f"{path}:{lineno}: {name} defined twice")
        if key in owners:
            raise DuplicateAlias(f"{path}:{lineno}: {name} and {owners[key]} name the same projection")
        names[name] = key
        owners[key] = name
    return names


def build_catalog(
    n_max: int = 8,
    aliases: dict[str, CanonicalKey] | None = None,
    jobs: int = 1,
) -> list[CatalogEntry]:
    if aliases is None:
        aliases = load_aliases(DEFAULT_ALIASES)
    found = enumerate_prime(EnumerationConfig(n_max, identify_mirrors=True, jobs=jobs))
    entries: list[CatalogEntry] = []
    alias_of = {k: name for name, k in aliases.items()}
    for n in range(1, n_max + 1):
        remaining = set(found[n])
        covered: set[CanonicalKey] = set()
        orbit_id = 0
        while remaining:
            seed = min(remaining)
            orbit_id += 1
            orb = flype_orbit(seed, restricted=True)
            if not orb.keys <= found[n] or orb.keys & covered:
                raise VerificationMismatch(f"n={n}: flype closure of {seed} leaves the enumerated set")
            covered |= orb.keys
            remaining -= orb.keys
            ranked = sorted(orb.distance, key=lambda k: (orb.distance[k], k))
            for rank, k in enumerate(ranked):
                mk = canonicalize(mirror(k.diagram()))
                entries.append(
                    CatalogEntry(
                        key=k,
                        n=n,
                        orbit=orbit_id,
                        nf=orb.distance[k],
                        amphichiral=mk == k,
                        mirror=mk,
                        alias=alias_of.get(k, f"P{n}.{orbit_id}.{rank}"),
                    )
                )
        if covered != found[n]:
            raise VerificationMismatch(f"n={n}: closure and enumeration disagree")
    known = {e.key: e for e in entries}
    for name, k in aliases.items():
        e = known.get(k)
        if e is None or not name.startswith(f"{e.n}_"):
            if k.n <= n_max:
                raise UnknownAliasKey(f"alias {name} does not match a catalog entry")
    return entries


def catalog_lines(entries: list[CatalogEntry]) -> list[str]:
    return [e.to_json() for e in entries]


def save_catalog(path: str | Path, entries: list[CatalogEntry]) -> None:
    Path(path).write_text("\n".join(catalog_lines(entries)) + "\n")


def load_catalog(path: str | Path) -> list[CatalogEntry]:
    return [CatalogEntry.from_json(l) for l in Path(path).read_text().splitlines() if l.strip()]


def mirror_expanded(entries: list[CatalogEntry]) -> set[CanonicalKey]:
    return {e.key for e in entries} | {e.mirror for e in entries}


def chiral_listing(entries: list[CatalogEntry]) -> str:
    """One line per chiral class: n, name, key, mirror key."""
    lines = [
        f"{e.n}\t{e.alias}\t{e.key}\t{e.mirror}" for e in entries if not e.amphichiral
    ]
    return "\n".join(lines) + "\n"


# -------------------------------------------------------------- verification


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    info: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({"check": self.name, "passed": self.passed, "detail": self.detail, **self.info})


def _by_n(entries):
    out = defaultdict(list)
    for e in entries:
        out[e.n].append(e)
    return out


def check_counts(counts: dict[int, int]) -> CheckResult:
    want = {n: c for n, c in EXPECTED_COUNTS.items() if n in counts}
    got = {n: counts[n] for n in want}
    return CheckResult("counts", bool(want) and got == want, f"got {got}, expected {want}")


def check_orbits(entries: list[CatalogEntry]) -> CheckResult:
    by = _by_n(entries)
    want = {n: c for n, c in EXPECTED_ORBITS.items() if n in by or n <= max(by, default=0)}
    got = {n: len({e.orbit for e in by.get(n, [])}) for n in want}
    return CheckResult("orbits", got == want, f"got {got}, expected {want}")


def check_flype_deltas(entries: list[CatalogEntry]) -> CheckResult:
    by = _by_n(entries)
    problems = []
    info = {}
    if 6 in by and any(e.nf for e in by[6]):
        problems.append("n=6 closure adds projections")
    if 7 in by:
        dist = Counter(e.nf for e in by[7])
        if dist.get(1, 0) != 3 or max(dist) > 1:
            problems.append(f"n=7 N_f distribution {dict(dist)}")
    if 8 in by:
        dist = Counter(e.nf for e in by[8])
        if dist.get(1, 0) != 8 or dist.get(2, 0) != 1 or max(dist) > 2:
            problems.append(f"n=8 N_f distribution {dict(dist)}")
        gains = Counter()
        for e in by[8]:
            if e.nf == 1:
                gains[e.orbit] += 1
        if len(gains) != 7 or sorted(gains.values()) != [1] * 6 + [2]:
            problems.append(f"n=8 single-flype sources {dict(gains)}")
        far = [e for e in by[8] if e.nf == 2]
        if len(far) == 1 and gains.get(far[0].orbit) != 1:
            problems.append("the N_f=2 projection does not hang off a one-child orbit")
        double = [o for o, g in gains.items() if g == 2]
        if double:
            kids = [e for e in by[8] if e.orbit == double[0] and e.nf == 1]
            info["two_child_orbit_chirality"] = ["amphichiral" if e.amphichiral else "chiral" for e in kids]
            info["two_child_orbit_children_mirror_related"] = kids[0].mirror == kids[-1].key
    return CheckResult("flype_deltas", not problems, "; ".join(problems) or "ok", info)


def check_arnold(entries: list[CatalogEntry]) -> CheckResult:
    c7 = sum(1 for e in entries if e.n == 7)
    return CheckResult("arnold", c7 - ARNOLD_N7 == 4, f"{c7} - {ARNOLD_N7} = {c7 - ARNOLD_N7}")


def check_generators(entries: list[CatalogEntry]) -> CheckResult:
    bad = [str(e.key) for e in entries if e.n >= 3 and not generators_suffice(e.key)]
    return CheckResult("generators", not bad, f"{len(bad)} failures" + (f": {bad[:3]}" if bad else ""))


def verify_catalog(entries: list[CatalogEntry], generators: bool = True) -> list[CheckResult]:
    by = _by_n(entries)
    n_max = max(by, default=0)
    counts = {n: len(by.get(n, [])) for n in range(1, n_max + 1)}
    results = [
        check_counts(counts),
        check_orbits(entries),
        check_flype_deltas(entries),
        check_arnold(entries),
    ]
    if generators:
        results.append(check_generators(entries))
    return results
