"""Prime knot projections as arrow diagrams: realizability, flypes, tables."""

from .arrow import (
    ArrowDiagram,
    CanonicalKey,
    ParseError,
    canonicalize,
    connected_sum,
    format_tokens,
    interleavement,
    is_prime,
    mirror,
    nugatory_chords,
    parse,
    reverse,
    rotate,
    split_witness,
)
from .catalog import CatalogEntry, build_catalog, load_aliases, load_catalog, save_catalog, verify_catalog
from .enumerator import EnumerationConfig, count_report, enumerate_prime
from .flype import FlypeSite, apply_flype, find_flype_sites, flype_orbit, mirror_class, orbit_to_dot
from .spherical import face_count, genus, is_realizable, rotation_system, trace_faces

__version__ = "0.1.0"
