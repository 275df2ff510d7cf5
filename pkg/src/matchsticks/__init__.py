"""Toolkit for matchstick graphs: planar unit-distance graphs with
non-crossing straight edges. Ingests figure drawings, verifies the
matchstick predicates, refines embeddings to machine precision, classifies
rigidity, follows finite flexes, detects symmetry and composes graphs from
rigid blocks."""

from .geometry import (
    DegreeProfile,
    Embedding,
    GeometryError,
    Graph,
    Isometry,
    Point2,
    ToleranceProfile,
    apply_isometry,
    distance,
)
from .ingest import IngestedFigure, IngestReport, SegmentList, build_graph, ingest_tikz, normalize_scale, parse_tikz
from .msgio import read_msg, write_msg

__all__ = [
    "DegreeProfile",
    "Embedding",
    "GeometryError",
    "Graph",
    "IngestReport",
    "IngestedFigure",
    "Isometry",
    "Point2",
    "SegmentList",
    "ToleranceProfile",
    "apply_isometry",
    "build_graph",
    "distance",
    "ingest_tikz",
    "normalize_scale",
    "parse_tikz",
    "read_msg",
    "write_msg",
]
