"""Document models, JSON persistence and figure rendering."""

from hyperbisect.data.documents import (
    CertificateDocument,
    EnumerationDocument,
    FamilyDocument,
    MeasureMass,
    MeasureRecord,
    arrangement_payload,
    load_arrangement,
    load_family,
    read_json,
    write_json,
    write_text,
)
from hyperbisect.data.svg import render_svg

__all__ = [
    "CertificateDocument",
    "EnumerationDocument",
    "FamilyDocument",
    "MeasureMass",
    "MeasureRecord",
    "arrangement_payload",
    "load_arrangement",
    "load_family",
    "read_json",
    "render_svg",
    "write_json",
    "write_text",
]
