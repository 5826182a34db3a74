"""Hyperbolic structures on link complements from diagram labels."""

import json

from ._core import (
    Diagram,
    LabelgeomError,
    Solution,
    System,
    census_diagram,
    census_names,
    encircled_diagram,
    encircled_variants,
    expanded_meridian,
    holonomy,
    parse_pd,
    punctured_sphere_label,
    select_geometric,
    solve,
    verify_certificate,
)
from ._core import report as _report


def report(diagram, **kwargs):
    """Run report as a dict; see the JSON schema for its layout."""
    return json.loads(_report(diagram, **kwargs))


def report_text(diagram, **kwargs):
    return _report(diagram, **kwargs)


__all__ = [
    "Diagram",
    "LabelgeomError",
    "Solution",
    "System",
    "census_diagram",
    "census_names",
    "encircled_diagram",
    "encircled_variants",
    "expanded_meridian",
    "holonomy",
    "parse_pd",
    "punctured_sphere_label",
    "report",
    "report_text",
    "select_geometric",
    "solve",
    "verify_certificate",
]
