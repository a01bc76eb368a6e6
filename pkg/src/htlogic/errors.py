"""Exceptions shared across the package."""


class StructureError(Exception):
    """A value violates a structural requirement: missing operator tables,
    dangling names, malformed input data, or a failed precondition."""


class ResourceError(Exception):
    """An enumeration would exceed its configured cap."""
