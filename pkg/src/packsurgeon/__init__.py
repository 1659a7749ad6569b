"""packsurgeon: escape-path covers, rectangle merging, waste measurement and
tilt repair for unit-square packings."""

__version__ = "0.1.0"
