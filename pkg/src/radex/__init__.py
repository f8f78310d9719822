"""radex — schema-driven information extraction for radiology reports."""

__version__ = "0.1.0"
