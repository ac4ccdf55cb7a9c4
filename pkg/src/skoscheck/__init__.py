"""Quality checks for SKOS vocabularies."""

__version__ = "0.1.0"
