"""ML problem-solving workbench: rank algorithm families against a
formalized problem, explain the scores, and compose a processing chain."""

__version__ = "0.1.0"
