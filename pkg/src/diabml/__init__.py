"""Diabetes-risk classification toolkit: four classifiers and a CV benchmark."""

__version__ = "0.1.0"
