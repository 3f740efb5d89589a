"""Embedded data: default weights, rubrics, taxonomy catalog, worked cases."""
