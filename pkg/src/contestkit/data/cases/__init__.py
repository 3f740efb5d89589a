"""Worked case fixtures: three assessed systems with improvement scenarios."""
