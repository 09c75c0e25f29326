"""Exact group arithmetic, Diophantine enumeration and incidence structures."""
