"""Serialized documents."""
