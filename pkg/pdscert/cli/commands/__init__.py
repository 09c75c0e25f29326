"""Subcommand modules. Each exposes ``register(subparsers)``."""
