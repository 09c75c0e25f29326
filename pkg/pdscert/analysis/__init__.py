"""PDS verification, search and the staged nonexistence pipeline."""
