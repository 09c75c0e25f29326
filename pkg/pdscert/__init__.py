"""
pdscert - partial difference set verification and nonexistence certificates
"""

__version__ = "0.1.0"
