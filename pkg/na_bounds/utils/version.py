"""
Version information for the na_bounds package.
"""

__version__ = "0.1.0"
