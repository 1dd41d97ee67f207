"""
Tests package for mvduality
"""

__version__ = "1.0.0"
