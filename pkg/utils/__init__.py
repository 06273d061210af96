"""
Utility functions: JSON files, published reference values and check reporting.
"""
