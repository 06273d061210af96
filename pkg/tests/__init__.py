"""
Test suite for the Straub polynomial engine.
"""
