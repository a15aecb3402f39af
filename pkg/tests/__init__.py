"""
Tests module for muntzbasis

Contains unit tests and CLI integration tests for all components.
"""
