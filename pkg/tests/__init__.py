"""Test package init."""
