"""Tests for md2office."""
