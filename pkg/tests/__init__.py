"""Tests for contactlab."""
