"""Tests for mackey-workbench."""
