"""Utility helpers for glrack."""
