"""Exact arithmetic for characteristic-p ramification and class field theory."""
