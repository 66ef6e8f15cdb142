"""Test package for firecast."""
