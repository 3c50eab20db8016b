"""Fusion-closed sets of primaries in rational conformal models."""
