"""Laplacian pretty good fractional revival: exact certificates and walk simulation."""
