"""Exact linear algebra over Z/p**n and Hochschild cochains."""
