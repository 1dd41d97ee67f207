"""Finite duality between (n+1)-valued Wajsberg algebras and filtered Boolean algebras"""

__version__ = "1.0.0"
