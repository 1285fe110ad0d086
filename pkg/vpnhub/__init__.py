"""Optimal hierarchical hubbing for tree-defined demand universes"""
_program = "vpnhub"
__version__ = "0.1"
