"""Symbolic arithmetic: abelian centers, central-extension groups, RA loops and loop rings."""
