"""Numerical laboratory for analytic function spaces on the unit disc."""
