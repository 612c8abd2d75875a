"""
Monoid Actions and Torsors
"""
