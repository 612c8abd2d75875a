"""
Finite algebra: monoids, groups, modules and quotients
"""
