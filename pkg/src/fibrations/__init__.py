"""
Opfibration Core: cleavages, adjoints, mates and fibrewise monoidal structure
"""
