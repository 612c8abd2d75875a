"""
Opfibration Workbench - Core Package
"""
