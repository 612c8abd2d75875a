"""
Group Extensions and the Extension Opfibration
"""
