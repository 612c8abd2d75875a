"""
Low-Degree Group Cohomology
"""
