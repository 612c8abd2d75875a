"""
Verification Suites and Reports
"""
