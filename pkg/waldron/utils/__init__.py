"""
Waldron Utility Functions
"""
