"""
Waldron Command-Line Package
"""
