"""
mmm_calc Package
Exact Newton polynomials, MMM characteristic numbers and Atiyah-Kodaira invariants
"""

__version__ = "1.0.0"
__author__ = "mmm_calc Team"
