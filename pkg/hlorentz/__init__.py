"""
hlorentz - exact verification of the h-deformed Lorentz and Minkowski algebras
"""

__version__ = "1.0.0"
