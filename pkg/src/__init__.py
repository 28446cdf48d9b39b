# Monoid Workbench
# Points, generalized points and Schreier checks over finite monoids

__version__ = "1.0.0"
