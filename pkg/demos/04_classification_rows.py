"""Rows of the small homological-dimension classification, recomputed.

For each row: the generator list (catalogued or constructed), its degree
census, the hsop numerator check, and the span check up to min(cap, bound).

Run: python demos/04_classification_rows.py
"""
import sys

from sl2inv.cli import main

sys.exit(main(["theorem2", "--degree-cap", "10"]))
