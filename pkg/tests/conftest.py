from fractions import Fraction

from hypothesis import strategies as st

from ellstab.lattice import ChernVector, DivisorClass

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero_rationals = rationals.filter(lambda x: x != 0)
positive_rationals = st.fractions(min_value=Fraction(1, 12), max_value=20, max_denominator=12)

divisors = st.builds(DivisorClass, rationals, rationals)
chern_vectors = st.builds(ChernVector, rationals, rationals, rationals, rationals)
integral_divisors = st.builds(DivisorClass, st.integers(-30, 30), st.integers(-30, 30))
