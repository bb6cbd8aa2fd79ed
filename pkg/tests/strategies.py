from fractions import Fraction

from hypothesis import strategies as st

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))
nonzero_rationals = rationals.filter(lambda q: q != 0)
coeff_lists = st.lists(rationals, min_size=0, max_size=6)
