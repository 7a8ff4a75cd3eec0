from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

small_int = st.integers(min_value=-12, max_value=12)
fractions = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 9))
squarefree_d = st.sampled_from([2, 3, 5, 6, 7, 10, 11, 13])


def int_coeffs(min_deg: int = 1, max_deg: int = 5):
    """Integer coefficient lists, low degree first, nonzero leading term."""
    return st.integers(min_deg, max_deg).flatmap(
        lambda n: st.tuples(st.lists(small_int, min_size=n, max_size=n),
                            small_int.filter(bool)).map(lambda t: t[0] + [t[1]]))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
