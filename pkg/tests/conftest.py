from fractions import Fraction

from hypothesis import strategies as st

from particle_access import Particle, op_inc_sort

# same shape as the seeded random corpus: {1..100}/{1..10}
rationals = st.builds(Fraction, st.integers(1, 100), st.integers(1, 10))


@st.composite
def particle_lists(draw, min_size=1, max_size=8):
    n = draw(st.integers(min_size, max_size))
    return [Particle(f"p{i}", draw(rationals), draw(rationals)) for i in range(n)]


@st.composite
def groups(draw, min_size=1, max_size=8):
    return op_inc_sort(draw(particle_lists(min_size, max_size)))


@st.composite
def tie_heavy_groups(draw, max_size=8):
    """Few distinct deadlines, so equal-deadline runs are common."""
    n = draw(st.integers(1, max_size))
    deadlines = draw(st.lists(st.integers(1, 4), min_size=n, max_size=n))
    bits = draw(st.lists(st.integers(1, 6), min_size=n, max_size=n))
    return op_inc_sort(Particle(f"p{i}", b, d) for i, (b, d) in enumerate(zip(bits, deadlines)))


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
