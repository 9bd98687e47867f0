import math

from hypothesis import settings, strategies as st

from culminating.core import StepSystem

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SYSTEMS = [StepSystem(1, 1), StepSystem(2, 1), StepSystem(1, 2), StepSystem(3, 2), StepSystem(5, 3)]


@st.composite
def systems(draw, max_step=5):
    a = draw(st.integers(1, max_step))
    b = draw(st.integers(1, max_step).filter(lambda b: math.gcd(a, b) == 1))
    return StepSystem(a, b)


def words(min_size=0, max_size=16):
    return st.text(alphabet="ud", min_size=min_size, max_size=max_size)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.REPORT, key=lambda l: int(l.split(".")[0].split()[-1])):
        terminalreporter.write_line(line)
