import sys
from pathlib import Path

import hypothesis
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from stallings import Word  # noqa: E402

hypothesis.settings.register_profile("default", max_examples=150, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("default")


def letters(n: int):
    return st.integers(1, n).flatmap(lambda g: st.sampled_from((g, -g)))


raw_sequences = st.integers(1, 4).flatmap(lambda n: st.lists(letters(n), max_size=64))


def words(n: int = 3, max_len: int = 12):
    return st.lists(letters(n), max_size=max_len).map(Word)


@st.composite
def generator_sets(draw, max_n=3, max_gens=4, max_len=6):
    n = draw(st.integers(1, max_n))
    gens = draw(st.lists(words(n, max_len), max_size=max_gens))
    return n, gens


# acceptance results, printed by the terminal summary hook below
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
