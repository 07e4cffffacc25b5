import pytest
from hypothesis import HealthCheck, settings, strategies as st

from iboxes.cartan import preset
from iboxes.chains import ChainSpec, build_chain
from iboxes.core import ColorSequence
from iboxes.families import family_from_chain

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def seq_of(*colors, lo=1):
    """Sequence from 1-based colors, as written in examples."""
    return ColorSequence.from_word([c - 1 for c in colors], lo=lo)


@st.composite
def words(draw, rank=None, min_len=1, max_len=7):
    rank = rank or draw(st.integers(1, 3))
    return draw(st.lists(st.integers(0, rank - 1), min_size=min_len, max_size=max_len))


@st.composite
def sequences(draw, max_len=7):
    lo = draw(st.integers(-3, 3))
    return ColorSequence.from_word(draw(words(max_len=max_len)), lo=lo)


@st.composite
def chains(draw, max_len=7):
    seq = draw(sequences(max_len=max_len))
    a = draw(st.integers(seq.lo, seq.hi))
    b = draw(st.integers(a, seq.hi))
    word = "".join(draw(st.lists(st.sampled_from("LR"), min_size=b - a, max_size=b - a)))
    return build_chain(seq, ChainSpec(a + word.count("L"), word))


@st.composite
def cartan_chains(draw, max_len=7):
    """A chain over a sequence drawn for one of the corpus Cartan types."""
    c = preset(draw(st.sampled_from(["A2", "A3", "B2", "G2"])))
    w = draw(words(rank=c.rank, max_len=max_len))
    seq = ColorSequence.from_word(w)
    word = "".join(draw(st.lists(st.sampled_from("LR"), min_size=len(w) - 1, max_size=len(w) - 1)))
    return c, build_chain(seq, ChainSpec(1 + word.count("L"), word))


@pytest.fixture
def s121():
    return seq_of(1, 2, 1)


@pytest.fixture
def g2seq():
    return seq_of(1, 2, 1, 2, 1, 2)


@pytest.fixture
def a2():
    return preset("A2")


@pytest.fixture
def g2():
    return preset("G2")


@pytest.fixture
def fplus(s121):
    return family_from_chain(build_chain(s121, ChainSpec(1, "RR")))


@pytest.fixture
def fprime(s121):
    return family_from_chain(build_chain(s121, ChainSpec(2, "RL")))


@pytest.fixture
def g2plus(g2seq):
    return family_from_chain(build_chain(g2seq, ChainSpec(1, "RRRRR")))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
