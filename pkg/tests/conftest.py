import numpy as np
import pytest

from femafs.dataset import LabeledDataset


def random_dataset(rng, m=None, n=None, c=None, max_m=30, max_n=4, max_c=3):
    """Normalized dataset in [0, 1] with every class present."""
    c = c or int(rng.integers(2, max_c + 1))
    m = m or int(rng.integers(max(c, 2) * 2, max_m + 1))
    n = n or int(rng.integers(1, max_n + 1))
    X = rng.uniform(0.0, 1.0, (m, n))
    y = np.concatenate([np.arange(1, c + 1), rng.integers(1, c + 1, m - c)])
    rng.shuffle(y)
    return LabeledDataset(X, y, class_count=c)


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)


@pytest.fixture
def tiny_csv(tmp_path):
    path = tmp_path / "tiny.csv"
    path.write_text("dur,proto,label\n0.5,tcp,normal\n1.5,udp,anomaly\n2.5,tcp,normal\n")
    return path


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
