import itertools

import numpy as np
import pytest

from elrc import CodeParams, build_parity_check


def brute_kernel(p):
    """All words w with H w = 0, by enumerating every binary word of length n."""
    h = build_parity_check(p).rows.astype(np.int64)
    words = np.array(list(itertools.product((0, 1), repeat=p.n)), dtype=np.int64)
    return words[~((words @ h.T) % 2).any(axis=1)]


@pytest.fixture
def p22():
    return CodeParams(2, 2)


@pytest.fixture
def p23():
    return CodeParams(2, 3)
