import itertools

import numpy as np
import pytest

from blockalign.editdp import edit_distance_dp
from blockalign.seqcore import reverse_complement
from blockalign.wtable import satisfies_c


def random_dna(rng, n):
    return "".join(rng.choice(list("ACGT"), size=n))


def brute_w_distance(s, t, i, j, params):
    """(min dist_br, shortest tied substring length) over every non-empty substring of ``t``."""
    x = s[i:i + j]
    best = None
    for a, b in itertools.combinations(range(len(t) + 1), 2):
        y = t[a:b]
        fwd = edit_distance_dp(x, y)
        rev = edit_distance_dp(x, reverse_complement(y)) + params.cost_reversal
        for d in (fwd, rev):
            if best is None or (d, b - a) < best:
                best = (d, b - a)
    return best


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE = {}


def record_criterion(number, title, passed, detail=""):
    ACCEPTANCE[number] = (title, passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number}. {title}: {detail}")
