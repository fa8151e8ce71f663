"""All eleven acceptance criteria, one pass/fail line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines.
"""

import time

import pytest

from eppo.acceptance import CRITERIA, RunOptions
from eppo.cli import main

OPTS = RunOptions(seed=7, sample_n=100_000)


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k):
    start = time.perf_counter()
    result = CRITERIA[k - 1](OPTS)
    elapsed = time.perf_counter() - start
    print(f"\n{result.line()}")
    if k == 1:
        assert elapsed <= 300, f"catalog verification took {elapsed:.0f} s"
    assert result.passed, result.detail


def test_criterion_11_verify_twice_is_byte_identical(capsys):
    outs = []
    for _ in range(2):
        code = main(["verify", "--seed", "7", "--format", "records"])
        outs.append(capsys.readouterr().out)
        assert code == 0
    with capsys.disabled():
        print(f"\n{'PASS' if outs[0] == outs[1] else 'FAIL'} [11] determinism: "
              f"two verify runs, {len(outs[0])} bytes each")
    assert outs[0] == outs[1]
