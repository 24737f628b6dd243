"""
Shared fixtures: partitions, seeded generators and a CLI runner
"""

import json

import numpy as np
import pytest


from combinatorics import Partition, partitions_of


def small_partitions(max_n: int):
    return [p for n in range(1, max_n + 1) for p in partitions_of(n)]


@pytest.fixture
def partitions_upto_4():
    return small_partitions(4)


@pytest.fixture
def partitions_upto_5():
    return small_partitions(5)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def part():
    """Partition from its text form"""
    return Partition.parse


class CliResult:
    def __init__(self, code: int, out: str, err: str):
        self.code = code
        self.out = out
        self.err = err

    @property
    def doc(self):
        return json.loads(self.out)


@pytest.fixture
def cli(capsys):
    """Run app.main(argv) and capture its streams"""
    from app import main

    def run(*argv: str) -> CliResult:
        code = main(list(argv))
        captured = capsys.readouterr()
        return CliResult(code, captured.out, captured.err)

    return run
