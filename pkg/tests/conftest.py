from __future__ import annotations

import random

import pytest
from hypothesis import settings

from densemotif import SequenceStore

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

WORKED = "AdBeCfAgBhC"


@pytest.fixture
def worked() -> SequenceStore:
    return SequenceStore.from_string(WORKED)


def random_store(rng: random.Random, n: int, alphabet: str, separators: float = 0.0) -> SequenceStore:
    chars = [rng.choice(alphabet) for _ in range(n)]
    for i in range(1, n - 1):
        if rng.random() < separators:
            chars[i] = "$"
    return SequenceStore.from_string("".join(chars), alphabet)
