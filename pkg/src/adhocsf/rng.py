"""Seeded random streams.

Every realization owns one 64-bit seed. It is expanded through
``numpy.random.SeedSequence`` into independent PCG64 child streams: one for
topology growth and one for search sampling, so changing the query load never
perturbs the grown graph.
"""
from __future__ import annotations

import hashlib
import json

import numpy as np

GROWTH_STREAM = 0
SEARCH_STREAM = 1
_N_STREAMS = 2


def stream(seed: int, which: int) -> np.random.Generator:
    children = np.random.SeedSequence(int(seed)).spawn(_N_STREAMS)
    return np.random.Generator(np.random.PCG64(children[which]))


def growth_rng(seed: int) -> np.random.Generator:
    return stream(seed, GROWTH_STREAM)


def search_rng(seed: int) -> np.random.Generator:
    return stream(seed, SEARCH_STREAM)


def derive_seed(base_seed: int, key: tuple, realization: int) -> int:
    """Stable 64-bit seed for one (parameter tuple, realization) run.

    Hashes a canonical JSON encoding, so the value does not depend on
    ``PYTHONHASHSEED`` or on the order runs are scheduled.
    """
    payload = json.dumps([int(base_seed), list(key), int(realization)], separators=(",", ":"))
    digest = hashlib.blake2b(payload.encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")
