import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from solgeo.instances import MultiGraph


def thread_map(fn, items):
    """Map across seeds/cells on a small thread pool; numpy eigensolves
    release the GIL so this parallelizes the heavy sweeps."""
    cap = os.environ.get("SOLGEO_THREADS")
    workers = max(1, min(int(cap) if cap else (os.cpu_count() or 1), 8))
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(fn, items))


def petersen_graph() -> MultiGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return MultiGraph.build(10, outer + inner + spokes)


def planted_xor_signs(table: np.ndarray, indices) -> np.ndarray:
    """Signings under which the given assignment indices satisfy exactly."""
    return np.stack([table[i] for i in indices]).astype(np.int8)


@pytest.fixture
def petersen() -> MultiGraph:
    return petersen_graph()
