"""Trial-level worker pool.

Estimators give every trial its own SeedSequence child, so results are
independent of how trials are chunked; the pool just splits the seed
list and concatenates per-trial outputs in order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np


def map_trials(worker, payload, seeds, threads: int = 1) -> np.ndarray:
    """Run worker(payload, seed_chunk) over chunks of per-trial seeds.

    The worker must return an ndarray whose leading axis indexes trials
    within its chunk; chunks are concatenated in trial order.
    """
    if threads is None or threads <= 1 or len(seeds) <= 1:
        return worker(payload, seeds)
    chunks = [list(c) for c in np.array_split(np.asarray(seeds, dtype=object), threads)
              if len(c)]
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(worker, [payload] * len(chunks), chunks))
    return np.concatenate(parts, axis=0)
