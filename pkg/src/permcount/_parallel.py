import os
from concurrent.futures import ThreadPoolExecutor


def resolve_workers(workers) -> int:
    if workers in (None, "auto"):
        return os.cpu_count() or 1
    workers = int(workers)
    if workers < 1:
        raise ValueError("workers must be positive")
    return workers


def split_rows(arr, parts):
    """Contiguous row blocks; block boundaries depend only on ``parts``."""
    n = arr.shape[0]
    if parts <= 1 or n < 2:
        return [arr]
    step = -(-n // parts)
    return [arr[lo:lo + step] for lo in range(0, n, step)]


def map_sum(func, chunks, workers=1):
    """Sum ``func(chunk)`` over chunks; kernels release the GIL so threads scale."""
    workers = resolve_workers(workers)
    if workers == 1 or len(chunks) == 1:
        return sum(func(c) for c in chunks)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(func, chunks))
