"""Deterministic numeric helpers: reductions, low-discrepancy sampling, threads."""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

__all__ = ["pairwise_sum", "halton", "halton_shell", "thread_count", "chunked_map"]


def pairwise_sum(values, axis=-1):
    """Sum by recursive halving.

    Fixed summation tree, so the reduction is bit-reproducible regardless of
    how the values were produced or how many worker threads ran upstream.
    """
    a = np.asarray(values, dtype=float)
    a = np.moveaxis(a, axis, -1)
    while a.shape[-1] > 1:
        n = a.shape[-1]
        if n % 2:
            head, tail = a[..., :-1], a[..., -1:]
            a = np.concatenate([head[..., 0::2] + head[..., 1::2], tail], axis=-1)
        else:
            a = a[..., 0::2] + a[..., 1::2]
    return a[..., 0]


def _radical_inverse(indices, base):
    out = np.zeros(len(indices))
    frac = 1.0 / base
    idx = np.array(indices, dtype=np.int64)
    while np.any(idx > 0):
        out += (idx % base) * frac
        idx //= base
        frac /= base
    return out


def halton(n, skip=20):
    """First n Halton points in bases (2, 3, 5), shape (n, 3)."""
    idx = np.arange(skip, skip + n)
    return np.stack([_radical_inverse(idx, b) for b in (2, 3, 5)], axis=1)


def halton_shell(n, r_min, r_max, center=(0.0, 0.0, 0.0)):
    """Deterministic low-discrepancy sample of a coordinate shell.

    Radii fill [r_min, r_max] uniformly in volume; directions cover the
    sphere via the (cos theta, phi) area parametrization.
    """
    u = halton(n)
    r = np.cbrt(r_min ** 3 + u[:, 0] * (r_max ** 3 - r_min ** 3))
    ct = 1.0 - 2.0 * u[:, 1]
    st = np.sqrt(np.maximum(1.0 - ct ** 2, 0.0))
    phi = 2.0 * np.pi * u[:, 2]
    pts = np.stack([r * st * np.cos(phi), r * st * np.sin(phi), r * ct], axis=1)
    return pts + np.asarray(center, dtype=float)


def thread_count(requested=None):
    """Worker count: explicit argument, else GEOSTAT_THREADS, else 1."""
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("GEOSTAT_THREADS", "")
    return max(1, int(env)) if env.strip() else 1


def chunked_map(fn, arr, threads=1, min_chunk=64):
    """Apply `fn` to row chunks of `arr`, optionally on a thread pool.

    Results are concatenated in chunk order, so the output is identical for
    any thread count; `fn` must be elementwise in the leading axis.
    """
    arr = np.asarray(arr)
    n = arr.shape[0]
    threads = max(1, threads)
    if threads == 1 or n <= min_chunk:
        return fn(arr)
    bounds = np.linspace(0, n, threads + 1, dtype=int)
    chunks = [arr[a:b] for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(fn, chunks))
    if isinstance(parts[0], tuple):
        return tuple(np.concatenate([p[i] for p in parts], axis=0)
                     for i in range(len(parts[0])))
    return np.concatenate(parts, axis=0)
