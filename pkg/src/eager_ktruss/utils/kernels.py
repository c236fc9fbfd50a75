"""Compiled kernels for support computation and edge pruning.

All kernels operate on the raw ``row_ptr`` / ``col_idx`` arrays of a
zero-terminated CSR. Support increments go to ``partial[worker]``, a private
row per worker; the caller sums the rows once the parallel region has joined.
Scans stop at the first zero slot, so no row lengths are consulted.
"""

import numba
import numpy as np
from numba import njit, prange


def hardware_workers() -> int:
    """Size of the numba thread pool."""
    return int(numba.config.NUMBA_NUM_THREADS)


def apply_worker_count(workers: int) -> int:
    """Size the active thread team for the next parallel kernel.

    Callers clamp ``workers`` to the pool size first; the clamp here only
    guards direct calls.

    Returns:
        Number of threads that will run the blocks
    """
    threads = max(1, min(workers, hardware_workers()))
    numba.set_num_threads(threads)
    return threads


@njit(cache=True)
def intersect_tails_kernel(row_ptr, col_idx, pivot_slot, predecessor, sink):
    """Merge the row tail after ``pivot_slot`` with the row of ``predecessor``.

    Every common neighbour closes a triangle and bumps the matching slot on
    both sides. The pivot slot itself is left to the caller.
    """
    a = np.int64(pivot_slot) + 1
    b = np.int64(row_ptr[predecessor])
    hits = 0
    while col_idx[a] != 0 and col_idx[b] != 0:
        wa = col_idx[a]
        wb = col_idx[b]
        if wa == wb:
            sink[a] += 1
            sink[b] += 1
            hits += 1
            a += 1
            b += 1
        elif wb > wa:
            a += 1
        else:
            b += 1
    return hits


@njit(cache=True)
def serial_supports_kernel(row_ptr, col_idx, num_vertices, partial):
    sink = partial[0]
    total = 0
    for v in range(1, num_vertices + 1):
        start = np.int64(row_ptr[v])
        stop = np.int64(row_ptr[v + 1])
        for slot in range(start, stop):
            pred = col_idx[slot]
            if pred == 0:
                break
            hits = intersect_tails_kernel(row_ptr, col_idx, slot, pred, sink)
            sink[slot] += hits
            total += hits
    return total


@njit(parallel=True, cache=True)
def coarse_supports_kernel(row_ptr, col_idx, num_vertices, partial):
    """One task per row; rows are dealt to workers in contiguous blocks."""
    workers = partial.shape[0]
    total = 0
    for worker in prange(workers):
        sink = partial[worker]
        first = 1 + (num_vertices * worker) // workers
        last = 1 + (num_vertices * (worker + 1)) // workers
        found = 0
        for v in range(first, last):
            start = np.int64(row_ptr[v])
            stop = np.int64(row_ptr[v + 1])
            for slot in range(start, stop):
                pred = col_idx[slot]
                if pred == 0:
                    break
                hits = intersect_tails_kernel(row_ptr, col_idx, slot, pred, sink)
                sink[slot] += hits
                found += hits
        total += found
    return total


@njit(parallel=True, cache=True)
def fine_supports_kernel(row_ptr, col_idx, partial):
    """One task per slot; the whole slot range is dealt out in equal blocks.

    Sentinel and pruned slots are tasks too and fall through immediately.
    """
    workers = partial.shape[0]
    total_slots = col_idx.shape[0]
    total = 0
    for worker in prange(workers):
        sink = partial[worker]
        first = (total_slots * worker) // workers
        last = (total_slots * (worker + 1)) // workers
        found = 0
        for slot in range(first, last):
            pred = col_idx[slot]
            if pred == 0:
                continue
            hits = intersect_tails_kernel(row_ptr, col_idx, slot, pred, sink)
            sink[slot] += hits
            found += hits
        total += found
    return total


@njit(parallel=True, cache=True)
def prune_rows_kernel(row_ptr, col_idx, counts, num_vertices, threshold):
    """Stable in-place compaction of every row; returns the edges dropped.

    Survivors keep their ascending order at the row front and the vacated
    slots are zeroed, so each row stays zero-prefix-free.
    """
    removed = 0
    for v in prange(1, num_vertices + 1):
        start = np.int64(row_ptr[v])
        stop = np.int64(row_ptr[v + 1])
        write = start
        dropped = 0
        for slot in range(start, stop):
            w = col_idx[slot]
            if w == 0:
                break
            if counts[slot] >= threshold:
                col_idx[write] = w
                write += 1
            else:
                dropped += 1
        for slot in range(write, write + dropped):
            col_idx[slot] = 0
        removed += dropped
    return removed
