"""Permutation sums of two noncommutative generators.

The central object is the sum of all distinct products containing
exactly ``u`` factors of one ring element and ``v`` factors of another;
it has ``C(u+v, u)`` terms.  Two evaluators are provided:

* :func:`perm_sum_naive` enumerates every word and multiplies it out --
  the definitional trust anchor, exponential in ``u+v``;
* :func:`perm_sum_dp` exploits the left-split recursion

      P(u, v) = L0·P(u-1, v) + L1·P(u, v-1),
      P(u, 0) = L0^u,  P(0, v) = L1^v,

  over a memo table, so only Θ(u·v) ring multiplications are
  performed.  The table lives for a single top-level call; there is no
  cross-call caching.

Both evaluators accept a :class:`MultCounter` that records the exact
number of ring multiplications performed, for benchmarking.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

from .algebra import check_same_backend, compose, ring_one, ring_zero, word_to_element

# Words longer than this are refused by the enumerator: materializing
# C(30, 15) ~ 1.55e8 words is already infeasible, so fail fast instead
# of exhausting memory or time.  The CLI can override via the
# NONCOMM_RECUR_CAP environment variable.
DEFAULT_WORD_CAP = 30

# Words per task when naive evaluation is partitioned across threads.
# Fixed independently of the thread count so the reduction order (and
# hence the result, even on the float backend) does not depend on it.
_THREAD_BLOCK = 2048


class CapExceededError(ValueError):
    """Word length u+v exceeds the enumeration cap."""

    def __init__(self, total, cap):
        super().__init__(
            f"cannot enumerate words of length {total}: "
            f"exceeds the enumeration cap of {cap} letters")
        self.total = total
        self.cap = cap


class MultCounter:
    """Monotone counter of ring multiplications during one evaluation."""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def tick(self, n=1):
        self.count += n

    def reset(self):
        self.count = 0

    def __repr__(self):
        return f"MultCounter(count={self.count})"


def binom(n, k):
    """C(n, k) in exact big-integer arithmetic, 0 outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def count_terms(u, v):
    """Number of distinct words with u letters of one kind and v of the other."""
    _check_counts(u, v)
    return math.comb(u + v, u)


def stifel_check(n, k):
    """Whether C(n, k) + C(n, k+1) = C(n+1, k+1) holds exactly.

    Out-of-range binomials count as 0, so this is total in k (and always
    true); exposed as a test oracle for the recursion's counting step.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return binom(n, k) + binom(n, k + 1) == binom(n + 1, k + 1)


def _check_counts(u, v):
    if u < 0 or v < 0:
        raise ValueError(f"letter counts must be nonnegative, got ({u}, {v})")


def _resolve_cap(cap):
    return DEFAULT_WORD_CAP if cap is None else cap


def enumerate_words(u, v, cap=None):
    """All distinct words with u letters 0 and v letters 1, lexicographically.

    Returns a lazy iterator of word tuples (letter 0 sorts before 1);
    its length is ``count_terms(u, v)``.  Raises
    :class:`CapExceededError` eagerly when ``u + v`` exceeds the cap.
    """
    _check_counts(u, v)
    cap = _resolve_cap(cap)
    if u + v > cap:
        raise CapExceededError(u + v, cap)
    return _next_permutation_stream(u, v)


def _next_permutation_stream(u, v):
    word = [0] * u + [1] * v
    n = u + v
    while True:
        yield tuple(word)
        i = n - 2
        while i >= 0 and word[i] >= word[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while word[j] <= word[i]:
            j -= 1
        word[i], word[j] = word[j], word[i]
        word[i + 1:] = word[:i:-1]


def perm_sum_naive(L0, L1, u, v, counter=None, cap=None, threads=1):
    """Sum of all distinct products of u factors L0 and v factors L1,
    evaluated word by word.

    With ``threads > 1`` the word stream is split into fixed-size blocks
    evaluated concurrently and reduced in block order, so exact backends
    give results identical to the single-threaded path.
    """
    check_same_backend(L0, L1)
    words = enumerate_words(u, v, cap=cap)
    if threads <= 1:
        total = ring_zero(L0)
        for word in words:
            total = total + word_to_element(word, L0, L1, counter)
        return total
    return _naive_threaded(words, L0, L1, counter, threads)


def _naive_threaded(words, L0, L1, counter, threads):
    def eval_block(block):
        local = MultCounter()
        partial = None
        for word in block:
            element = word_to_element(word, L0, L1, local)
            partial = element if partial is None else partial + element
        return partial, local.count

    total = ring_zero(L0)
    mults = 0
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for partial, block_mults in pool.map(eval_block, _blocks(words, _THREAD_BLOCK)):
            total = total + partial
            mults += block_mults
    if counter is not None:
        counter.tick(mults)
    return total


def _blocks(iterable, size):
    block = []
    for item in iterable:
        block.append(item)
        if len(block) == size:
            yield block
            block = []
    if block:
        yield block


def perm_sum_dp(L0, L1, u, v, counter=None):
    """Permutation sum via the left-split recursion and a memo table.

    Exactly equal to :func:`perm_sum_naive` on exact backends, at
    2uv + max(u-1, 0) + max(v-1, 0) ring multiplications instead of
    C(u+v, u) word evaluations.
    """
    return perm_sum_batch(L0, L1, [(u, v)], counter=counter)[0]


def perm_sum_batch(L0, L1, keys, counter=None):
    """Evaluate several permutation sums against one shared memo table.

    ``keys`` is a sequence of (u, v) pairs; the result list is aligned
    with it.  Cells of the table are computed bottom-up over the union
    of the requested rectangles, so each distinct cell costs its two
    ring multiplications once per call.  The table is discarded on
    return.
    """
    check_same_backend(L0, L1)
    keys = list(keys)
    for u, v in keys:
        _check_counts(u, v)
    if not keys:
        return []

    # Row i of the table needs columns 0..col_limit(i); the limit is the
    # largest v requested by any key at row >= i, nonincreasing in i.
    max_u = max(u for u, _ in keys)
    col_limit = [max(v for u, v in keys if u >= i) for i in range(max_u + 1)]

    one = ring_one(L0)
    table = {(0, 0): one}
    for j in range(1, col_limit[0] + 1):
        if j == 1:
            table[(0, 1)] = L1
        else:
            table[(0, j)] = compose(L1, table[(0, j - 1)])
            if counter is not None:
                counter.tick()
    for i in range(1, max_u + 1):
        if i == 1:
            table[(1, 0)] = L0
        else:
            table[(i, 0)] = compose(L0, table[(i - 1, 0)])
            if counter is not None:
                counter.tick()
        for j in range(1, col_limit[i] + 1):
            table[(i, j)] = (compose(L0, table[(i - 1, j)])
                             + compose(L1, table[(i, j - 1)]))
            if counter is not None:
                counter.tick(2)
    return [table[key] for key in keys]
