"""Bulk kernels for the exhaustive enumerator.

Every kernel has a numba implementation and a vectorised numpy one with the
same signature.  Set ``PROJTAB_DISABLE_NUMBA=1`` (or uninstall numba) to use
the numpy path.

Words are ``int8`` arrays of shape ``(W, 2n)`` holding chord indices
``0..n-1`` with first occurrences increasing.  A role mask has bit ``k`` set
when chord ``k``'s first occurrence is its tail.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

__all__ = [
    "BACKEND",
    "double_factorial",
    "generate_words",
    "parity_mask",
    "prime_mask",
    "realizable_roles",
    "generate_words_numpy",
    "parity_mask_numpy",
    "prime_mask_numpy",
    "realizable_roles_numpy",
]

_disabled = os.environ.get("PROJTAB_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")
BACKEND = "numpy" if (_disabled or numba is None) else "numba"


def double_factorial(n: int) -> int:
    """(2n - 1)!!, the number of normalized double-occurrence words."""
    out = 1
    for k in range(1, 2 * n, 2):
        out *= k
    return out


# ---------------------------------------------------------------- numpy path


def generate_words_numpy(n: int) -> np.ndarray:
    m = 2 * n
    words = np.full((1, m), -1, dtype=np.int8)
    for label in range(n):
        free = words < 0
        # first free slot gets the new label
        first = np.argmax(free, axis=1)
        rows = np.arange(len(words))
        words[rows, first] = label
        free[rows, first] = False
        # branch over every later free slot for the partner
        k = m - 2 * label - 1
        slots = np.nonzero(free)[1].reshape(len(words), k)
        words = np.repeat(words, k, axis=0)
        words[np.arange(len(words)), slots.reshape(-1)] = label
    return words


def _spans(words: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    W, m = words.shape
    n = m // 2
    order = np.argsort(words, axis=1, kind="stable").reshape(W, n, 2)
    return order[:, :, 0], order[:, :, 1]


def _interleave(words: np.ndarray) -> np.ndarray:
    a, b = _spans(words)
    c = a[:, None, :]
    e = b[:, None, :]
    lo = a[:, :, None]
    hi = b[:, :, None]
    return ((lo < c) & (c < hi)) != ((lo < e) & (e < hi))


def parity_mask_numpy(words: np.ndarray) -> np.ndarray:
    if words.shape[1] == 0:
        return np.ones(len(words), dtype=bool)
    return ~np.any(_interleave(words).sum(axis=2) % 2, axis=1)


def _partner(words: np.ndarray) -> np.ndarray:
    a, b = _spans(words)
    W, m = words.shape
    p = np.empty((W, m), dtype=np.int64)
    rows = np.arange(W)[:, None]
    p[rows, a] = b
    p[rows, b] = a
    return p


def prime_mask_numpy(words: np.ndarray) -> np.ndarray:
    W, m = words.shape
    ok = np.ones(W, dtype=bool)
    if m < 4:
        return ok
    p = _partner(words)
    for s in range(m):
        lo = np.full(W, m, dtype=np.int64)
        hi = np.full(W, -1, dtype=np.int64)
        for e in range(s, m - 1):
            lo = np.minimum(lo, p[:, e])
            hi = np.maximum(hi, p[:, e])
            ok &= ~((lo >= s) & (hi <= e))
    return ok


def _rotation_halves(words: np.ndarray, masks: np.ndarray) -> np.ndarray:
    """sigma for every (word, mask) pair, shape (W, M, 2m)."""
    W, m = words.shape
    n = m // 2
    a, b = _spans(words)  # first / second position of each chord
    bits = ((masks[None, :, None] >> np.arange(n)[None, None, :]) & 1).astype(bool)
    a = np.broadcast_to(a[:, None, :], (W, len(masks), n))
    b = np.broadcast_to(b[:, None, :], (W, len(masks), n))
    tail = np.where(bits, a, b)
    head = np.where(bits, b, a)
    rot = np.stack(
        [2 * tail, 2 * head, 2 * ((tail - 1) % m) + 1, 2 * ((head - 1) % m) + 1], axis=-1
    )
    sigma = np.empty((W, len(masks), 2 * m), dtype=np.int64)
    wi = np.arange(W)[:, None, None]
    mi = np.arange(len(masks))[None, :, None]
    for j in range(4):
        sigma[wi, mi, rot[..., j]] = rot[..., (j + 1) % 4]
    return sigma


def _cycle_count(perm: np.ndarray) -> np.ndarray:
    """Number of cycles of each permutation along the last axis."""
    size = perm.shape[-1]
    label = np.broadcast_to(np.arange(size), perm.shape).copy()
    jump = perm.copy()
    steps = 1
    while steps < size:
        label = np.minimum(label, np.take_along_axis(label, jump, axis=-1))
        jump = np.take_along_axis(jump, jump, axis=-1)
        steps *= 2
    return (label == np.arange(size)).sum(axis=-1)


def realizable_roles_numpy(words: np.ndarray, chunk: int = 4096) -> np.ndarray:
    W, m = words.shape
    n = m // 2
    masks = np.arange(1 << n, dtype=np.int64)
    out = np.zeros((W, len(masks)), dtype=bool)
    for s in range(0, W, chunk):
        sigma = _rotation_halves(words[s:s + chunk], masks)
        flip = np.broadcast_to(np.arange(2 * m) ^ 1, sigma.shape)
        phi = np.take_along_axis(sigma, flip, axis=-1)
        out[s:s + chunk] = _cycle_count(phi) == n + 2
    return out


# ---------------------------------------------------------------- numba path

if numba is not None:

    @numba.njit(cache=True)
    def _generate_words_nb(n):
        m = 2 * n
        total = 1
        for k in range(1, m, 2):
            total *= k
        out = np.empty((total, m), dtype=np.int8)
        word = np.full(m, -1, dtype=np.int8)
        # slot[d] / partner[d]: positions holding label d; partner -1 means unset
        slot = np.zeros(n, dtype=np.int64)
        partner = np.full(n, -1, dtype=np.int64)
        row = 0
        depth = 0
        while depth >= 0:
            if depth == n:
                out[row] = word
                row += 1
                depth -= 1
                continue
            if partner[depth] < 0:
                f = 0
                while word[f] >= 0:
                    f += 1
                slot[depth] = f
                word[f] = depth
                nxt = f + 1
            else:
                word[partner[depth]] = -1
                nxt = partner[depth] + 1
            while nxt < m and word[nxt] >= 0:
                nxt += 1
            if nxt >= m:
                word[slot[depth]] = -1
                partner[depth] = -1
                depth -= 1
                continue
            word[nxt] = depth
            partner[depth] = nxt
            depth += 1
        return out

    @numba.njit(cache=True)
    def _parity_mask_nb(words):
        W, m = words.shape
        n = m // 2
        out = np.ones(W, dtype=np.bool_)
        a = np.empty(n, dtype=np.int64)
        b = np.empty(n, dtype=np.int64)
        for w in range(W):
            for k in range(n):
                a[k] = -1
            for i in range(m):
                k = words[w, i]
                if a[k] < 0:
                    a[k] = i
                else:
                    b[k] = i
            for i in range(n):
                cnt = 0
                for j in range(n):
                    if ((a[i] < a[j]) and (a[j] < b[i])) != ((a[i] < b[j]) and (b[j] < b[i])):
                        cnt += 1
                if cnt % 2:
                    out[w] = False
                    break
        return out

    @numba.njit(cache=True)
    def _prime_mask_nb(words):
        W, m = words.shape
        out = np.ones(W, dtype=np.bool_)
        p = np.empty(m, dtype=np.int64)
        first = np.empty(m // 2, dtype=np.int64)
        for w in range(W):
            for k in range(m // 2):
                first[k] = -1
            for i in range(m):
                k = words[w, i]
                if first[k] < 0:
                    first[k] = i
                else:
                    p[i] = first[k]
                    p[first[k]] = i
            found = False
            for s in range(m):
                lo = m
                hi = -1
                for e in range(s, m - 1):
                    if p[e] < lo:
                        lo = p[e]
                    if p[e] > hi:
                        hi = p[e]
                    if lo >= s and hi <= e:
                        found = True
                        break
                if found:
                    break
            out[w] = not found
        return out

    @numba.njit(cache=True)
    def _realizable_roles_nb(words):
        W, m = words.shape
        n = m // 2
        M = 1 << n
        out = np.zeros((W, M), dtype=np.bool_)
        a = np.empty(n, dtype=np.int64)
        b = np.empty(n, dtype=np.int64)
        sigma = np.empty(2 * m, dtype=np.int64)
        seen = np.empty(2 * m, dtype=np.bool_)
        for w in range(W):
            for k in range(n):
                a[k] = -1
            for i in range(m):
                k = words[w, i]
                if a[k] < 0:
                    a[k] = i
                else:
                    b[k] = i
            for mask in range(M):
                for k in range(n):
                    if (mask >> k) & 1:
                        t = a[k]
                        h = b[k]
                    else:
                        t = b[k]
                        h = a[k]
                    ot = 2 * t
                    oh = 2 * h
                    it = 2 * ((t - 1) % m) + 1
                    ih = 2 * ((h - 1) % m) + 1
                    sigma[ot] = oh
                    sigma[oh] = it
                    sigma[it] = ih
                    sigma[ih] = ot
                for i in range(2 * m):
                    seen[i] = False
                faces = 0
                for s in range(2 * m):
                    if seen[s]:
                        continue
                    faces += 1
                    h = s
                    while not seen[h]:
                        seen[h] = True
                        h = sigma[h ^ 1]
                out[w, mask] = faces == n + 2
        return out


def generate_words(n: int) -> np.ndarray:
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    if BACKEND == "numba":
        return _generate_words_nb(n)
    return generate_words_numpy(n)


def parity_mask(words: np.ndarray) -> np.ndarray:
    if BACKEND == "numba" and words.shape[1]:
        return _parity_mask_nb(words)
    return parity_mask_numpy(words)


def prime_mask(words: np.ndarray) -> np.ndarray:
    if BACKEND == "numba" and words.shape[1]:
        return _prime_mask_nb(words)
    return prime_mask_numpy(words)


def realizable_roles(words: np.ndarray) -> np.ndarray:
    if BACKEND == "numba" and words.shape[1] and len(words):
        return _realizable_roles_nb(words)
    return realizable_roles_numpy(words)
