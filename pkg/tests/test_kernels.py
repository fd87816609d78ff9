import os
import subprocess
import sys

import numpy as np
import pytest

from projtab import _kernels as K


@pytest.mark.parametrize("n", range(0, 7))
def test_word_counts(n):
    words = K.generate_words(n)
    assert words.shape == (K.double_factorial(n), 2 * n)


@pytest.mark.parametrize("n", range(1, 7))
def test_words_are_normalized_and_distinct(n):
    words = K.generate_words(n)
    assert len({w.tobytes() for w in words}) == len(words)
    for w in words[:: max(1, len(words) // 200)]:
        firsts = [x for i, x in enumerate(w) if x not in w[:i]]
        assert firsts == list(range(n))
        assert sorted(w) == sorted(list(range(n)) * 2)


@pytest.mark.skipif(K.BACKEND != "numba", reason="numba not active")
@pytest.mark.parametrize("n", range(1, 7))
def test_numba_matches_numpy(n):
    nb = K.generate_words(n)
    npy = K.generate_words_numpy(n)
    key = lambda a: sorted(map(bytes, a.astype(np.int8)))
    assert key(nb) == key(npy)
    assert np.array_equal(K._parity_mask_nb(npy), K.parity_mask_numpy(npy))
    assert np.array_equal(K._prime_mask_nb(npy), K.prime_mask_numpy(npy))
    assert np.array_equal(K._realizable_roles_nb(npy), K.realizable_roles_numpy(npy))


def test_numpy_realizable_chunking():
    words = K.generate_words_numpy(5)
    assert np.array_equal(
        K.realizable_roles_numpy(words, chunk=7), K.realizable_roles_numpy(words)
    )


def test_known_counts_n3():
    words = K.generate_words(3)
    ok = K.realizable_roles(words)
    # 123123 with alternating arrows; parity and split filters agree
    i = [j for j, w in enumerate(words) if list(w) == [0, 1, 2, 0, 1, 2]][0]
    assert ok[i].sum() == 2
    assert K.parity_mask(words)[i] and K.prime_mask(words)[i]


def test_env_flag_selects_numpy():
    env = dict(os.environ, PROJTAB_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from projtab import _kernels; print(_kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"
