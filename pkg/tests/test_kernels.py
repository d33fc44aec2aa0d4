"""The numba kernels and the numpy fallback must agree bit for bit."""
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symext import _kernels
from symext.corpus import lemma_instances
from symext.homogeneity import _encode, perm_table

NP = _kernels.numpy_impl
NB = _kernels.numba_impl
pytestmark = pytest.mark.skipif(NB is None, reason="numba not importable")

seeds = st.integers(0, 2**32 - 1)


def rel(rng, n, p):
    m = rng.random((n, n)) < p
    return m


@given(seeds, st.integers(1, 9))
@settings(max_examples=60, deadline=None)
def test_preorder_violations(seed, n):
    m = rel(np.random.default_rng(seed), n, 0.3)
    for a, b in zip(NP.preorder_violations(m), NB.preorder_violations(m)):
        np.testing.assert_array_equal(a, b)


@given(seeds, st.integers(1, 9))
@settings(max_examples=60, deadline=None)
def test_compat_matrix(seed, n):
    m = rel(np.random.default_rng(seed), n, 0.3)
    np.testing.assert_array_equal(NP.compat_matrix(m), NB.compat_matrix(m))


@given(seeds, st.integers(1, 7), st.integers(0, 6))
@settings(max_examples=60, deadline=None)
def test_homogeneity_witness(seed, n, gsize):
    rng = np.random.default_rng(seed)
    compat = rel(rng, n, 0.5)
    group = np.array([rng.permutation(n) for _ in range(gsize)], dtype=np.int64).reshape(gsize, n)
    rows, cols = rng.random(n) < 0.7, rng.random(n) < 0.7
    np.testing.assert_array_equal(NP.homogeneity_witness(group, compat, rows, cols),
                                  NB.homogeneity_witness(group, compat, rows, cols))


def test_lemma_level_table_on_corpus():
    perms = perm_table(4)
    for i, L in enumerate(lemma_instances(3, 3, 2, 4)):
        if i % 37:
            continue
        q, qp, base, fmin = _encode(L)
        a = NP.lemma_level_table(perms, q, qp, base, fmin, L.n)
        b = NB.lemma_level_table(perms, q, qp, base, fmin, L.n)
        np.testing.assert_array_equal(a, b)
        ca, cb = NP.first_product(a), NB.first_product(b)
        assert (ca is None) == (cb is None)
        if ca is not None:
            np.testing.assert_array_equal(ca, cb)


@given(seeds, st.integers(1, 5), st.integers(1, 6))
@settings(max_examples=60, deadline=None)
def test_first_product(seed, levels, n):
    ok = np.random.default_rng(seed).random((levels, n)) < 0.4
    a, b = NP.first_product(ok), NB.first_product(ok)
    assert (a is None) == (b is None)
    if a is not None:
        np.testing.assert_array_equal(a, b)


def test_backend_flag():
    code = "from symext import _kernels; print(_kernels.BACKEND)"
    for want in ("numpy", "numba"):
        env = dict(os.environ, SYMEXT_BACKEND=want)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        assert out.stdout.strip() == want
    env = dict(os.environ, SYMEXT_BACKEND="fortran")
    bad = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert bad.returncode != 0 and "SYMEXT_BACKEND" in bad.stderr
