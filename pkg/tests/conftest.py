"""Shared corpora for the test suite, cached per session."""

from functools import lru_cache

import pytest

from ktrees.isomorphism import enumerate_ktrees_up_to_iso


@lru_cache(maxsize=None)
def ktree_classes(k, n):
    """Isomorphism-class representatives of k-trees of order n."""
    return tuple(enumerate_ktrees_up_to_iso(k, n))


@lru_cache(maxsize=None)
def tree_classes(n):
    return ktree_classes(1, n)


def trees_upto(n):
    out = []
    for m in range(1, n + 1):
        out.extend(tree_classes(m))
    return out


@pytest.fixture(scope="session")
def small_trees():
    """All tree classes with up to 8 vertices."""
    return trees_upto(8)
