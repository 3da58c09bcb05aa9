"""Axis-aligned subspace selectors, sub-block projection, and the
combinatorial weight that makes the pure-state sub-block identity exact."""
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import DimensionError
from .states import BipartiteState

#: sub-blocks with a smaller trace are treated as zero blocks downstream
ZERO_BLOCK_TRACE = 1e-14


@dataclass(frozen=True, order=True)
class Selector:
    """Strictly increasing row/column index subsets defining one sub-block."""

    rows: tuple
    cols: tuple

    def __post_init__(self):
        for name, idx in (("rows", self.rows), ("cols", self.cols)):
            t = tuple(int(x) for x in idx)
            if len(t) < 2 or any(b <= a for a, b in zip(t, t[1:])):
                raise DimensionError(
                    f"{name} must be a strictly increasing subset of size >= 2, got {idx}")
            object.__setattr__(self, name, t)

    @property
    def s(self):
        return len(self.rows)

    @property
    def t(self):
        return len(self.cols)

    def composite_indices(self, n):
        """Flat indices i*n+j of the selected block, in block-internal order."""
        return [i * n + j for i in self.rows for j in self.cols]


def _check_sizes(m, n, s, t):
    if not (2 <= s <= m):
        raise DimensionError(f"need 2 <= s <= m, got s={s}, m={m}")
    if not (2 <= t <= n):
        raise DimensionError(f"need 2 <= t <= n, got t={t}, n={n}")


def selectors(m, n, s, t):
    """All (m choose s)*(n choose t) selectors, in lexicographic order."""
    _check_sizes(m, n, s, t)
    return [Selector(rows, cols)
            for rows in itertools.combinations(range(m), s)
            for cols in itertools.combinations(range(n), t)]


def project(state, sel):
    """Unnormalized s x t sub-block of a bipartite state, compactly relabeled."""
    if sel.rows[-1] >= state.m or sel.cols[-1] >= state.n:
        raise DimensionError(
            f"selector {sel} out of range for a {state.m}x{state.n} state")
    idx = sel.composite_indices(state.n)
    block = state.mat[np.ix_(idx, idx)]
    return BipartiteState(block, sel.s, sel.t, normalized=False)


def subspace_coefficient(m, n, s, t):
    """Weight 1 / [(m-2 choose s-2) * (n-2 choose t-2)].

    This is the reciprocal of the number of selectors whose rows contain a
    fixed pair of A-levels and whose columns contain a fixed pair of
    B-levels, which is exactly the overcount of each 2x2 minor in the
    sub-block sum.
    """
    _check_sizes(m, n, s, t)
    return Fraction(1, comb(m - 2, s - 2) * comb(n - 2, t - 2))


def selector_count(m, n, s, t):
    """Number of selectors: (m choose s) * (n choose t)."""
    _check_sizes(m, n, s, t)
    return comb(m, s) * comb(n, t)


def diagonal_multiplicity(m, n, s, t):
    """How many selectors contain any fixed composite diagonal entry."""
    _check_sizes(m, n, s, t)
    return comb(m - 1, s - 1) * comb(n - 1, t - 1)
