# -*- coding: utf-8 -*-
u"""Deterministic random substreams and the multinomial bootstrap

Every random draw in bagbayes comes from a :class:`SeedPath`. A path names a
substream by a root seed plus a tuple of 32-bit indices (e.g. replicate,
purpose tag, bootstrap index). Substreams are derived with
:class:`numpy.random.SeedSequence` spawn keys and drive a counter-based
Philox generator, so the same path yields the same numbers regardless of
which thread evaluates it or in what order.

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
from bagbayes import errors
import dataclasses
import numpy as np

_MAX_ROOT = 2**64
_MAX_INDEX = 2**32


@dataclasses.dataclass(frozen=True)
class SeedPath:
    """Name of an independent random substream

    Args:
      * root_seed: 64-bit unsigned root seed
      * path: tuple of 32-bit unsigned indices
    """

    root_seed: int
    path: tuple = ()

    def __post_init__(self):
        if not 0 <= int(self.root_seed) < _MAX_ROOT:
            raise errors.InvalidArgument(f'root_seed={self.root_seed} is not a 64-bit unsigned integer')
        p = tuple(int(i) for i in self.path)
        for i in p:
            if not 0 <= i < _MAX_INDEX:
                raise errors.InvalidArgument(f'path index={i} is not a 32-bit unsigned integer')
        object.__setattr__(self, 'root_seed', int(self.root_seed))
        object.__setattr__(self, 'path', p)

    def child(self, *indices):
        """Substream nested below this one"""
        return SeedPath(self.root_seed, self.path + tuple(indices))

    def generator(self):
        """Fresh generator positioned at the start of this substream

        Each call returns an independent object; do not share one across threads.
        """
        return np.random.Generator(
            np.random.Philox(
                np.random.SeedSequence(entropy=self.root_seed, spawn_key=self.path),
            ),
        )

    def to_json(self):
        return [self.root_seed, list(self.path)]

    @classmethod
    def from_json(cls, value):
        return cls(value[0], tuple(value[1]))

    def __str__(self):
        return '/'.join(str(i) for i in (self.root_seed,) + self.path)


@dataclasses.dataclass(frozen=True)
class BootstrapCounts:
    """Replication counts of a bootstrap dataset

    Args:
      * counts: length-N nonnegative integer array
      * m: bootstrap dataset size, equal to counts.sum()
    """

    counts: np.ndarray
    m: int

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=np.int64)
        if c.ndim != 1 or np.any(c < 0):
            raise errors.InvalidArgument('counts must be a 1-D nonnegative integer array')
        if int(c.sum()) != self.m:
            raise errors.InvalidArgument(f'counts sum={c.sum()} != m={self.m}')
        c.setflags(write=False)
        object.__setattr__(self, 'counts', c)

    @property
    def n(self):
        return len(self.counts)


def draw_counts(n, m, stream):
    """Draw K_{1:N} ~ Multinomial(m, 1/n)

    numpy's multinomial samples coordinates sequentially from conditional
    binomials, which is exact and O(n).

    Args:
      * n: number of observations (>= 1)
      * m: bootstrap dataset size (>= 0)
      * stream: :class:`SeedPath`

    Returns:
      * :class:`BootstrapCounts`
    """
    if n < 1:
        raise errors.InvalidArgument(f'n={n} must be >= 1')
    if m < 0:
        raise errors.InvalidArgument(f'm={m} must be >= 0')
    return BootstrapCounts(
        counts=stream.generator().multinomial(m, np.full(n, 1.0 / n)),
        m=m,
    )


def resample(data, counts):
    """Dataset whose rows are row i of data repeated counts[i] times, in index order"""
    if counts.n != data.n:
        raise errors.InvalidArgument(
            f'counts length={counts.n} != number of rows={data.n}',
        )
    return data.repeat_rows(counts.counts)
