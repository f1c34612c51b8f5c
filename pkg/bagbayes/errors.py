# -*- coding: utf-8 -*-
u"""Exceptions raised by :mod:`bagbayes`

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function


class Error(Exception):
    """Base class for all bagbayes errors"""
    pass


class InvalidArgument(Error, ValueError):
    pass


class ModelConstructionError(InvalidArgument):
    """Model hyperparameters violate their invariants"""
    pass


class FitFailure(Error, ArithmeticError):
    """A single posterior fit could not be computed

    Bagging and overlap estimation skip fits that raise these.
    """
    pass


class RankDeficiency(FitFailure):
    """A Gram or precision matrix is numerically singular

    Args:
      * what: name of the matrix
      * condition_number: 2-norm condition number of the matrix
    """

    def __init__(self, what, condition_number):
        super().__init__(
            f'{what} is rank deficient (condition number={condition_number:.3e})',
        )
        self.what = what
        self.condition_number = condition_number


class NumericalDegeneracy(FitFailure):
    pass


class TooLarge(Error):
    pass


class AllComponentsFailed(Error):
    pass


class AllReplicatesFailed(Error):
    pass


class InsufficientComponents(Error):
    pass


class InsufficientData(Error):
    pass


class ContractError(Error):
    """An MCMC procedure returned output that violates its contract"""
    pass


class InvalidStart(InvalidArgument):
    pass


class DatasetFormatError(Error):
    """A dataset file could not be parsed

    Args:
      * path: file being read
      * row: 1-based data row (header is row 0), or None
      * column: column name, or None
      * reason: what is wrong
    """

    def __init__(self, path, reason, row=None, column=None):
        w = []
        if row is not None:
            w.append(f'row={row}')
        if column is not None:
            w.append(f'column={column}')
        super().__init__(f'{path}: {reason}' + (f' ({", ".join(w)})' if w else ''))
        self.path = path
        self.row = row
        self.column = column


class ConfigError(Error):
    pass


#: errors the console reports with exit status 2
USAGE_ERRORS = (ConfigError, DatasetFormatError, InvalidArgument)
