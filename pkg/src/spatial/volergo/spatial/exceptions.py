"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""


class InvalidSearchSpace(Exception):
    """
    Raised for a search space that is not a 2-D or 3-D box with positive finite sides.

    Parameters
    ----------
    lengths: object
        The side lengths that were given
    """

    def __init__(self, lengths):
        super().__init__("Search space lengths must be 2 or 3 positive finite values, got {}".format(lengths))


class InvalidBasisSize(Exception):
    """
    Raised when the number of modes per dimension is not a positive integer.

    Parameters
    ----------
    modes: object
        The requested number of modes
    """

    def __init__(self, modes):
        super().__init__("modes_per_dim must be a positive integer, got {}".format(modes))


class IndexNotInBasis(Exception):
    """
    Raised when a mode index is outside the truncated basis.

    Parameters
    ----------
    k: object
        The offending index
    """

    def __init__(self, k):
        super().__init__("Mode index {} is not part of the basis".format(k))


class UnderResolvedQuadrature(Exception):
    """
    Raised when the quadrature grid cannot resolve the highest basis mode.

    Parameters
    ----------
    cells: int
        Cells per dimension requested
    modes: int
        Modes per dimension of the basis
    """

    def __init__(self, cells: int, modes: int):
        super().__init__(
            "Quadrature with {} cells per dimension under-resolves {} modes; use at least {}".format(
                cells, modes, 2 * modes
            )
        )


class DegenerateCovariance(Exception):
    """
    Raised when a mixture covariance is not symmetric positive definite.

    Parameters
    ----------
    index: int
        Position of the component in the mixture
    """

    def __init__(self, index: int):
        super().__init__("Covariance of mixture component {} is not symmetric positive definite".format(index))


class InvalidMixtureWeights(Exception):
    """
    Raised when mixture weights are negative or do not sum to one.

    Parameters
    ----------
    weights: object
        The given weights
    """

    def __init__(self, weights):
        super().__init__("Mixture weights must be non-negative and sum to 1, got {}".format(weights))


class RejectionBudgetExhausted(Exception):
    """
    Raised when rejection sampling cannot place a point inside the search space.

    Parameters
    ----------
    limit: int
        Rejections allowed per point
    """

    def __init__(self, limit: int):
        super().__init__(
            "A sample was rejected {} times; the distribution has little mass inside the search space".format(limit)
        )


class GridFileUnreadable(Exception):
    """
    Raised when a density grid file cannot be read.

    Parameters
    ----------
    path: str
        The file
    reason: str
        What went wrong
    """

    def __init__(self, path: str, reason: str):
        super().__init__("Could not read density grid {}: {}".format(path, reason))
