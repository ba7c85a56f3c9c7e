"""Single-use quantities of the binary pure-state channel.

Two letter states with real overlap ``kappa`` are embedded in the plane as
``plus = (1, 0)`` and ``minus = (kappa, sqrt(1 - kappa**2))``.  Every quantity
below is a closed form in ``kappa``: the crossover probability of the induced
binary symmetric channel, the one-shot capacity, the optimal von Neumann
measurement, and the von Neumann entropy of the input ensemble (the upper
bound on accessible information per letter).

All entropies are in bits.  The convention ``0 * log2(0) == 0`` is used
throughout.
"""

import numpy as np

from .exceptions import DegenerateInputError, DomainError

__all__ = [
    "letter_states",
    "crossover_probability",
    "capacity_c1",
    "optimal_measurement",
    "holevo_limit",
    "binary_entropy",
]


def _check_kappa(kappa):
    kappa = float(kappa)
    if not 0.0 <= kappa <= 1.0:
        raise DomainError(f"overlap must lie in [0, 1], got {kappa}")
    return kappa


def _check_priors(priors):
    priors = np.asarray(priors, dtype=float)
    if priors.shape != (2,) or np.any(priors < 0):
        raise DomainError("priors must be two nonnegative numbers")
    if abs(priors.sum() - 1.0) > 1e-12:
        raise DomainError(f"priors must sum to 1, got {priors.sum()!r}")
    return priors


def binary_entropy(p):
    """H(p) in bits, with the 0*log(0) = 0 convention."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability out of range: {p}")
    h = 0.0
    if 0.0 < p < 1.0:
        h = -p * np.log2(p) - (1.0 - p) * np.log2(1.0 - p)
    return float(h)


def letter_states(kappa):
    """Planar embedding of the two letter states.

    Returns ``(plus, minus)`` as real unit vectors with
    ``plus @ minus == kappa`` exactly by construction.
    """
    kappa = _check_kappa(kappa)
    plus = np.array([1.0, 0.0])
    minus = np.array([kappa, np.sqrt(max(0.0, 1.0 - kappa * kappa))])
    return plus, minus


def crossover_probability(kappa):
    """Crossover probability p = (1 - sqrt(1 - kappa^2)) / 2 of the induced
    binary symmetric channel; also the single-letter minimum error probability."""
    kappa = _check_kappa(kappa)
    return 0.5 * (1.0 - np.sqrt(max(0.0, 1.0 - kappa * kappa)))


def capacity_c1(kappa):
    """One-shot capacity C1 = 1 - H(p) in bits."""
    kappa = _check_kappa(kappa)
    if kappa == 1.0:
        return 0.0
    return 1.0 - binary_entropy(crossover_probability(kappa))


def optimal_measurement(kappa):
    """Orthonormal measurement pair attaining C1.

    Returns ``(omega1, omega2)`` as real unit vectors in the same planar
    coordinates as :func:`letter_states`.  The induced channel
    ``P(j|i) = (omega_j @ s_i)**2`` is the binary symmetric channel with
    crossover :func:`crossover_probability`.
    """
    kappa = _check_kappa(kappa)
    if kappa == 1.0:
        raise DegenerateInputError("identical letter states: no measurement distinguishes them")
    plus, minus = letter_states(kappa)
    c = np.sqrt(1.0 - kappa * kappa)
    a = np.sqrt((1.0 + c) / 2.0)
    b = np.sqrt((1.0 - c) / (2.0 * (1.0 - kappa * kappa)))
    d = np.sqrt((1.0 + c) / (2.0 * (1.0 - kappa * kappa)))
    omega1 = (a + kappa * b) * plus - b * minus
    omega2 = d * minus + (np.sqrt((1.0 - c) / 2.0) - kappa * d) * plus
    return omega1, omega2


def holevo_limit(kappa, priors=(0.5, 0.5)):
    """Von Neumann entropy of the letter ensemble, in bits.

    This is the upper bound on accessible information per letter for the
    given priors.  For uniform priors the density-matrix eigenvalues are
    ``(1 +/- kappa) / 2``.
    """
    kappa = _check_kappa(kappa)
    priors = _check_priors(priors)
    plus, minus = letter_states(kappa)
    rho = priors[0] * np.outer(plus, plus) + priors[1] * np.outer(minus, minus)
    eigs = np.linalg.eigvalsh(rho)
    h = 0.0
    for lam in eigs:
        if lam > 0.0:
            h -= lam * np.log2(lam)
    return float(h)
