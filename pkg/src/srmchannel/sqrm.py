"""Square-root-measurement decoding of codeword ensembles.

The measurement vectors are the codewords whitened by the inverse square
root of their Gram matrix; the overlap (channel) matrix is the principal
square root itself, and its squared entries are the decoding conditional
probabilities.  Alongside the dense eigendecomposition route there is a
Walsh-Hadamard fast path for codebooks that form a group under XOR, where
the Gram matrix is diagonalized by the group characters in O(M log M).
"""

import numpy as np

from . import binary_channel, codebook as cb_mod
from .exceptions import (
    ConsistencyError,
    DegenerateInputError,
    DomainError,
    StructureError,
)

__all__ = [
    "principal_sqrt",
    "conditional_probabilities",
    "mutual_information",
    "i3_closed_form",
    "average_error_probability",
    "holevo_condition_check",
    "xor_fast_path",
    "fast_srm_summary",
    "product_decoding_information",
    "fwht",
]

# Eigenvalues below -_EIG_TOL (relative to the largest) are a genuine PSD
# violation; inside the band they are clamped to zero.
_EIG_TOL = 1e-10


def principal_sqrt(gram):
    """Principal (unique PSD) square root of a PSD Gram matrix."""
    gram = np.asarray(gram, dtype=float)
    if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
        raise DomainError("gram matrix must be square")
    if not np.allclose(gram, gram.T, atol=1e-12):
        raise DomainError("gram matrix must be symmetric")
    eigvals, eigvecs = np.linalg.eigh(gram)
    floor = -_EIG_TOL * max(eigvals[-1], 1.0)
    if eigvals[0] < floor:
        raise DomainError(
            f"gram matrix is not positive semidefinite: min eigenvalue {eigvals[0]}"
        )
    eigvals = np.clip(eigvals, 0.0, None)
    return (eigvecs * np.sqrt(eigvals)) @ eigvecs.T


def conditional_probabilities(x):
    """P(j|i) = x_ji^2: probability of decoding output j given codeword i."""
    x = np.asarray(x, dtype=float)
    p = (x**2).T
    sums = p.sum(axis=1)
    if np.any(np.abs(sums - 1.0) > 1e-8):
        raise ConsistencyError(
            f"conditional probabilities do not normalize: row sums {sums}"
        )
    return p


def mutual_information(priors, p):
    """Mutual information of a discrete channel, in bits.

    ``p[i, j]`` is the conditional probability of output j given input i;
    ``priors`` is the input distribution.  Zero-probability terms follow the
    0*log(0) = 0 convention.
    """
    priors = np.asarray(priors, dtype=float)
    p = np.asarray(p, dtype=float)
    if priors.shape[0] != p.shape[0]:
        raise DomainError("priors and channel matrix dimensions disagree")
    out = priors @ p
    info = 0.0
    for i in range(p.shape[0]):
        if priors[i] == 0.0:
            continue
        row = p[i]
        mask = row > 0.0
        info += priors[i] * np.sum(row[mask] * np.log2(row[mask] / out[mask]))
    return float(info)


def _closed_form_x(kappa):
    # Diagonal / off-diagonal entries of the block-3 even-weight channel matrix.
    xd = 0.25 * (np.sqrt(1.0 + 3.0 * kappa**2) + 3.0 * np.sqrt(1.0 - kappa**2))
    xo = 0.25 * (np.sqrt(1.0 + 3.0 * kappa**2) - np.sqrt(1.0 - kappa**2))
    return xd, xo


def i3_closed_form(kappa):
    """Mutual information of the block-3 even-weight code under SRM decoding,
    from the closed-form channel-matrix entries.  In bits."""
    kappa = float(kappa)
    if not 0.0 <= kappa <= 1.0:
        raise DomainError(f"overlap must lie in [0, 1], got {kappa}")
    xd, xo = _closed_form_x(kappa)
    a, b = xd**2, xo**2
    info = 2.0
    if a > 0.0:
        info += a * np.log2(a)
    if b > 0.0:
        info += 3.0 * b * np.log2(b)
    return float(info)


def average_error_probability(priors, x):
    """SRM average error probability 1 - sum_m zeta_m x_mm^2."""
    priors = np.asarray(priors, dtype=float)
    x = np.asarray(x, dtype=float)
    return float(1.0 - priors @ np.diag(x) ** 2)


def _srm_vectors_dense(codebook, kappa):
    """Measurement vectors mu_j = sum_i (Gamma^{-1/2})_ij S_i as columns."""
    gram = cb_mod.gram_matrix(codebook, kappa)
    eigvals, eigvecs = np.linalg.eigh(gram)
    if eigvals[0] < 1e-12 * max(eigvals[-1], 1.0):
        raise DegenerateInputError(
            f"gram matrix is singular (min eigenvalue {eigvals[0]}); SRM undefined"
        )
    inv_sqrt = (eigvecs / np.sqrt(eigvals)) @ eigvecs.T
    vecs = np.column_stack([cb_mod.codeword_vector(w, kappa) for w in codebook.words])
    return vecs @ inv_sqrt, vecs


def holevo_condition_check(codebook, kappa, tolerance=1e-9):
    """Test whether the SRM minimizes the average error probability.

    Builds the weighted operator  Lambda = sum_i zeta_i |mu_i><mu_i|S_i><S_i|
    from the explicit measurement vectors and verifies that it is Hermitian
    and that Lambda - zeta_j |S_j><S_j| is PSD for every codeword j.  Returns
    a dict with ``satisfied`` and the worst ``min_eigenvalue`` observed.
    """
    mu, vecs = _srm_vectors_dense(codebook, kappa)
    priors = codebook.priors
    lam = np.zeros((mu.shape[0], mu.shape[0]))
    for i in range(len(codebook)):
        overlap = mu[:, i] @ vecs[:, i]
        lam += priors[i] * overlap * np.outer(mu[:, i], vecs[:, i])
    hermitian_defect = np.max(np.abs(lam - lam.T))
    lam_sym = 0.5 * (lam + lam.T)
    worst = np.inf
    for j in range(len(codebook)):
        test = lam_sym - priors[j] * np.outer(vecs[:, j], vecs[:, j])
        worst = min(worst, float(np.linalg.eigvalsh(test)[0]))
    satisfied = hermitian_defect <= tolerance and worst >= -tolerance
    return {"satisfied": bool(satisfied), "min_eigenvalue": worst}


def fwht(values):
    """In-place-style fast Walsh-Hadamard transform (unnormalized, +-1 kernel).

    Length must be a power of two.  The transform is an involution up to a
    factor of the length.
    """
    a = np.array(values, dtype=float)
    m = a.shape[0]
    if m & (m - 1):
        raise DomainError(f"length must be a power of two, got {m}")
    h = 1
    while h < m:
        a = a.reshape(-1, 2, h)
        a = np.stack((a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]), axis=1)
        h *= 2
    return a.reshape(m)


_COORD_CACHE = {}


def _group_coordinates(codebook):
    """GF(2) basis and per-word coordinates for an XOR-closed codebook.

    Returns ``(basis, coords)``: ``basis`` is a list of generator word-ints,
    ``coords[j]`` the coordinate index of word j with respect to it.
    """
    cached = _COORD_CACHE.get(codebook.words)
    if cached is not None:
        return cached
    ints = [int(w, 2) for w in codebook.words]
    if 0 not in ints or len(ints) & (len(ints) - 1):
        raise StructureError("codebook is not a group under XOR")
    # Reduced-echelon basis: pivots[b] holds (vector, combo mask over basis).
    pivots = {}
    basis = []
    for v in ints:
        cur, combo = v, 0
        for b in sorted(pivots, reverse=True):
            if cur >> b & 1:
                vec, mask = pivots[b]
                cur ^= vec
                combo ^= mask
        if cur:
            pivot = cur.bit_length() - 1
            pivots[pivot] = (cur, combo | (1 << len(basis)))
            basis.append(cur)
    if len(basis) != len(ints).bit_length() - 1:
        raise StructureError("codebook is not closed under XOR")
    coords = []
    for v in ints:
        cur, combo = v, 0
        for b in sorted(pivots, reverse=True):
            if cur >> b & 1:
                vec, mask = pivots[b]
                cur ^= vec
                combo ^= mask
        if cur:
            raise StructureError("codebook is not closed under XOR")
        coords.append(combo)
    _COORD_CACHE[codebook.words] = (basis, coords)
    return basis, coords


def xor_fast_path(codebook, kappa):
    """Spectrum and first channel-matrix row for a group codebook, O(M log M).

    The Gram matrix of an XOR-closed codebook is group-invariant, so the
    Walsh-Hadamard transform of the single-generator function
    ``f(w) = kappa**weight(w)`` yields its eigenvalues; the inverse transform
    of their square roots gives the row of the principal square root through
    the zero word.  Returns ``(eigenvalues, first_row)`` with the row indexed
    in codebook word order.
    """
    kappa = float(kappa)
    basis, coords = _group_coordinates(codebook)
    m = len(codebook)
    weights = _COORD_CACHE.get((codebook.words, "weights"))
    if weights is None:
        elements = np.zeros(m, dtype=np.uint64)
        idx = np.arange(m, dtype=np.uint64)
        for b, vec in enumerate(basis):
            elements[(idx >> np.uint64(b)) & np.uint64(1) == 1] ^= np.uint64(vec)
        weights = np.zeros(m, dtype=np.int64)
        while elements.any():
            weights += (elements & np.uint64(1)).astype(np.int64)
            elements >>= np.uint64(1)
        _COORD_CACHE[(codebook.words, "weights")] = weights
    f = np.where(weights == 0, 1.0, kappa ** weights.astype(float))
    eigenvalues = fwht(f)
    floor = -_EIG_TOL * max(eigenvalues.max(), 1.0)
    if eigenvalues.min() < floor:
        raise DomainError(
            f"gram matrix is not positive semidefinite: min eigenvalue {eigenvalues.min()}"
        )
    row_group = fwht(np.sqrt(np.clip(eigenvalues, 0.0, None))) / m
    # X[0, j] depends only on word_0 XOR word_j; coordinates are linear in XOR.
    first_row = np.array([row_group[coords[0] ^ c] for c in coords])
    return eigenvalues, first_row


def fast_srm_summary(codebook, kappa):
    """Mutual information and error probability via the fast path.

    Valid for XOR-closed codebooks with uniform priors, where the SRM channel
    is symmetric: P(j|i) depends only on ``word_i XOR word_j`` and row 0 of
    the channel matrix determines everything.  Returns
    ``(information_bits, error_probability)``.
    """
    if np.max(np.abs(codebook.priors - 1.0 / len(codebook))) > 1e-12:
        raise StructureError("fast path requires uniform priors")
    _, first_row = xor_fast_path(codebook, kappa)
    q = first_row**2
    total = q.sum()
    if abs(total - 1.0) > 1e-8:
        raise ConsistencyError(f"fast-path probabilities sum to {total}")
    mask = q > 0.0
    info = np.log2(len(codebook)) + float(np.sum(q[mask] * np.log2(q[mask])))
    return info, float(1.0 - q[0])


def product_decoding_information(n, kappa):
    """Mutual information of the full 2**n product ensemble decoded by the
    product of single-letter optimal measurements.  Additive: equals n * C1."""
    if n < 1:
        raise DomainError(f"block length must be >= 1, got {n}")
    p = binary_channel.crossover_probability(kappa)
    p1 = np.array([[1.0 - p, p], [p, 1.0 - p]])
    pn = np.array([[1.0]])
    for _ in range(n):
        pn = np.kron(pn, p1)
    priors = np.full(2**n, 1.0 / 2**n)
    return mutual_information(priors, pn)
