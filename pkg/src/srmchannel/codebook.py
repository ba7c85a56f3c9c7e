"""Codeword sets, their tensor-product vectors, and Gram matrices.

Bit convention: ``0`` encodes the ``plus`` letter, ``1`` the ``minus``
letter.  Words are kept as bitstrings in a fixed order so that Gram and
channel matrices are reproducible bit-for-bit.  Because all codewords are
products of two letter states with real overlap ``kappa``, the Gram matrix
entry for two words is ``kappa`` raised to their Hamming distance; the
explicit tensor-product route is retained for cross-validation.
"""

from dataclasses import dataclass, field

import numpy as np

from .binary_channel import letter_states
from .exceptions import DomainError, ResourceError

__all__ = [
    "Codebook",
    "even_weight_codebook",
    "alternative_codebook",
    "full_codebook",
    "codeword_vector",
    "gram_matrix",
    "gram_matrix_from_vectors",
    "hamming_distance",
    "is_linear",
    "save_codebook",
    "load_codebook",
]


def hamming_distance(w1, w2):
    if len(w1) != len(w2):
        raise DomainError("words of unequal length")
    return sum(a != b for a, b in zip(w1, w2))


@dataclass(frozen=True)
class Codebook:
    """Block length, ordered distinct codewords, and their priors."""

    n: int
    words: tuple
    priors: np.ndarray = field(default=None)

    def __post_init__(self):
        words = tuple(self.words)
        object.__setattr__(self, "words", words)
        if len(set(words)) != len(words):
            raise DomainError("codewords must be distinct")
        for w in words:
            if len(w) != self.n or set(w) - {"0", "1"}:
                raise DomainError(f"invalid codeword {w!r} for block length {self.n}")
        if self.priors is None:
            priors = np.full(len(words), 1.0 / len(words))
        else:
            priors = np.asarray(self.priors, dtype=float)
        if priors.shape != (len(words),) or np.any(priors < 0):
            raise DomainError("priors must be nonnegative, one per codeword")
        if abs(priors.sum() - 1.0) > 1e-12:
            raise DomainError(f"priors must sum to 1, got {priors.sum()!r}")
        priors.flags.writeable = False
        object.__setattr__(self, "priors", priors)

    def __len__(self):
        return len(self.words)


def even_weight_codebook(n, limit=20):
    """All length-n binary words of even Hamming weight, uniform priors.

    This is a linear code of size 2**(n-1) with minimum distance 2.
    """
    if n < 2:
        raise DomainError(f"block length must be >= 2, got {n}")
    if n > limit:
        raise ResourceError(f"block length {n} exceeds the configured limit {limit}")
    words = tuple(
        format(v, f"0{n}b") for v in range(2**n) if bin(v).count("1") % 2 == 0
    )
    return Codebook(n=n, words=words)


def alternative_codebook():
    """The non-superadditive four-word block-3 set {000, 100, 011, 111}."""
    return Codebook(n=3, words=("000", "100", "011", "111"))


def full_codebook(n, limit=20):
    """All 2**n words with uniform priors (the unpruned product ensemble)."""
    if n < 1:
        raise DomainError(f"block length must be >= 1, got {n}")
    if n > limit:
        raise ResourceError(f"block length {n} exceeds the configured limit {limit}")
    return Codebook(n=n, words=tuple(format(v, f"0{n}b") for v in range(2**n)))


def codeword_vector(word, kappa):
    """Tensor-product unit vector of a codeword in dimension 2**len(word)."""
    plus, minus = letter_states(kappa)
    vec = np.array([1.0])
    for b in word:
        vec = np.kron(vec, minus if b == "1" else plus)
    return vec


def gram_matrix(codebook, kappa):
    """Gram matrix via the kappa**(Hamming distance) identity, O(M^2 n)."""
    kappa = float(kappa)
    ints = np.array([int(w, 2) for w in codebook.words], dtype=np.uint64)
    xor = ints[:, None] ^ ints[None, :]
    distances = np.zeros(xor.shape, dtype=np.int64)
    while xor.any():
        distances += (xor & 1).astype(np.int64)
        xor >>= np.uint64(1)
    gram = np.where(distances == 0, 1.0, kappa**distances.astype(float))
    return gram


def gram_matrix_from_vectors(codebook, kappa):
    """Gram matrix from explicit 2**n-dimensional inner products (cross-check path)."""
    vecs = np.column_stack([codeword_vector(w, kappa) for w in codebook.words])
    return vecs.T @ vecs


def is_linear(codebook):
    """True when the word set contains zero and is closed under bitwise XOR."""
    ints = {int(w, 2) for w in codebook.words}
    if 0 not in ints:
        return False
    return all(a ^ b in ints for a in ints for b in ints)


def save_codebook(codebook, path):
    """Write the text format: first line ``n M``, then ``bitstring prior`` lines."""
    lines = [f"{codebook.n} {len(codebook)}"]
    for w, p in zip(codebook.words, codebook.priors):
        lines.append(f"{w} {p:.17g}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_codebook(path):
    with open(path) as fh:
        tokens = fh.read().split("\n")
    n, m = (int(t) for t in tokens[0].split())
    words, priors = [], []
    for line in tokens[1 : 1 + m]:
        w, p = line.split()
        words.append(w)
        priors.append(float(p))
    if len(words) != m:
        raise DomainError("codebook file truncated")
    return Codebook(n=n, words=tuple(words), priors=np.array(priors))
