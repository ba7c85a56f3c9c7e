"""Constructive realization of the SRM as a unitary plus level detection.

The measurement vectors, completed to a full orthonormal basis of the
block Hilbert space, define a real orthogonal operator V that rotates each
measurement direction onto a computational-basis state; decoding is then a
plain level detection of the individual letters.  V is factored into
two-level (Givens) rotations, each of which compiles to a gate network of
controlled flips (Gray-code mapping), one multi-controlled y-rotation, and
the mapping undone.  A dense simulator verifies every network.

Wire convention: wire 0 is the most significant bit of the basis index, so
basis state ``|b_0 b_1 ... b_{n-1}>`` has index ``sum b_k 2^(n-1-k)``.
"""

from dataclasses import dataclass

import numpy as np

from . import codebook as cb_mod
from .exceptions import (
    ConsistencyError,
    DegenerateInputError,
    DomainError,
    ResourceError,
)

__all__ = [
    "TwoLevelFactor",
    "RotationGate",
    "FlipGate",
    "ControlledRotation",
    "ControlledFlip",
    "ControlledUnitary",
    "srm_vectors",
    "gram_schmidt_completion",
    "build_decoding_unitary",
    "error_probability_via_v",
    "two_level_decompose",
    "recompose",
    "factor_to_gates",
    "diagonal_to_gates",
    "decoder_network",
    "decompose_doubly_controlled",
    "expand_network",
    "simulate_network",
    "network_to_text",
    "network_from_text",
    "ry_matrix",
]

_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])


def ry_matrix(theta):
    """R_y(theta) = exp(-i theta sigma_y / 2); real for real theta."""
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True)
class TwoLevelFactor:
    """Rotation by ``gamma`` in the plane of basis states i < j."""

    i: int
    j: int
    gamma: float

    def matrix(self, dim):
        t = np.eye(dim)
        c, s = np.cos(self.gamma), np.sin(self.gamma)
        t[self.i, self.i] = t[self.j, self.j] = c
        t[self.i, self.j] = -s
        t[self.j, self.i] = s
        return t


@dataclass(frozen=True)
class RotationGate:
    wire: int
    angle: float


@dataclass(frozen=True)
class FlipGate:
    wire: int


@dataclass(frozen=True)
class ControlledRotation:
    controls: tuple
    target: int
    angle: float


@dataclass(frozen=True)
class ControlledFlip:
    controls: tuple
    target: int


@dataclass(frozen=True)
class ControlledUnitary:
    """Generic controlled 2x2 core; simulatable but not text-serializable."""

    controls: tuple
    target: int
    core: object


def srm_vectors(codebook, kappa):
    """Columns are the SRM vectors mu_j = sum_i (Gamma^{-1/2})_ij S_i."""
    gram = cb_mod.gram_matrix(codebook, kappa)
    eigvals, eigvecs = np.linalg.eigh(gram)
    if eigvals[0] < 1e-12 * max(eigvals[-1], 1.0):
        raise DegenerateInputError(
            f"gram matrix is singular (min eigenvalue {eigvals[0]}); SRM undefined"
        )
    inv_sqrt = (eigvecs / np.sqrt(eigvals)) @ eigvecs.T
    vecs = np.column_stack([cb_mod.codeword_vector(w, kappa) for w in codebook.words])
    return vecs @ inv_sqrt


def gram_schmidt_completion(mu, codebook, kappa):
    """Extend the SRM vectors to an orthonormal basis of the whole space.

    The remaining 2**n - M sequences are processed in lexicographic word
    order; each contributes the normalized residual against everything
    accumulated so far.  Returns a matrix whose columns are the basis.
    """
    dim = 2**codebook.n
    mu = np.asarray(mu, dtype=float)
    if mu.shape[1] == dim:
        return mu
    used = set(codebook.words)
    remaining = [w for w in (format(v, f"0{codebook.n}b") for v in range(dim)) if w not in used]
    basis = [mu[:, k] for k in range(mu.shape[1])]
    for w in remaining:
        vec = cb_mod.codeword_vector(w, kappa)
        for b in basis:
            vec = vec - (b @ vec) * b
        norm = np.linalg.norm(vec)
        if norm < 1e-8:
            raise DegenerateInputError(
                f"residual of word {w} is numerically dependent (norm {norm})"
            )
        basis.append(vec / norm)
    return np.column_stack(basis)


def build_decoding_unitary(full_basis):
    """Orthogonal V carrying the i-th basis vector onto basis state |i>."""
    full_basis = np.asarray(full_basis, dtype=float)
    gram = full_basis.T @ full_basis
    if np.max(np.abs(gram - np.eye(gram.shape[0]))) > 1e-10:
        raise ConsistencyError("input columns are not orthonormal")
    return full_basis.T


def error_probability_via_v(v, codebook, kappa, priors=None):
    """Eq-of-motion check: 1 - sum_m zeta_m <A_m|V|S_m>^2."""
    v = np.asarray(v, dtype=float)
    if priors is None:
        priors = codebook.priors
    total = 0.0
    for m, w in enumerate(codebook.words):
        amp = v[m] @ cb_mod.codeword_vector(w, kappa)
        total += priors[m] * amp * amp
    return float(1.0 - total)


def two_level_decompose(v, omit_below=1e-12):
    """Factor an orthogonal V as D * T_(2,1) * T_(3,1) * ... * T_(N,N-1).

    D is diagonal with +-1 entries (at most the last entry is -1).  Factors
    with |gamma| below ``omit_below`` are dropped.  Returns ``(d, factors)``.
    """
    v = np.asarray(v, dtype=float)
    dim = v.shape[0]
    if np.max(np.abs(v.T @ v - np.eye(dim))) > 1e-10:
        raise ConsistencyError("input is not orthogonal")
    w = v.copy()
    raw = []
    for i in range(dim - 1):
        for j in range(i + 1, dim):
            gamma = np.arctan2(w[j, i], w[i, i])
            if gamma != 0.0:
                c, s = np.cos(gamma), np.sin(gamma)
                ri, rj = w[i].copy(), w[j].copy()
                w[i] = c * ri + s * rj
                w[j] = -s * ri + c * rj
            raw.append([i, j, gamma])
    d = np.sign(np.diag(w))
    d[d == 0.0] = 1.0
    # Move D from the right of the product to the left: conjugating a plane
    # rotation by a sign matrix flips gamma when the two signs disagree.
    factors = []
    for i, j, gamma in raw:
        if d[i] * d[j] < 0:
            gamma = -gamma
        if abs(gamma) >= omit_below:
            factors.append(TwoLevelFactor(i=i, j=j, gamma=gamma))
    return d, factors


def recompose(d, factors, dim):
    """Product D * T_1 * ... * T_K for verification."""
    out = np.diag(np.asarray(d, dtype=float))
    for f in factors:
        out = out @ f.matrix(dim)
    return out


def _bits(index, n):
    return [(index >> (n - 1 - k)) & 1 for k in range(n)]


def _flip_step(current, target_wire, n):
    """Multi-controlled flip of one wire, conditioned on the other wires
    holding their values in ``current``; 0-controls are X-conjugated."""
    bits = _bits(current, n)
    gates = []
    zero_controls = [w for w in range(n) if w != target_wire and bits[w] == 0]
    for w in zero_controls:
        gates.append(FlipGate(wire=w))
    controls = tuple(w for w in range(n) if w != target_wire)
    gates.append(ControlledFlip(controls=controls, target=target_wire))
    for w in reversed(zero_controls):
        gates.append(FlipGate(wire=w))
    return gates


def factor_to_gates(factor, n):
    """Compile one two-level rotation into a gate network.

    Gray-code mapping: flip the bits of index i toward index j one at a
    time, highest-order differing bit first, keeping the lowest differing
    bit as the rotation target; each flip is controlled on the current
    values of all other wires.  The mapped pair differs in one bit, where a
    multi-controlled R_y(2 gamma) acts; the mapping is then undone.
    """
    i, j = factor.i, factor.j
    if not 0 <= i < j < 2**n:
        raise DomainError(f"factor indices ({i}, {j}) out of range for {n} wires")
    diff = [w for w in range(n) if (i >> (n - 1 - w)) & 1 != (j >> (n - 1 - w)) & 1]
    target = diff[-1]
    mapping = []
    current = i
    for w in diff[:-1]:
        mapping.extend(_flip_step(current, w, n))
        current ^= 1 << (n - 1 - w)
    # current and j now differ only in the target wire
    bits = _bits(current, n)
    zero_controls = [w for w in range(n) if w != target and bits[w] == 0]
    controls = tuple(w for w in range(n) if w != target)
    angle = 2.0 * factor.gamma if bits[target] == 0 else -2.0 * factor.gamma
    core = [FlipGate(wire=w) for w in zero_controls]
    core.append(ControlledRotation(controls=controls, target=target, angle=angle))
    core.extend(FlipGate(wire=w) for w in reversed(zero_controls))
    return mapping + core + list(reversed(mapping))


def diagonal_to_gates(d, n):
    """Gates realizing a +-1 diagonal with at most one -1, on the last state.

    diag(1, -1) on the target equals X * R_y(pi), so the sign flip compiles
    to a fully controlled rotation followed by a fully controlled flip.
    """
    d = np.asarray(d, dtype=float)
    flips = np.flatnonzero(d < 0)
    if flips.size == 0:
        return []
    if flips.size > 1 or flips[0] != d.size - 1:
        raise DomainError("only a single sign flip on the last basis state is supported")
    target = n - 1
    controls = tuple(range(n - 1))
    return [
        ControlledRotation(controls=controls, target=target, angle=np.pi),
        ControlledFlip(controls=controls, target=target),
    ]


def decoder_network(codebook, kappa):
    """Full gate network for the decoding unitary V.

    Returns ``(v, d, factors, gates)``.  Gates apply left to right; since
    V = D T_1 ... T_K acts with T_K first, factor networks are emitted in
    reverse factor order with the diagonal last.
    """
    mu = srm_vectors(codebook, kappa)
    basis = gram_schmidt_completion(mu, codebook, kappa)
    v = build_decoding_unitary(basis)
    d, factors = two_level_decompose(v)
    gates = []
    for f in reversed(factors):
        gates.extend(factor_to_gates(f, codebook.n))
    gates.extend(diagonal_to_gates(d, codebook.n))
    return v, d, factors, gates


def decompose_doubly_controlled(core, wires=(0, 1, 2)):
    """Five-gate network for a doubly controlled 2x2 core.

    Uses the standard identity with W * W = core:  a controlled-W between
    the second control and the target, conjugated CNOTs on the controls with
    a controlled-W^dagger in between, and a final controlled-W from the
    first control.  Real rotation cores yield serializable networks; other
    cores fall back to generic controlled unitaries.
    """
    c1, c2, t = wires
    core = np.asarray(core, dtype=complex)
    if np.max(np.abs(core.conj().T @ core - np.eye(2))) > 1e-10:
        raise DomainError("core must be unitary")

    def half(u):
        # principal square root of a 2x2 unitary via eigendecomposition
        eigvals, eigvecs = np.linalg.eig(u)
        return eigvecs @ np.diag(np.sqrt(eigvals.astype(complex))) @ np.linalg.inv(eigvecs)

    w = half(core)

    def c_gate(control, target, u):
        if np.max(np.abs(u.imag)) < 1e-14 and abs(np.linalg.det(u.real) - 1.0) < 1e-12:
            r = u.real
            angle = 2.0 * np.arctan2(r[1, 0], r[0, 0])
            return ControlledRotation(controls=(control,), target=target, angle=angle)
        return ControlledUnitary(controls=(control,), target=target, core=u)

    return [
        c_gate(c2, t, w),
        ControlledFlip(controls=(c1,), target=c2),
        c_gate(c2, t, w.conj().T),
        ControlledFlip(controls=(c1,), target=c2),
        c_gate(c1, t, w),
    ]


def expand_network(gates):
    """Rewrite two-control gates through the five-gate construction."""
    out = []
    for g in gates:
        if isinstance(g, (ControlledRotation, ControlledFlip)) and len(g.controls) == 2:
            core = ry_matrix(g.angle) if isinstance(g, ControlledRotation) else _SIGMA_X
            wires = (g.controls[0], g.controls[1], g.target)
            out.extend(decompose_doubly_controlled(core, wires))
        else:
            out.append(g)
    return out


def _gate_matrix(gate, n):
    dim = 2**n
    if isinstance(gate, RotationGate):
        return _single_wire(ry_matrix(gate.angle), gate.wire, n)
    if isinstance(gate, FlipGate):
        return _single_wire(_SIGMA_X, gate.wire, n)
    if isinstance(gate, ControlledRotation):
        return _controlled(ry_matrix(gate.angle), gate.controls, gate.target, n)
    if isinstance(gate, ControlledFlip):
        return _controlled(_SIGMA_X, gate.controls, gate.target, n)
    if isinstance(gate, ControlledUnitary):
        return _controlled(np.asarray(gate.core), gate.controls, gate.target, n)
    raise DomainError(f"unknown gate {gate!r}")


def _single_wire(u, wire, n):
    out = np.array([[1.0]])
    for w in range(n):
        out = np.kron(out, u if w == wire else np.eye(2))
    return out


def _controlled(u, controls, target, n):
    dim = 2**n
    out = np.eye(dim, dtype=complex if np.iscomplexobj(u) else float)
    tbit = 1 << (n - 1 - target)
    for idx in range(dim):
        if idx & tbit:
            continue
        if all(idx >> (n - 1 - c) & 1 for c in controls):
            lo, hi = idx, idx | tbit
            out[lo, lo], out[lo, hi] = u[0, 0], u[0, 1]
            out[hi, lo], out[hi, hi] = u[1, 0], u[1, 1]
    return out


def simulate_network(gates, n):
    """Dense unitary of a gate list, applied left to right."""
    if n > 12:
        raise ResourceError(f"network simulation limited to 12 wires, got {n}")
    out = np.eye(2**n)
    for g in gates:
        out = _gate_matrix(g, n) @ out
    return out


def network_to_text(gates):
    """Line-oriented serialization; angles carry 17 significant digits."""
    lines = []
    for g in gates:
        if isinstance(g, RotationGate):
            lines.append(f"RY {g.wire} {g.angle:.17g}")
        elif isinstance(g, FlipGate):
            lines.append(f"X {g.wire}")
        elif isinstance(g, ControlledRotation):
            ctrls = " ".join(str(c) for c in g.controls)
            lines.append(f"CR {ctrls} {g.target} {g.angle:.17g}")
        elif isinstance(g, ControlledFlip):
            ctrls = " ".join(str(c) for c in g.controls)
            lines.append(f"CX {ctrls} {g.target}")
        else:
            raise DomainError(f"gate {g!r} has no text form")
    return "\n".join(lines) + "\n"


def network_from_text(text):
    gates = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "RY":
            gates.append(RotationGate(wire=int(parts[1]), angle=float(parts[2])))
        elif kind == "X":
            gates.append(FlipGate(wire=int(parts[1])))
        elif kind == "CR":
            gates.append(
                ControlledRotation(
                    controls=tuple(int(c) for c in parts[1:-2]),
                    target=int(parts[-2]),
                    angle=float(parts[-1]),
                )
            )
        elif kind == "CX":
            gates.append(
                ControlledFlip(
                    controls=tuple(int(c) for c in parts[1:-1]), target=int(parts[-1])
                )
            )
        else:
            raise DomainError(f"unknown gate line {line!r}")
    return gates
