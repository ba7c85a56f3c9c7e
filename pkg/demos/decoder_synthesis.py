"""From measurement vectors to a quantum gate network.

The square-root measurement on the block-3 even-weight code is a projective
measurement in an orthonormal basis, so it can be run as a basis-change
unitary V followed by a measurement in the computational basis.  This demo
builds V, factors it into two-level rotations, compiles those into one- and
two-bit gates, and simulates the network to confirm it reproduces the SRM
statistics.
"""

import numpy as np

from srmchannel import codebook as cb
from srmchannel import sqrm, synthesis as syn

kappa = 0.8
book = cb.even_weight_codebook(3)

# ------------------------------------------------------------------
# the decoding unitary
# ------------------------------------------------------------------
v, d, factors, gates = syn.decoder_network(book, kappa)
print(f"V is {v.shape[0]}x{v.shape[1]}, orthogonality defect "
      f"{np.max(np.abs(v.T @ v - np.eye(8))):.1e}")

x = sqrm.principal_sqrt(cb.gram_matrix(book, kappa))
print("codeword detection amplitudes <m|V|S_m> vs Gram-root diagonal:")
for m, w in enumerate(book.words):
    amp = v[m] @ cb.codeword_vector(w, kappa)
    print(f"  {w}: {amp:.12f}   (x_mm = {x[m, m]:.12f})")
print(f"average error probability  = {syn.error_probability_via_v(v, book, kappa):.9f}")
print()

# ------------------------------------------------------------------
# two-level factorization
# ------------------------------------------------------------------
print(f"{len(factors)} two-level rotations; residual diagonal {d}")
recomposed = syn.recompose(d, factors, 8)
print(f"recomposition error        = {np.max(np.abs(recomposed - v)):.1e}")
print()

# ------------------------------------------------------------------
# gate network
# ------------------------------------------------------------------
counts = {}
for g in gates:
    counts[type(g).__name__] = counts.get(type(g).__name__, 0) + 1
print(f"gate network: {len(gates)} gates {counts}")
u = syn.simulate_network(gates, 3)
print(f"network vs V               = {np.max(np.abs(u - v)):.1e}")

expanded = syn.expand_network(gates)
print(f"after expanding multi-controlled gates: {len(expanded)} gates, "
      f"all with at most one control")
print()

# ------------------------------------------------------------------
# end to end: run each codeword through the network
# ------------------------------------------------------------------
p_ref = sqrm.conditional_probabilities(x)
print("P(decode j | sent i), network vs SRM:")
for i, w in enumerate(book.words):
    amps = u @ cb.codeword_vector(w, kappa)
    probs = amps[: len(book)] ** 2
    defect = np.max(np.abs(probs - p_ref[i, : len(book)]))
    print(f"  sent {w}: " + " ".join(f"{q:.4f}" for q in probs) + f"   (defect {defect:.1e})")
print()
print("serialized network (first lines):")
print("\n".join(syn.network_to_text(gates).splitlines()[:6]))
