"""Walkthrough: splitting one state into parts a reference can and cannot see.

Given states sigma and rho, the decomposition produces

    sigma = ac + perp,    ac = R rho R,    Tr(rho perp) = 0,

with a canonical positive "square-root likelihood ratio" R.  This script
decomposes three instructive pairs and verifies the defining identities.
"""

import numpy as np

import qleb
from qleb import presets

np.set_printoptions(precision=6, suppress=True)


def show(title, sigma, rho, tol=qleb.DEFAULT_TOL):
    dec = qleb.lebesgue_decompose(sigma, rho, tol)
    print(f"--- {title}")
    print("absolutely continuous part:\n", dec.ac.real)
    print("singular part:\n", dec.perp.real)
    print("ratio R:\n", dec.sqrt_lr.real)
    print("split dimensions (ker excision, supp excision, ker rho):", dec.split.dims)
    print("checks: |ac+perp-sigma| =", np.linalg.norm(dec.ac + dec.perp - sigma))
    print("        Tr(rho perp)    =", abs(np.trace(rho @ dec.perp)))
    print("        |ac - R rho R|  =", np.linalg.norm(dec.ac - dec.sqrt_lr @ rho @ dec.sqrt_lr))
    print()
    return dec


# 1. A faithful pair: everything is absolutely continuous, R is the closed form.
rho, sigma = presets.faithful_to_pure_pair(5)
dec = show("faithful 2x2 pair (drifting family at n=5)", sigma, rho)
print("known closed form of R:\n", presets.faithful_to_pure_sqrt_lr(5).real)
print()

# 2. A pure sigma leaning on ker(rho): the ratio is rank one; nothing is lost.
rho, sigma = presets.orthogonal_limit_pair(2)
show("pure sigma against a pure reference (n=2)", sigma, rho)

# 3. A generic rank-deficient pair: a genuine singular part appears.
rng = np.random.default_rng(1)
G = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
rho = G @ G.conj().T
rho = rho / np.trace(rho).real
H = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
sigma = H @ H.conj().T
sigma = sigma / np.trace(sigma).real
dec = show("random dim-4 pair with rank-2 reference", sigma, rho)
print("mass split: Tr ac =", np.trace(dec.ac).real, " Tr perp =", np.trace(dec.perp).real)

# The ratio's component on ker(rho) is a free choice; adding weight there
# changes nothing the reference state can see.
ker = dec.split.basis_3
gamma = ker @ np.eye(ker.shape[1]) @ ker.conj().T
shifted = dec.sqrt_lr + 0.7 * gamma
print(
    "free kernel weight leaves ac unchanged:",
    np.linalg.norm(shifted @ rho @ shifted - dec.ac),
)

# For faithful pairs the log-likelihood ratio L satisfies
# exp(L/2) rho exp(L/2) = sigma.
rng = np.random.default_rng(2)
A = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
rho = A @ A.conj().T + 0.3 * np.eye(3)
rho = rho / np.trace(rho).real
B = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
sigma = B @ B.conj().T + 0.3 * np.eye(3)
sigma = sigma / np.trace(sigma).real
L = qleb.quantum_log_likelihood(sigma, rho)
half = qleb.herm_exp(L / 2)
print("\nlog-likelihood reconstruction residual:",
      np.linalg.norm(half @ rho @ half - sigma))
