"""Walkthrough: Gaussian quasi-characteristic functions and the shift map.

A Gaussian state N(h, J) on noncommuting coordinates is fixed by the values

    E prod_t exp(i xi_t . X)

over ordered queries.  Reweighting the state by exp(L/2) ... exp(L/2), where
L is a jointly Gaussian log-likelihood coordinate with mean -s^2/2, variance
s^2, and cross-covariance kappa, lands on another Gaussian: N(mu + Re kappa,
Sigma).  Numerically that identity is two evaluations of the same formula.
"""

import numpy as np

import qleb

rng = np.random.default_rng(0)

# a quantum covariance: Hermitian PSD with a genuine imaginary (commutator) part
J = np.array([[1.0, -1j], [1j, 1.0]])
params = qleb.GaussianParams(h=np.zeros(2), J=J)
print("single real query:", qleb.gaussian_qcf(params, [np.array([1.0, 0.0])]),
      "(= exp(-1/2))")
print("inverse pair query:", qleb.gaussian_qcf(params, [np.array([0.7, 0.2]),
                                                        -np.array([0.7, 0.2])]))

# ordered queries see the skew part: swapping the order conjugates the value
q12 = qleb.gaussian_qcf(params, [np.array([1.0, 0.0]), np.array([0.0, 1.0])])
q21 = qleb.gaussian_qcf(params, [np.array([0.0, 1.0]), np.array([1.0, 0.0])])
print("order matters:", q12, "vs", q21)

# without a skew part everything commutes and the query collapses classically
V = np.array([[1.0, 0.3], [0.3, 0.5]])
classical = qleb.GaussianParams(h=np.array([0.2, -0.1]), J=V.astype(complex))
xi1, xi2 = np.array([0.4, 0.1]), np.array([-0.2, 0.6])
lhs = qleb.gaussian_qcf(classical, [xi1, xi2])
s = xi1 + xi2
rhs = np.exp(1j * s @ classical.h - 0.5 * s @ V @ s)
print("classical reduction gap:", abs(lhs - rhs))

# the shift map: draw a random valid joint parameter set and compare the
# sandwiched expectation with the shifted state's quasi-CF
print("\nsandwich identity on random joint parameters:")
worst = 0.0
for _ in range(200):
    d = int(rng.integers(1, 4))
    G = rng.standard_normal((d + 1, d + 1)) + 1j * rng.standard_normal((d + 1, d + 1))
    T = (G @ G.conj().T + (G @ G.conj().T).conj().T) / 2
    ext = qleb.ExtendedGaussianParams(mu=rng.standard_normal(d), Sigma=T[:d, :d],
                                      kappa=T[:d, d], s2=float(T[d, d].real))
    xis = [rng.standard_normal(d) for _ in range(int(rng.integers(1, 4)))]
    lhs = qleb.sandwiched_gaussian_qcf(ext, xis)
    rhs = qleb.gaussian_qcf(qleb.lecam_shift(ext), xis)
    worst = max(worst, abs(lhs - rhs))
print("  worst deviation over 200 draws:", worst)

# the empty product recovers normalization: E[exp(L)] = 1
ext = qleb.ExtendedGaussianParams(mu=np.zeros(1), Sigma=np.eye(1),
                                  kappa=np.array([1.0]), s2=2.0)
print("  empty-product normalization:", qleb.sandwiched_gaussian_qcf(ext, None))

# the boundary case kappa = J h, s^2 = h'(Re J)h reproduces the shifted state
h = np.array([1.0, 0.5])
ext = qleb.ExtendedGaussianParams(mu=np.zeros(2), Sigma=J, kappa=J @ h,
                                  s2=float(h @ J.real @ h))
shifted = qleb.lecam_shift(ext)
print("  boundary case shift: mean", shifted.h, "(the shift direction itself)")
