"""Walkthrough: when is one sequence of states asymptotically dominated by another?

Contiguity cannot be decided from finitely many samples alone, so every
verdict comes from a criterion with checkable hypotheses:

  limit      fixed dimension + declared limit states
  pure       pure reference states (two scalar statistics decide)
  kakutani   tensor products (a summability test on per-factor defects)
  block      declared three-block structure (hypotheses + inner delegation)
"""

import numpy as np

import qleb
from qleb import presets


def headline(rep):
    print(f"  verdict: {rep.verdict}   [{rep.criterion_used}]")
    print(f"  notes:   {rep.notes}")


print("1. limit criterion - faithful family drifting to non-orthogonal pure limits")
rep = qleb.limit_criterion(presets.faithful_to_pure_family())
headline(rep)
print("  final residuals:", rep.evidence[-1])
print()

print("2. limit criterion - family drifting to orthogonal (mutually singular) limits")
headline(qleb.limit_criterion(presets.orthogonal_limit_family()))
print()

print("3. pure criterion - n-fold spin family, shift h/sqrt(n)")
rep = qleb.pure_criterion(presets.spin_overlap_family(presets.sqrt_scaling))
headline(rep)
row = rep.evidence[-1]
print(f"  overlap at horizon: {row['overlap']:.6f}"
      f"  (limit exp(-|h|^2/4) = {np.exp(-1.25 / 4):.6f})")
print()

print("4. pure criterion - same family at the slower scaling h/n^(1/4)")
headline(qleb.pure_criterion(presets.spin_overlap_family(presets.quarter_scaling)))
print()

print("5. kakutani criterion - product factors approaching I/2 at two speeds")
for scaling in ("linear", "sqrt"):
    rep = qleb.kakutani_criterion(presets.drifting_product_family(scaling))
    print(f"  drift t = {scaling}(i): fitted decay exponent "
          f"{rep.details['fitted_exponent']:.4f} -> {rep.verdict}")
print()

print("6. block criterion - growing (2n+2)-dimensional family with disjoint outer supports")
rep = qleb.block_criterion_diagnostics(presets.three_block_family())
headline(rep)
print("  sampled hypotheses:", rep.evidence[-1])
print()

print("7. a modification that is harmless in L2 yet visible in distribution")


def triples(n):
    rho = np.diag([1.0, 0.0]).astype(complex)
    X = np.array([[1.0, n], [n, 1.0 + n**2]], dtype=complex)
    O = np.diag([0.0, -float(n) ** 2]).astype(complex)
    return rho, X, O


rep = qleb.d_infinitesimal_diagnostic(triples, [[0.9]], [[0.9]], grid=[3, 10, 30, 100])
for row in rep.evidence:
    n = row["n"]
    rho, _, O = triples(n)
    print(f"  n={n:>4}: L2 norm of O = {qleb.l2_norm_sq(rho, O):.1e}, "
          f"law deviation = {row['max_qcf_deviation']:.3f}")
print("  (the diagnostic never issues a verdict:", rep.verdict + ")")
