"""The mass <-> shooting-parameter bijection on each background:
mass_of_beta is strictly monotone, and beta_of_mass inverts it."""

import numpy as np

from g2mono import metric, shooting

for met in (metric.EUCLIDEAN, metric.HYPERBOLIC, metric.BS_S4, metric.BS_CP2):
    print(f"\n== {met.id} ==")
    print("   beta        mass")
    for beta in (-0.1, -0.5, -1.0, -2.0, -4.0):
        m = shooting.mass_of_beta(beta, met)
        print(f"{beta:8.3f}  {m:10.6f}")
    for m in (0.5, 1.0, 2.0):
        b = shooting.beta_of_mass(m, met)
        back = shooting.mass_of_beta(b, met)
        print(f"mass {m}: beta = {b:.8f}, roundtrip error {abs(back - m):.1e}")
