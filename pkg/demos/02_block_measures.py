#!/usr/bin/env python3
"""Block measures: engineered +1 / -1 bands in the transform.

A block with parameters (ell, Q, k) lives on the Q^(k+1)-th roots of
unity.  Its transform equals +1 on the whole band [Q^k, ell*Q^k], equals
-1 on [N/2, N/2 + ell*Q^k], and its total mass exceeds 1 by at most
320 * ell^3 / Q^2.  The -1 band is what kills the transform of the final
witness measure after a point mass at 0 is mixed in.
"""

from vdcset import blocks

ell, q, k = 3, 64, 0
params = blocks.BlockParams(ell, q, k)
print(f"parameters (ell={ell}, Q={q}, k={k}), order N = {params.order}")
print("validity ledger:")
for name, ok in params.ledger():
    print(f"  [{'ok' if ok else 'VIOLATED'}] {name}")

p, r, s = blocks.block_polynomials(params)
print(f"\ningredients: p of degree {p.degree}, r spikes at "
      f"{sorted(m for m in r.coeffs if m > 0)}, s of degree {s.degree}")

sigma = blocks.build_block(params)
print(f"block mass = {sigma.mass():.6f} <= {params.mass_bound:.6f} (bound 1 + 320 ell^3/Q^2)")

print("\ntransform values (real part) across the spectrum:")
for m in (0, 1, 2, 3, 16, 31, 32, 33, 34, 35, 40, 50):
    val = sigma.fourier(m)
    tag = ""
    if 1 <= m <= ell:
        tag = "  <- +1 band"
    elif q // 2 <= m <= q // 2 + ell:
        tag = "  <- -1 band"
    print(f"  sigma_hat({m:3d}) = {val.real:+.9f}{tag}")

print("\nperiodicity: sigma_hat(m) = sigma_hat(m + N):")
for m in (1, 33):
    print(f"  {m}: {sigma.fourier(m).real:+.9f} vs {m + params.order}: "
          f"{sigma.fourier(m + params.order).real:+.9f}")

print("\nworst residuals over the full bands:")
res = blocks.block_residuals(sigma, params)
for key, val in res.items():
    print(f"  {key}: {val:.3e}")
