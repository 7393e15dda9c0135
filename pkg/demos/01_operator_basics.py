"""Tour of the first-order operator: kernels, residuals, and verdicts.

Run with `python3 demos/01_operator_basics.py`.  Every number printed here is
deterministic.
"""

import numpy as np

from fueter import FDConfig, cf_apply, fields, is_monogenic, residual_norm

rng = np.random.default_rng(2026)


def shell(count, rmin=0.5, rmax=2.0):
    pts = rng.normal(size=(count, 4))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return pts * rng.uniform(rmin, rmax, size=(count, 1))


print("=" * 72)
print("1. Exact identities")
print("=" * 72)
p = np.array([0.8, -0.3, 0.5, 0.4])
for name, expected in (("conj_q", 4.0), ("identity_q", -2.0)):
    out = cf_apply(fields.get_field(name), p)
    print(f"  operator on {name!r:14s} at p -> {np.round(out[0], 10)}"
          f"   (expected ({expected}, 0, 0, 0))")

print()
print("=" * 72)
print("2. Kernel fields: residuals at 25 random shell points")
print("=" * 72)
for name in ("constant", "linear_monogenic", "E"):
    field = fields.get_field(name)
    worst = max(residual_norm(cf_apply(field, x)) for x in shell(25))
    print(f"  {name:18s} max |residual| = {worst:.3e}")

print()
print("=" * 72)
print("3. Non-kernel fields are detected")
print("=" * 72)
pts = shell(40)
for name in ("nonmonogenic_linear", "nonmonogenic_quadratic",
             "nonmonogenic_absquare"):
    rep = is_monogenic(fields.get_field(name), pts, tol=1e-5)
    print(f"  {name:24s} verdict={rep['verdict']!s:5s} "
          f"max residual = {rep['max_residual']:.3e}")

print()
print("=" * 72)
print("4. The finite-difference schemes")
print("=" * 72)
field = fields.get_field("nonmonogenic_absquare")
x = np.array([0.9, 0.3, -0.5, 0.7])
for scheme in ("central", "richardson"):
    vals = [residual_norm(cf_apply(field, x, FDConfig(step=h, scheme=scheme)))
            for h in (1e-2, 5e-3)]
    print(f"  {scheme:11s} step 1e-2 -> {vals[0]:.12f}   "
          f"step 5e-3 -> {vals[1]:.12f}")
print("  (the residual itself is nonzero; watch the digits stabilize)")
