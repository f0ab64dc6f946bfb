"""
Stabilization and transfer
==========================

Homology maps are transposes of explicit maps on invariant cohomology.
We check the transfer relations exactly and watch the Betti numbers
settle down.
"""

from fernlab.stability import (
    StabilityModel,
    transfer_after_stab,
    verify_dold,
    verify_stability,
    verify_transfer_iso,
)

model = StabilityModel(2)

print("Betti numbers, xi = 2")
for n in range(0, 6):
    print(f"  n={n}:", [model.betti(n, k) for k in range(3)])

s = model.stab_matrix(2, 1)
print("stab on H_1 from n=2 to n=3:", s.matrix.to_strings())

t = model.t(3, 1)
print("t_3 on H_1:", t.matrix.to_strings(), "invertible:", t.is_invertible())

lhs = model.t(3, 1) @ model.stab_matrix(2, 1)
rhs = model.stab_matrix(1, 1) @ model.t(2, 1) + model.identity(2, 1)
print("t_3 s_2 == s_1 t_2 + id:", lhs.matrix == rhs.matrix)

for name, rep in [
    ("relations", verify_dold(2, 4, 2, model)),
    ("stability", verify_stability(2, (0, 4), 2, model)),
    ("transfer iso", verify_transfer_iso(2, (1, 5), 2, model)),
]:
    print(f"{name}: {len(rep.checks)} checks, passed={rep.passed}")

# t_{j+1} s_j is invertible here but not always a scalar
for r in transfer_after_stab(2, [2], 1, model).records:
    print("  t_3 s_2 on H_%s:" % r.params["degree"], r.witness["composite"], "scalar:", r.params["scalar"])
