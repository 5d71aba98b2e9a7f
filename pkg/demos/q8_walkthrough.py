"""Step through the Q8 example: Cox ring, ambient cone, tropical cut, resolution.

Run with ``python demos/q8_walkthrough.py``.
"""

from coxres import cox_quotient, load_fixture
from coxres.pipeline import ambient_data, resolve_candidate

G = load_fixture("q8-2d")
print(f"|G| = {G.order}, junior classes: {G.junior_classes()}")

pres = cox_quotient(G)
for i, g in enumerate(pres.generators):
    print(f"T{i + 1} = {g}")
print("relation:", pres.relations[0])
print("Cl(X0) =", pres.spec, " degree matrix:", pres.q, "mod", pres.moduli)

p0 = [[1, 1, 1], [0, 2, 0], [0, 0, 2]]
_, sigma, _ = ambient_data(pres, p0)
print("sigma rays:", sigma.rays, " multiplicity:", sigma.multiplicity())

rep = resolve_candidate(pres, p0)
print()
print(rep.summary())
