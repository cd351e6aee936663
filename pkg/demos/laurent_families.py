"""Build the Burau representation over Z[t, t^-1], check the braid relations
exactly, extend it to the singular braid group and ask whether either is
irreducible."""

from sbrep import burau, burnside_verdict, phi_extension, standard
from sbrep.presentations import bn_presentation, sbn_presentation, verify_rep

for n in (3, 4):
    rep = burau(n)
    print(f"burau({n}) relation violations:", verify_rep(rep.images, bn_presentation(n)))
    print("   ", burnside_verdict(rep).notes[-1])

    ext = phi_extension(rep, 1, 2, -1)
    print("phi extension violations:", verify_rep(ext.images, sbn_presentation(n)))

# the standard representation is irreducible already at t = 2
v = burnside_verdict(standard(3))
print("standard(3):", v.status, "algebra dimension", v.algebra_dim, "|", "; ".join(v.notes))
