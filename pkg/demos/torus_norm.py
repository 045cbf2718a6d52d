"""The norm N(mu(y - xi)) on the torus a^2 - b^2 z = 1 over F_p[xi]/(xi^k),
compared with its closed form, and the z-non-integral embedding ratio."""
import sys

from localshtuka.torus import norm_of_mu, torus_ring, verify_norm_identities

p = int(sys.argv[1]) if len(sys.argv) > 1 else 3
R = torus_ring(p, 1, 8)
g = norm_of_mu(R, R.gen(), 8)
print(f"p = {p}, xi^8 = 0")
print("N(mu(y - xi)) =", g)
for c in verify_norm_identities(p, 1, 8, 16):
    print("PASS" if c.passed else "FAIL", c.name)
