"""A tridiagonal matrix with one eigenvalue.

Walk through the construction, the exact characteristic polynomials and
the Jordan chain. Run with ``python demos/01_single_eigenvalue.py``.
"""

from fractions import Fraction

from apotent.schwarz import build_schwarz, charpoly_sequence, dense_matrix, eigvector_chain
from apotent.orthopoly import p_sequence

# %% Build the order-5 matrix with eigenvalue a = -2/7
a = Fraction(-2, 7)
spec = build_schwarz(5, a)
print("b:", [str(b) for b in spec.b])
for row in dense_matrix(spec):
    print("  ", "  ".join(f"{str(x):>8}" for x in row))

# %% Leading principal minors
# Only the last one collapses to (z - a)^5; the others have scattered zeros.
P = charpoly_sequence(spec)
for k in range(6):
    print(f"P_{k} =", P[k])

# %% Same polynomials, built without the matrix
assert p_sequence(5, a).entries == P.entries

# %% Jordan chain at a
# u_k collects the k-th derivatives of P_0..P_4 at a.
chain = eigvector_chain(spec)
print("chain holds:", chain.ok)
for k, u in enumerate(chain.vectors):
    print(f"u_{k} =", [str(x) for x in u])
