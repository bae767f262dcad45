"""Moments of the functional attached to the matrix, and their Hankel
determinants. All arithmetic is exact."""

from fractions import Fraction

from apotent.hankel import hankel_report, neither_positive_nor_negative
from apotent.moments import cf_phi, moments_upto, quad_phi, verify_moment_recurrence
from apotent.orthopoly import c_norm, gram_matrix

n, a = 6, Fraction(1)

# %% Moments and their three-term recurrence
s = moments_upto(n, a, 12)
print("s_0..s_12:", [int(x) for x in s.entries])
print("recurrence holds:", verify_moment_recurrence(s))

# %% Hankel determinants vanish past the order
rep = hankel_report(n, a)
for m, d in enumerate(rep.brute, 1):
    print(f"D_{m} = {d}")
print("recovered b:", {m: str(v) for m, v in rep.b.items()})
print("sign pattern is mixed:", neither_positive_nor_negative(n))

# %% Orthogonality: the Gram matrix is diagonal with entries C_m
G = gram_matrix(n, a)
print("diagonal:", G.is_diagonal())
print("C_m:", [str(c_norm(n, a, m)) for m in range(n)])

# %% The limiting continued fraction converges slowly near x = 1
for x in (1, 2, 5):
    print(x, float(abs(cf_phi(x, 40) - quad_phi(x))))
