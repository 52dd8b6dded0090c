# Exact Kloosterman sums as cyclotomic integers, and the identities they obey.
import math

from aslfunc.cyclotomic import CycNum
from aslfunc.field import extension, subfield_embed
from aslfunc.kloosterman import kloosterman_batch, kloosterman_salie, kloosterman_sum, lift_sequence

F3 = extension(3, 1)
print("Kl_F3(1) =", kloosterman_sum(F3, 1).to_rational_integer())
print("Kl_F3(2) =", kloosterman_sum(F3, 2).to_rational_integer())

# over F_25 the sums live in Z[zeta_5]; they are real, so fixed by complex conjugation
F25 = extension(5, 2)
vals = kloosterman_batch(F25, range(1, 25))
print("all real:", all(v.conj_bar() == v for v in vals))
print("Salie agrees:", all(v == kloosterman_salie(F25, a) for a, v in zip(range(1, 25), vals)))
print("largest |Kl| / 2 sqrt(25):", max(abs(v.embed_real()) for v in vals) / (2 * 5))

# the Weil bound is never attained: Kl^2 - 4|F| is never zero
print("strict Weil:", all(not (v * v - 4 * 25).is_zero() for v in vals))

# lifting: Kl over F_{5^4} at an element of F_25 follows a two-term recurrence
F625 = extension(5, 4)
alpha = F25(7)
big = kloosterman_sum(F625, subfield_embed(alpha, F625))
print("lift recurrence:", big == lift_sequence(kloosterman_sum(F25, alpha), 25, 2))

# a value in Z[zeta_p] has p-1 complex embeddings; j = 1 is exp(2 pi i / p)
v = vals[0]
print("embeddings of Kl_F25(1):", [round(v.embed_real(j), 6) for j in range(1, 5)])
print("zeta_5 + zeta_5^-1 =", round((CycNum.zeta_power(5, 1) + CycNum.zeta_power(5, 4)).embed_real(), 6),
      "=", round(2 * math.cos(2 * math.pi / 5), 6))
