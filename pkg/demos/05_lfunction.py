# The L-polynomial, its rank at T = 1/q and the special value.
import math

from aslfunc.curve import CurveParams
from aslfunc.lfunction import (analytic_rank, l_polynomial, log_series, special_value,
                               verify_functional_equation, verify_series)

params = CurveParams(3, 1, 1)
L = l_polynomial(params)
print("L(T) coefficients:", L.coeffs)
print("rank:", analytic_rank(L), " sign:", verify_functional_equation(L))
sv = special_value(params, L)
print("L* =", sv.special_value, " log L*/log q^b =", round(sv.log_ratio, 5))
print("log series S_n:", log_series(L, 4), " checked against points:", verify_series(params, L, 4).ok)

# rank grows like q^a / a while b grows like 3 q^a
for a in range(1, 6):
    p = CurveParams(3, a, 1)
    L = l_polynomial(p)
    sv = special_value(p, L)
    print(f"a={a}: b={L.b:4d} rank={sv.rank:3d} log10 L*={sv.log_value / math.log(10):9.3f} "
          f"ratio={sv.log_ratio:+.4f}")
