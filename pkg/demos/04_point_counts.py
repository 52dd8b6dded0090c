# Counting points on the fibres of E: y^2 = x(x + 16 gamma)(x + (t^(q^a) - t)^2).
from aslfunc.curve import (CurveParams, dirichlet_coefficient, frobenius_trace, m_sum,
                           reduction_report, series_from_kloosterman)
from aslfunc.field import extension

params = CurveParams(3, 1, 1)
rep = reduction_report(params)
print("deg disc =", rep.deg_disc_min, " deg N =", rep.deg_conductor, " b =", rep.b)

F3 = extension(3, 1)
print("Frobenius traces over F_3:", [frobenius_trace(params, tau) for tau in F3.elements()],
      " at infinity:", frobenius_trace(params, None))

# S_n is a sum of fibre traces; it is also a sum of squared Kloosterman sums
for n in range(1, 5):
    print(f"S_{n}: point counts {dirichlet_coefficient(params, n):6d}   "
          f"Kloosterman route {series_from_kloosterman(params, n):6d}")

# the character sum behind that identity, on F_9
F9 = extension(3, 2)
print("m_sum over F_9:", [m_sum(F9, beta, 1).to_rational_integer() for beta in range(9)])
