# Sato-Tate statistics of the Kloosterman angles as a grows.
import math

from aslfunc.curve import CurveParams
from aslfunc.statistics import (LOG_E_OVER_4, angle_ensemble, log_sin2_average, moment,
                                star_discrepancy)

print("limit of the log sin^2 average: log(e/4) =", round(LOG_E_OVER_4, 6))
for a in range(1, 8):
    ens = angle_ensemble(CurveParams(3, a, 1))
    ms = [moment(ens, n) for n in (1, 2, 3)]
    print(f"a={a}: places={len(ens):4d} D*={star_discrepancy(ens):.4f} "
          f"D*_xi={star_discrepancy(ens, 'xi'):.4f} logsin2={log_sin2_average(ens):+.4f} "
          f"M_1..3=" + " ".join(f"{m:+.3f}" for m in ms))

# histogram of angles against the Sato-Tate density (2/pi) sin^2
ens = angle_ensemble(CurveParams(3, 7, 1))
bins = 8
width = math.pi / bins
for i in range(bins):
    lo, hi = i * width, (i + 1) * width
    share = sum(1 for th in ens.theta if lo <= th < hi) / len(ens)
    st = (hi - lo) / math.pi - (math.sin(2 * hi) - math.sin(2 * lo)) / (2 * math.pi)
    print(f"[{lo:.2f},{hi:.2f})  empirical {share:.3f}  Sato-Tate {st:.3f}")
