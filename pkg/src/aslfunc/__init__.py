"""Exact L-functions of the Artin-Schreier family E_{a,gamma} over F_q(t).

The curve is y^2 = x(x + 16 gamma)(x + wp_a(t)^2) with wp_a(t) = t^(q^a) - t.
Its L-function is a product over the places v of G_m of degree dividing a,
with local factors built from the Kloosterman sums Kl_{F_v}(gamma beta_v^2).
"""

from .curve import (CurveParams, artin_schreier_count, dirichlet_coefficient,
                    frobenius_trace, m_sum, reduction_report)
from .cyclotomic import CycNum, character_value
from .errors import *  # noqa: F401,F403
from .field import FFElem, FieldCtx, make_field, subfield_embed, trace_to_base
from .kloosterman import KloostermanValue, kloosterman_salie, kloosterman_sum, kln
from .lfunction import (LPoly, SpecialValueReport, analytic_rank, l_polynomial, special_value,
                        verify_functional_equation, verify_series)
from .places import Place, PlaceSet, count_places, irreducibles, place_set
from .statistics import (AngleEnsemble, angle_ensemble, brauer_siegel_ratio, log_sin2_average,
                         moment, star_discrepancy)

__version__ = "0.1.0"
