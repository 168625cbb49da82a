"""Exact evaluation of the cubic partition function a(n) (pairs of partitions
with the second part even-only) and the classical partition function p(n),
by convergent exponential-sum series with integer-rounding certificates,
cross-checked against exact big-integer series oracles.
"""
from .asymptotics import (AsymptoticReport, conjecture_residual_scan,
                          extrapolate_c2, leading_asymptotic, log_expansion)
from .engine import (FROZEN_CONVENTION, MAX_BITS, MAX_K, MAX_K_ORDINARY,
                     CalibrationError, ConventionFlags, ExactEvalReport,
                     LadderExhausted, adaptive_certify, calibrate_conventions,
                     eval_cubic, eval_cubic_classes, eval_partition)
from .kloosterman import (A_classical, A_classical_selberg, A_cubic,
                          A_cubic_regrouped, A_cubic_via_zuckerman,
                          KloostermanValue, regrouped_index, regrouping_phase)
from .modular import (ALPHA, CuspParamRow, MoebiusMap, UnitPhase,
                      congruence_class_of, dedekind_sum, dedekind_sum_direct,
                      eta_epsilon, f_multiplier, gamma0_2_row)
from .numerics import (BesselResult, PrecisionConfig, bessel_I,
                       bessel_I_asymptotic, bessel_i2_scaled,
                       hankel_coefficient, required_precision)
from .series import (CongruenceReport, PartitionTable, check_congruence,
                     cubic_table, cubic_value, p_table,
                     series_reciprocal_cubic)

__version__ = "1.0.0"

__all__ = [
    "ALPHA", "AsymptoticReport", "BesselResult", "CalibrationError",
    "CongruenceReport", "ConventionFlags", "CuspParamRow", "ExactEvalReport",
    "FROZEN_CONVENTION", "KloostermanValue", "LadderExhausted", "MAX_BITS",
    "MAX_K", "MAX_K_ORDINARY", "MoebiusMap", "PartitionTable",
    "PrecisionConfig", "UnitPhase", "A_classical", "A_classical_selberg",
    "A_cubic", "A_cubic_regrouped", "A_cubic_via_zuckerman",
    "adaptive_certify", "bessel_I", "bessel_I_asymptotic", "bessel_i2_scaled",
    "calibrate_conventions", "check_congruence", "congruence_class_of",
    "conjecture_residual_scan", "cubic_table", "cubic_value", "dedekind_sum",
    "dedekind_sum_direct", "eta_epsilon", "eval_cubic", "eval_cubic_classes",
    "eval_partition", "extrapolate_c2", "f_multiplier", "gamma0_2_row",
    "hankel_coefficient", "leading_asymptotic", "log_expansion", "p_table",
    "regrouped_index", "regrouping_phase", "required_precision",
    "series_reciprocal_cubic",
]
