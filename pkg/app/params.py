VERSION = "0.1.0"

# OUTPUT
OUTPUT_DIR_ENV = "WEYL_OUTPUT_DIR"
CSV_FLOAT_FORMAT = "%.16e"  # 17 significant digits

# NUMERICS
TOLERANCE_SCALE = 1e-12  # tau(n) = TOLERANCE_SCALE * n
EIGEN_TOLERANCE_SCALE = 1e-10
CONDITION_LIMIT = 1e12
EXHAUSTIVE_PRODUCT_LIMIT = 16 ** 4  # above this, product identities are sampled
SAMPLED_PRODUCTS = 512

# FROZEN CONVENTIONS
# e_0^1 sends basis vector j to j-1, i.e. (e_0^1 psi)_j = psi_{j+1}
SHIFT_DIRECTION = "down"
# e_0^1 = exp(MOMENTUM_EXP_SIGN * 2 pi i P / n)
MOMENTUM_EXP_SIGN = 1
# e_1^0 = exp(POSITION_EXP_SIGN * 2 pi i X / n)
POSITION_EXP_SIGN = 1
# N+ = e_0^{NEIGHBOUR_PLUS_POWER}
NEIGHBOUR_PLUS_POWER = 1

CONVENTIONS = {
    "shift_direction": SHIFT_DIRECTION,
    "momentum_exp_sign": MOMENTUM_EXP_SIGN,
    "position_exp_sign": POSITION_EXP_SIGN,
    "neighbour_plus_power": NEIGHBOUR_PLUS_POWER,
}

# UNCERTAINTY
WITNESS_THRESHOLD = 0.01

# CONTINUUM LIMIT
LIMIT_MIN_N = 8
LIMIT_ERROR_THRESHOLD = 0.05
LIMIT_ROUNDING_FLOOR = 1e-12  # errors at or below this are converged

# LOCALITY
BAND_RADIUS = 1
DELOCALIZATION_THRESHOLD = 0.3
SPECTRUM_TOLERANCE = 1e-9

# WAVE
WAVE_STABILITY_BOUND = 0.5  # sqrt(alpha) * dt
WAVE_DRIFT_LIMIT = 1e-6
DISPERSION_TOLERANCE = 1e-4
