# Field size
MAX_PRIME = 2**16  # desk scale; sqrt_mod searches exhaustively

# Dense backends
MAX_DENSE_ORDER = 2**20        # per-register dense vectors over G
MAX_DENSE_MATRIX = 2**12       # full |G| x |G| matrices (QFT, circuit, projectors); narrower than MAX_DENSE_ORDER
MAX_TWO_REGISTER_DIM = 2**12   # p^(2n) for two-register dense states

# Enumeration
MAX_ENUMERATION = 2**16        # |H| above this is never enumerated

# Structured states
MAX_STRUCTURED_TERMS = 2**22

# Tolerances
DENSE_TOLERANCE = 1e-9
GATE_TOLERANCE = 1e-12

# Span-stabilization stop rule
STABLE_ROUNDS = 4              # consecutive rounds without rank increase at p >= STABLE_REFERENCE_PRIME
STABLE_REFERENCE_PRIME = 5     # smaller p waits ceil(STABLE_ROUNDS * log 5 / log p) rounds
ROUND_CAP_SLOPE = 8            # hard cap = ROUND_CAP_SLOPE * n + ROUND_CAP_OFFSET
ROUND_CAP_OFFSET = 32
TOTAL_ROUND_FACTOR = 60        # total rounds (incl. discards) <= factor * cap
