# deterministic Miller-Rabin witnesses, exact for every n < 3.3 * 10^24
MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# above 2^64 we fall back to a fixed, larger witness set (probable primes only)
MR_EXTRA_WITNESSES = (
    41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
)
MR_DETERMINISTIC_LIMIT = 1 << 64

TRIAL_DIVISION_LIMIT = 10_000
# rho attempts use c = 1, 2, ..., DEFAULT_FACTOR_EFFORT
DEFAULT_FACTOR_EFFORT = 64
RHO_MAX_ITERATIONS = 1 << 22

# below this |D| the class number is always taken from the scalar enumeration
REFERENCE_ENUMERATION_LIMIT = 10**6

# family search defaults (|a|, |b|, |n| < bound)
DEFAULT_FAMILY_BOUND = 100
DEFAULT_MAX_CONDUCTOR = 999

DEFAULT_NONEXISTENCE_LIMIT = 10**7
DEFAULT_PRIME_CUTOFF = 10**6

# bounded searches for the two-torsion equations
DEFAULT_EXPONENT_MAX = 40
DEFAULT_A_MAX = 10**6
ARITHMETIC_CAP = 1 << 90

DEFAULT_WORKERS = 1
OUTPUT_FORMATS = ["csv", "json", "table"]

# p = 7 mod 16, q = 15 mod 16 and both 1 mod 15, combined by CRT
P_RESIDUE_MOD_240 = 151
Q_RESIDUE_MOD_240 = 31

# conductors listed for the family y^2 + y = x^3 + a x^2 + b x + n, N < 1000
TABLE1_CONDUCTORS = frozenset(
    {
        19, 37, 67, 91, 141, 163, 179, 197, 269, 307, 347, 373, 381, 389,
        443, 467, 485, 571, 611, 723, 739, 755, 811, 813, 827, 829, 899, 973,
    }
)

# column layouts of the emitted files
TABLE1_HEADER = ["a", "b", "n", "delta", "N", "p", "q"]
TABLE2_HEADER = ["N", "p", "q"]
VERDICTS_HEADER = ["N", "p", "q", "congruence_pass", "failing_field", "h_values"]
