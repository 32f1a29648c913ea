"""Independent closed-form oracles used by several test modules."""
from fractions import Fraction
from itertools import product

# number of roots of the split simple algebras (0 excluded)
ROOT_COUNTS = {"A1": 2, "A2": 6, "A3": 12, "B2": 8, "C2": 8, "B3": 18, "D4": 24}


def loop_a1_roots(window):
    """R of the A1 loop algebra in coordinates (h-eigenvalue, c-eigenvalue, d-eigenvalue)."""
    return {(Fraction(2 * e), Fraction(0), Fraction(n))
            for e, n in product((-1, 0, 1), range(-window, window + 1))}


def loop_a1_string(xi, alpha):
    """(d, u) of the alpha-string through xi in the untruncated loop root system."""
    a, s = int(xi[0]) // 2, int(alpha[0]) // 2
    ks = [k for k in range(-8, 9) if abs(a + k * s) <= 1]
    return -min(ks), max(ks)


def loop_a1_coroot(xi, alpha):
    # (xi, alpha) = xi_h alpha_h / 2 and (alpha, alpha) = 2
    return Fraction(xi[0] * alpha[0], 2)
