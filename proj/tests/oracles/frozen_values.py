"""Independent oracles for values frozen into the C++ unit tests.

Run with python3; prints each value at full precision. Nothing here imports
or calls the C++ implementation.
"""
from fractions import Fraction
import math

import mpmath
import numpy as np

mpmath.mp.dps = 40


def truncated_powerlaw_moments(gamma, kmin, kmax):
    z = mpmath.fsum(mpmath.mpf(k) ** -gamma for k in range(kmin, kmax + 1))
    m1 = mpmath.fsum(mpmath.mpf(k) ** (1 - gamma) for k in range(kmin, kmax + 1)) / z
    m2 = mpmath.fsum(mpmath.mpf(k) ** (2 - gamma) for k in range(kmin, kmax + 1)) / z
    return m1, m2


def er_giant_fraction(mean_degree):
    return mpmath.findroot(lambda s: s - (1 - mpmath.e ** (-mean_degree * s)), 0.8)


if __name__ == "__main__":
    m1, m2 = truncated_powerlaw_moments(2.5, 2, 1000)
    print("powerlaw(2.5,2,1000) <k> =", mpmath.nstr(m1, 17))
    print("powerlaw(2.5,2,1000) <k2> =", mpmath.nstr(m2, 17))
    print("powerlaw(2.5,2,1000) threshold =", mpmath.nstr(m1 / m2, 17))
    kmax = int(math.floor(math.sqrt(100000 * 2)))
    m1, m2 = truncated_powerlaw_moments(2.5, 2, kmax)
    print(f"powerlaw(2.5,2,{kmax}) <k> =", mpmath.nstr(m1, 17), "<k2> =", mpmath.nstr(m2, 17),
          "ratio k2/k =", mpmath.nstr(m2 / m1, 17), "threshold =", mpmath.nstr(m1 / m2, 17))
    print("ER giant fraction lambda=2 =", mpmath.nstr(er_giant_fraction(2), 17))
    # star 1 centre + 4 leaves
    degs = [4, 1, 1, 1, 1]
    print("star <k> =", Fraction(sum(degs), 5), "<k2> =", Fraction(sum(d * d for d in degs), 5))
    # ab ac bc cd clustering
    print("abc+cd mean_local =", (Fraction(1) + 1 + Fraction(1, 3)) / 3, "transitivity =", Fraction(3, 5))
    print("ring lattice k=10 clustering =", Fraction(3 * 8, 4 * 9))
    print("uncorrelated clustering d=10 n=10000 =", Fraction((100 - 10) ** 2, 10000 * 1000))
    print("uncorrelated clustering poisson 10 n=10000 =", Fraction((110 - 10) ** 2, 10000 * 1000))
    print("predict_moments(10,150,0.5) =", 0.5 * 10, 0.25 * 150 + 0.25 * 10)
    print("star101 centre inclusion =", min(1.0, 0.1 * 100 / (200 / 101)))
