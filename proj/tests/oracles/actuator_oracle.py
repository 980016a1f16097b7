"""Bisection oracles for the ring-reinforced actuator, frozen into test_actuator.cpp.

Axial balance of the capped tube with the circumferential stretch locked at 1:
    p * pi * ri^2 = sigma_z(lz) * A0 / lz,   sigma_z = sum mu_i (lz^a_i - lz^-a_i)
Unreinforced membrane estimate (reference geometry hoop load):
    sigma_theta(lam) = p * ri / t0
"""
import math

SET3 = [(1.05, 1.12e5), (4.00, 45.0), (-1.60, -975.0)]
SET2 = [(1.05, 1.50e5), (4.00, 60.0), (-1.60, -1300.0)]
SET1 = [(1.55, 107900.0), (7.86, 21.47), (-1.91, -87100.0)]
RI, T0, L0 = 5e-3, 2e-3, 70e-3


def planar(terms, l):
    return sum(mu * (l**a - l**-a) for a, mu in terms)


def bisect(f, lo, hi, n=200):
    flo = f(lo)
    for _ in range(n):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def axial_stretch(terms, p):
    a0 = math.pi * ((RI + T0) ** 2 - RI**2)
    return bisect(lambda l: planar(terms, l) * a0 / l - p * math.pi * RI**2, 1.0, 4.0)


def barrel(terms, p):
    return bisect(lambda l: planar(terms, l) - p * RI / T0, 1.0, 4.0)


if __name__ == "__main__":
    print("set3 lz(40 kPa)        = %.15g" % axial_stretch(SET3, 40e3))
    for name, t in (("set1", SET1), ("set2", SET2), ("set3", SET3)):
        print(f"{name} elongation(40 kPa) mm = %.12g" % ((axial_stretch(t, 40e3) - 1) * L0 * 1e3))
    print("barrel set3 rings off 40 kPa = %.15g" % barrel(SET3, 40e3))
    print("chamber volume lz=1.1   = %.15g" % (math.pi * RI**2 * L0 * 1.1))
