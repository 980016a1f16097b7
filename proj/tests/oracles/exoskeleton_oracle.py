"""Energy-minimisation oracle for the three-joint spring chain, frozen into test_exoskeleton.cpp.

Hinge stiffness k = E0 w h^3 / (12 l), E0 = 6 (c10 + c01).
Equilibrium is the stationary point of 1/2 sum k_j th_j^2 + sum F_i y_i; the
gradient is taken by complex-step differentiation and zeroed with hybrd.
"""
import cmath
import numpy as np
from scipy.optimize import root

C10, C01 = 0.210e6, 0.525e6
HINGES = [(14e-3, 2.5e-3, 3.5e-3), (14e-3, 3e-3, 3.5e-3), (14e-3, 3e-3, 3.5e-3)]
SEG = [20e-3, 45e-3, 25e-3, 20e-3]
MASS = [1e-3, 2.2e-3, 1.2e-3, 1e-3]
G = 9.80665
E0 = 6 * (C10 + C01)
K = [E0 * w * h**3 / 12 / l for w, h, l in HINGES]


def points(th):
    pts = [(0.0, 0.0), (SEG[0], 0.0)]
    phi = 0.0
    for j in range(3):
        phi -= th[j]
        x, y = pts[-1]
        pts.append((x + SEG[j + 1] * cmath.cos(phi), y + SEG[j + 1] * cmath.sin(phi)))
    return pts


def potential(th, tip, gravity):
    pts = points(th)
    e = sum(0.5 * k * t * t for k, t in zip(K, th))
    e += tip * pts[3][1]
    if gravity:
        for s in (1, 2, 3):
            e += MASS[s] * G * 0.5 * (pts[s][1] + pts[s + 1][1])
    return e


def gradient(th, tip, gravity):
    h = 1e-30
    g = np.zeros(3)
    for j in range(3):
        z = [complex(t) for t in th]
        z[j] += 1j * h
        g[j] = potential(z, tip, gravity).imag / h
    return g


def solve(tip, gravity):
    r = root(gradient, np.zeros(3), args=(tip, gravity), method="hybr", tol=1e-15)
    assert np.max(np.abs(gradient(r.x, tip, gravity))) < 1e-15
    return r.x, -points(r.x)[4][1].real


if __name__ == "__main__":
    print("k", ["%.17g" % k for k in K])
    for tip, grav in [(0.0, True), (0.2, False), (0.5, True)]:
        th, d = solve(tip, grav)
        print(tip, grav, ["%.12g" % t for t in th], "%.12g" % d)
