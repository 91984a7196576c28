"""Independent reference values for the unit tests.

Re-implements the grid operators with numpy (array rolls instead of index
arithmetic), the peakon formulas with mpmath, and Poisson brackets with sympy.
Run it to regenerate the constants pasted into test_oracles.cpp.
"""
import numpy as np
import mpmath as mp
import sympy as sp

tp = 2 * np.pi
N = 6
s1, s2 = np.meshgrid(np.arange(N) / N, np.arange(N) / N, indexing="ij")

q1 = np.sin(tp * s1) + 0.3 * np.cos(tp * s2) + 0.4 * np.sin(2 * tp * s2)
q2 = np.cos(tp * (s1 + s2))
p1 = 0.5 * np.sin(tp * (s1 - s2)) + 0.2
p2 = np.cos(tp * s1) * np.sin(tp * s2)
f = np.array([q1, q2, p1, p2])
alpha = np.cos(tp * (s1 + 2 * s2)) + 0.1 * np.sin(tp * s1) + 0.5 * np.cos(2 * tp * s1)
h = 1.0 / N
mu = 1.0 / N**2


def centered(a, axis):
    return (np.roll(a, -1, axis) - np.roll(a, 1, axis)) / (2 * h)


def corner(a):
    a00 = a
    a10 = np.roll(a, -1, 0)
    a01 = np.roll(a, -1, 1)
    a11 = np.roll(a10, -1, 1)
    return ((a10 - a00) + (a11 - a01)) / (2 * h), ((a01 - a00) + (a11 - a10)) / (2 * h)


def cavg(a):
    a10 = np.roll(a, -1, 0)
    a01 = np.roll(a, -1, 1)
    a11 = np.roll(a10, -1, 1)
    return ((a + a11) + (a10 + a01)) / 4


def omega(u, v):
    return u[0] * v[2] + u[1] * v[3] - u[2] * v[0] - u[3] * v[1]


def right_gen(f, a):
    x1, x2 = centered(a, 1), -centered(a, 0)
    return np.array([centered(c, 0) * x1 + centered(c, 1) * x2 for c in f])


d1 = np.array([corner(c)[0] for c in f])
d2 = np.array([corner(c)[1] for c in f])
c = omega(d1, d2)
print("pullback_sum", repr(float(np.sum(c) * h * h)))
print("pullback_cell_0_0", repr(float(c[0, 0])))
print("pullback_cell_2_3", repr(float(c[2, 3])))
print("omega_alpha_hat", repr(float(np.sum(c * cavg(alpha)) * h * h)))
rg = right_gen(f, alpha)
print("right_generator_node_1_2", [repr(float(x)) for x in rg[:, 1, 2]])
# harmonic oscillator: X_h = (p, -q)
xh = np.array([f[2], f[3], -f[0], -f[1]])
print("orthogonality", repr(float(np.sum(omega(xh, rg)) * mu)))
ax = np.sin(tp * s1)
ay = np.sin(tp * s2)
ex1, ex2 = corner(ax)
ey1, ey2 = corner(ay)
m = ex1 * ey2 - ex2 * ey1
m = m - m.mean()
sig = np.sum(c * m) * h * h - np.sum(omega(right_gen(f, ax), right_gen(f, ay))) * mu
print("sigma_R", repr(float(sig)))

mp.mp.dps = 40
# two peakons, exp1d alpha = 1.5
A = mp.mpf("1.5")
Q = [mp.mpf("-1"), mp.mpf("0.5")]
P = [mp.mpf("2"), mp.mpf("-0.7")]
W = [mp.mpf("1"), mp.mpf("0.5")]
G = lambda x: mp.e ** (-abs(x) / A) / (2 * A)
dG = lambda x: 0 if x == 0 else -mp.sign(x) * G(x) / A
H = sum(P[a] * P[b] * G(Q[a] - Q[b]) * W[a] * W[b] for a in range(2) for b in range(2)) / 2
qd = [sum(P[b] * G(Q[a] - Q[b]) * W[b] for b in range(2)) for a in range(2)]
pd = [-sum(P[a] * P[b] * dG(Q[a] - Q[b]) * W[b] for b in range(2)) for a in range(2)]
print("peakon_H", mp.nstr(H, 20))
print("peakon_qdot", [mp.nstr(x, 20) for x in qd])
print("peakon_pdot", [mp.nstr(x, 20) for x in pd])

# gaussian kernel in 2D
A2 = mp.mpf("0.7")
x = [mp.mpf("0.3"), mp.mpf("-0.4")]
r2 = x[0] ** 2 + x[1] ** 2
g = mp.e ** (-r2 / (2 * A2**2))
print("gauss_value", mp.nstr(g, 20), "grad", [mp.nstr(-xi / A2**2 * g, 20) for xi in x])

q1s, q2s, p1s, p2s = sp.symbols("q1 q2 p1 p2")
def pb(a, b):
    return sp.expand(sum(sp.diff(a, q) * sp.diff(b, p) - sp.diff(a, p) * sp.diff(b, q)
                         for q, p in [(q1s, p1s), (q2s, p2s)]))
g1 = sp.Rational(3, 2) * q1s**2 * p2s - q2s * p1s + sp.Rational(1, 3) * q1s**3
h1 = p1s**2 * q2s - sp.Rational(5, 4) * p2s * q1s + 7
print("pb", pb(g1, h1))
