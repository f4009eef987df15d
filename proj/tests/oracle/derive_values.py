"""Reference values frozen into the C++ tests, recomputed at 50 digits.

Run: python3 tests/oracle/derive_values.py
"""
import mpmath as mp

mp.mp.dps = 50


def lambda3(l1, l2):
    # 1/(1-l1) + 1/(1-l2) + 1/(1-l3) = 1
    return 1 - 1 / (1 - 1 / (1 - l1) - 1 / (1 - l2))


def sigma(t):
    a, b, c = t
    return a + b + c, a * b + b * c + c * a


def twist_error(w1, w2, n):
    s = mp.mpf(n) / (2 * mp.pi)
    w1n = 1 / (1 / w1 + 1j * s)
    w2n = 1 / (1 / w2 - 1j * s)
    t = (mp.exp(w1n), mp.exp(w2n), lambda3(mp.exp(w1n), mp.exp(w2n)))
    lim = 1 - w1 * w2 / (w1 + w2)
    s1, s2 = sigma(t)
    r1, r2 = sigma((1, 1, lim))
    return max(abs(s1 - r1), abs(s2 - r2))


def f_derivative(l1, l2, z):
    # d/dz (l1 z + z^2) / (l2 z + 1)
    z = mp.mpmathify(z)
    return mp.diff(lambda x: (l1 * x + x**2) / (l2 * x + 1), z)


print("multiplier f_{1/2,1/3} at 3/4:", mp.nstr(f_derivative(mp.mpf(1) / 2, mp.mpf(1) / 3, mp.mpf(3) / 4), 20))
print("lambda3(1/2,1/3):", mp.nstr(lambda3(mp.mpf(1) / 2, mp.mpf(1) / 3), 20))
print("critical points f_{1/2,1/3}:", [mp.nstr(r, 20) for r in mp.polyroots([mp.mpf(1) / 3, 2, mp.mpf(1) / 2])])
e2 = mp.exp(-2)
print("lambda3 at n=0 for w=(-2,-2):", mp.nstr(lambda3(e2, e2), 20))
for n in (10, 100, 1000, 2000, 4000, 8000, 10000):
    print("error w=(-2,-2) n=%d:" % n, mp.nstr(twist_error(mp.mpf(-2), mp.mpf(-2), n), 15))
w1, w2 = mp.mpc(-1, 3), mp.mpc(-0.5, -7)
for n in (1000, 2000):
    print("error w=(-1+3i,-0.5-7i) n=%d:" % n, mp.nstr(twist_error(w1, w2, n), 15))
print("limit w=(-1+3i,-0.5-7i):", mp.nstr(1 - w1 * w2 / (w1 + w2), 20))
