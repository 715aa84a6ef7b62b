#!/usr/bin/env python3
"""Generate high-precision expected values for the C++ test suites.

Run manually; paste the printed constants into the test sources. Every value
is computed with mpmath at 40 digits, either from a defining integral
(mp.quad) or from mpmath's own special-function implementations, which are
independent of the C++ code under test.
"""

import mpmath as mp

mp.mp.dps = 40


def show(label, value):
    v = mp.mpc(value)
    print(f"{label:48s} re={mp.nstr(v.real, 22)} im={mp.nstr(v.imag, 22)}")


print("# gamma --------------------------------------------------------")
show("gamma(2.5+1i)", mp.gamma(mp.mpc(2.5, 1.0)))
show("gamma(-3.7+2.2i)", mp.gamma(mp.mpc(-3.7, 2.2)))
show("gamma(10-6i)", mp.gamma(mp.mpc(10, -6)))
show("gamma(40+5i)", mp.gamma(mp.mpc(40, 5)))
show("gamma(-40.5)", mp.gamma(mp.mpf("-40.5")))
show("gamma(1e-3+1e-3i)", mp.gamma(mp.mpc("1e-3", "1e-3")))
show("rgamma(2.5+1i)", 1 / mp.gamma(mp.mpc(2.5, 1.0)))

print("# incomplete gamma ---------------------------------------------")
show("lower_gamma(2.5, 1.3)", mp.gammainc(mp.mpf("2.5"), 0, mp.mpf("1.3")))
show("upper_gamma(2.5, 1.3)", mp.gammainc(mp.mpf("2.5"), mp.mpf("1.3"), mp.inf))
show("lower_gamma(3+0.5i, 2.0)", mp.gammainc(mp.mpc(3, 0.5), 0, 2))
show("upper_gamma(3+0.5i, 2.0)", mp.gammainc(mp.mpc(3, 0.5), 2, mp.inf))
show("lower_gamma(0.4, 7.0)", mp.gammainc(mp.mpf("0.4"), 0, 7))

print("# incomplete beta (defining integral) --------------------------")


def beta_inc(y, a, b):
    return mp.quad(lambda t: t ** (a - 1) * (1 - t) ** (b - 1), [0, y])


show("B_0.5(2, -0.3)", beta_inc(mp.mpf("0.5"), mp.mpf(2), mp.mpf("-0.3")))
show("B_0.7(1.5, 2.5)", beta_inc(mp.mpf("0.7"), mp.mpf("1.5"), mp.mpf("2.5")))
show("B_0.3(0.4+0.2i, 1.1)", beta_inc(mp.mpf("0.3"), mp.mpc(0.4, 0.2), mp.mpf("1.1")))
show("B_0.6(1.2, -1.7+0.4i)", beta_inc(mp.mpf("0.6"), mp.mpf("1.2"), mp.mpc(-1.7, 0.4)))

print("# incomplete 2F1 (Euler integral / complete beta) --------------")


def inc_2f1_lower(a, b, c, y, x):
    num = mp.quad(
        lambda u: u ** (b - 1) * (1 - u) ** (c - b - 1) * (1 - u * x) ** (-a), [0, y]
    )
    return num / mp.beta(b, c - b)


show("2F1_lower(0.7,1.2,2.4;0.5;0.3)", inc_2f1_lower(*map(mp.mpf, "0.7 1.2 2.4 0.5 0.3".split())))
show("2F1(0.7,1.2;2.4;0.3) series", mp.hyp2f1(mp.mpf("0.7"), mp.mpf("1.2"), mp.mpf("2.4"), mp.mpf("0.3")))

print("# endpoint-power reference integrals ---------------------------")
show("int_0^1 t^-0.5 e^t dt", mp.quad(lambda t: t ** mp.mpf("-0.5") * mp.exp(t), [0, 1]))
show("int_0^1 t^(-0.5+0.8i) cos(t) dt", mp.quad(lambda t: t ** mp.mpc(-0.5, 0.8) * mp.cos(t), [0, 1]))

print("# operator spot values (lower/upper incomplete RL) -------------")


def irl_lower(f, mu, x, y):
    # (1/Gamma(-mu)) * int_0^{yx} (x-t)^(-mu-1) f(t) dt
    return mp.quad(lambda t: (x - t) ** (-mu - 1) * f(t), [0, y * x]) / mp.gamma(-mu)


def irl_upper(f, mu, x, y):
    return mp.quad(lambda t: (x - t) ** (-mu - 1) * f(t), [y * x, x]) / mp.gamma(-mu)


show("D^-0.5[sin;0.5](1)", irl_lower(mp.sin, mp.mpf("-0.5"), 1, mp.mpf("0.5")))
show("D^-0.5{sin;0.5}(1)", irl_upper(mp.sin, mp.mpf("-0.5"), 1, mp.mpf("0.5")))
show("D^(-0.5+0.4i)[exp;0.5](1)", irl_lower(mp.exp, mp.mpc(-0.5, 0.4), 1, mp.mpf("0.5")))
show("D^(-0.5+0.4i){exp;0.5}(1)", irl_upper(mp.exp, mp.mpc(-0.5, 0.4), 1, mp.mpf("0.5")))
