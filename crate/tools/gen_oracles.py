#!/usr/bin/env python3
"""Regenerate the frozen high-precision reference values used by the Rust tests.

Every value is computed with mpmath at 50 significant digits, independently of
the Rust implementation. Output is a Rust source file with `const` tables.

    python3 tools/gen_oracles.py > crates/core/tests/common/oracles.rs
"""
import mpmath as mp

mp.mp.dps = 50


def c(z):
    return complex(z)


def fmt(z):
    z = c(z)
    return "(%r, %r)" % (z.real, z.imag)


def gamma_points():
    pts = [mp.mpc(0.5, 3), mp.mpc(-2.5, 0.25), mp.mpc(10.3, -7.1), mp.mpc(-14.2, 20.0),
           mp.mpc(0.1, 45), mp.mpc(33, 12), mp.mpc(-0.5, 0), mp.mpc(1e-3, 1e-3),
           mp.mpc(-30.7, 0.5), mp.mpc(2.25, 0)]
    return [(p, mp.gamma(p)) for p in pts]


def hyp_points():
    z = mp.mpc(0.5, 2)
    cases = [
        # (a, b, c, u)
        (1, 1, 2, mp.mpf("0.5")),
        (z, z, 2 * z, mp.mpf("0.9")),
        (z, z, 2 * z, mp.mpf("0.999")),
        (mp.mpc(0.3, 0.2), mp.mpc(1.1, -0.4), mp.mpc(2.7, 0.1), mp.mpf("0.95")),
        (mp.mpc(1.5, 0.5), mp.mpc(0.25, 0), mp.mpc(2.75, 0.5), mp.mpf("0.99")),  # c-a-b = 1
        (mp.mpc(1.5, 0.5), mp.mpc(0.25, 0), mp.mpc(3.75, 0.5), mp.mpf("0.97")),  # c-a-b = 2
        (mp.mpc(1.5, 0.5), mp.mpc(0.25, 0), mp.mpc(0.75, 0.5), mp.mpf("0.9")),   # c-a-b = -1
        (mp.mpc(1, 0.7), mp.mpc(0.5, 0.7), mp.mpc(1.5, 1.4), mp.mpf("0.98")),    # n = 2 green
        (mp.mpc(-3, 0), mp.mpc(2.5, 1), mp.mpc(1.5, 0), mp.mpf("0.9999")),       # polynomial
        (mp.mpc(4, -3), mp.mpc(-2.5, 1), mp.mpc(7.5, 2), mp.mpf("0.3")),
    ]
    return [(a, b, cc, u, mp.hyp2f1(a, b, cc, u)) for (a, b, cc, u) in cases]


def mode_s(z, k):
    return 2 ** (1 - 2 * z) * mp.gamma(mp.mpf(1) / 2 - z) / mp.gamma(z - mp.mpf(1) / 2) \
        * mp.gamma(k + z) / mp.gamma(k + 1 - z)


def mode_s_check(z, k):
    """Independent route: match the closed-form regular solution against the
    closed-form Jost solutions at two radii."""
    def ureg(r):
        t = mp.tanh(r / 2) ** 2
        return 2 ** k * mp.tanh(r / 2) ** k * mp.cosh(r / 2) ** (-2 * z) * mp.hyp2f1(z, k + z, k + 1, t)

    def jost(e, r):
        s2 = mp.sech(r / 2) ** 2
        return 2 ** (-e) * mp.tanh(r / 2) ** k * s2 ** e * mp.hyp2f1(e, k + e, 2 * e, s2)

    r1, r2 = mp.mpf(6), mp.mpf(7)
    m = mp.matrix([[jost(1 - z, r1), jost(z, r1)], [jost(1 - z, r2), jost(z, r2)]])
    v = mp.matrix([ureg(r1), ureg(r2)])
    a, b = mp.lu_solve(m, v)
    return b / a, a, b


def regular_closed_form(z, k, r):
    t = mp.tanh(r / 2) ** 2
    f = lambda rr: 2 ** k * mp.tanh(rr / 2) ** k * mp.cosh(rr / 2) ** (-2 * z) \
        * mp.hyp2f1(z, k + z, k + 1, mp.tanh(rr / 2) ** 2)
    return f(r), mp.diff(f, r)


def w_hat_closed(z, x, xi):
    nu = z - mp.mpf(1) / 2
    return 2 * x ** z * mp.sqrt(mp.pi) / mp.gamma(z) * (xi / (2 * x)) ** nu * mp.besselk(nu, x * xi)


def jost_closed(z, k, e, r):
    f = lambda rr: 2 ** (-e) * mp.tanh(rr / 2) ** k * mp.sech(rr / 2) ** (2 * e) \
        * mp.hyp2f1(e, k + e, 2 * e, mp.sech(rr / 2) ** 2)
    return f(r), mp.diff(f, r)


def main():
    print("// Generated by tools/gen_oracles.py (mpmath, 50 digits). Do not edit by hand.")
    print("#![allow(dead_code)]")
    print()
    print("/// (z, Γ(z))")
    print("pub const GAMMA: &[((f64, f64), (f64, f64))] = &[")
    for p, g in gamma_points():
        print("    (%s, %s)," % (fmt(p), fmt(g)))
    print("];")
    print()
    print("/// (a, b, c, u, F(a,b;c;u))")
    print("pub const HYP2F1: &[((f64, f64), (f64, f64), (f64, f64), f64, (f64, f64))] = &[")
    for a, b, cc, u, v in hyp_points():
        print("    (%s, %s, %s, %r, %s)," % (fmt(a), fmt(b), fmt(cc), float(u), fmt(v)))
    print("];")
    print()
    for label, z in (("ONE", mp.mpc(0.5, 1)), ("TWO", mp.mpc(0.5, 2))):
        print("/// Background H^2 scattering modes S_k(ζ) for k = 0..=16, ζ = %s" % c(z))
        print("pub const MODES_H2_%s: [(f64, f64); 17] = [" % label)
        for k in range(17):
            s = mode_s(z, k)
            s2, _, _ = mode_s_check(z, k)
            assert abs(s - s2) < mp.mpf("1e-30"), (k, s, s2)
            print("    %s," % fmt(s))
        print("];")
        print()
    z = mp.mpc(0.5, 1)
    _, a, b = mode_s_check(z, 0)
    print("/// Expansion coefficients (f, f') of the k = 0 regular solution, ζ = 0.5+1i, x = 2e^{-r}")
    print("pub const EXPANSION_K0_ONE: ((f64, f64), (f64, f64)) = (%s, %s);" % (fmt(a), fmt(b)))
    print()
    print("/// Closed-form H^2 regular solution, k = 1, ζ = 0.5+1i: (r, u, du/dr)")
    print("pub const REGULAR_K1_ONE: &[(f64, (f64, f64), (f64, f64))] = &[")
    for r in ("0.5", "2", "5", "9"):
        u, du = regular_closed_form(z, 1, mp.mpf(r))
        print("    (%s, %s, %s)," % (r if "." in r else r + ".0", fmt(u), fmt(du)))
    print("];")
    print()
    print("/// Ŵ_x(ξ) for n = 1, ζ = 0.5+2i, ξ = 1 via the Bessel-K closed form: (x, value)")
    print("pub const W_HAT_N1: &[(f64, (f64, f64))] = &[")
    for x in ("1e-2", "5e-3", "2.5e-3", "1e-3", "1e-4", "0.3"):
        v = w_hat_closed(mp.mpc(0.5, 2), mp.mpf(x), 1)
        print("    (%r, %s)," % (float(mp.mpf(x)), fmt(v)))
    print("];")
    print()
    zz = mp.mpc(0.5, 2)
    print("/// G_ζ(d) for n = 1, ζ = 0.5+2i: (d, value)")
    print("pub const GREEN_N1: &[(f64, (f64, f64))] = &[")
    for d in ("1e-6", "0.05", "0.7", "3", "20"):
        d = mp.mpf(d)
        cz = mp.pi ** (-0.5) * 2 ** (-2 * zz - 1) * mp.gamma(zz) / mp.gamma(zz + mp.mpf(1) / 2)
        u = mp.sech(d / 2) ** 2
        v = cz * mp.cosh(d / 2) ** (-2 * zz) * mp.hyp2f1(zz, zz, 2 * zz, u)
        print("    (%r, %s)," % (float(d), fmt(v)))
    print("];")
    print()
    print("/// Closed-form H^2 Jost germs at r = 12, ζ = 0.5+1i: (k, u_(1-ζ), u_(1-ζ)', u_ζ, u_ζ')")
    print("pub const JOST_R12_ONE: &[(i64, (f64, f64), (f64, f64), (f64, f64), (f64, f64))] = &[")
    for k in (0, 1, 5):
        um, dum = jost_closed(z, k, 1 - z, mp.mpf(12))
        up, dup = jost_closed(z, k, z, mp.mpf(12))
        print("    (%d, %s, %s, %s, %s)," % (k, fmt(um), fmt(dum), fmt(up), fmt(dup)))
    print("];")


if __name__ == "__main__":
    main()
