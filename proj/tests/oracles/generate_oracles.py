"""High-precision reference values for the C++ tests.

Run from the repository root:

    python3 tests/oracles/generate_oracles.py > tests/oracles/oracle_values.hpp

Everything here is computed with mpmath at 40 digits, independently of the
C++ code: the polar differential comes from numerical differentiation of the
map, the integrals from mpmath quadrature.
"""

import mpmath as mp

mp.mp.dps = 40
CG = mp.mpf(16)
PI = mp.pi


def profile(r):
    L1 = mp.log(CG / r)
    L2 = mp.log(L1)
    g = 1 / L2
    H = L2 / L1
    G = g * mp.sqrt(1 + H * H)
    return g, H, G


def image_polar(r, theta):
    """Image radius and angle of (r, theta); theta in [-pi/2, 3pi/2)."""
    g, H, G = profile(r)
    a = mp.atan(H)
    if -PI / 2 < theta < PI / 2:
        psi = 2 * theta / PI * a
    else:
        tp = theta + 2 * PI if theta < PI / 2 else theta
        psi = 2 * tp - PI + (2 - 2 * tp / PI) * a
    return G, psi


def polar_jacobian(r, theta):
    rho = lambda rr, tt: image_polar(rr, tt)[0]
    psi = lambda rr, tt: image_polar(rr, tt)[1]
    R = rho(r, theta)
    a11 = mp.diff(lambda x: rho(x, theta), r)
    a12 = mp.diff(lambda t: rho(r, t), theta) / r
    a21 = R * mp.diff(lambda x: psi(x, theta), r)
    a22 = R * mp.diff(lambda t: psi(r, t), theta) / r
    return a11, a12, a21, a22


def distortion(a11, a12, a21, a22):
    det = a11 * a22 - a12 * a21
    fro2 = a11**2 + a12**2 + a21**2 + a22**2
    smax2 = (fro2 + mp.sqrt(fro2**2 - 4 * det**2)) / 2
    return smax2 / det


def closed_K(r, theta):
    """K from the closed-form differential (used inside integrals)."""
    L1 = mp.log(CG / r)
    L2 = mp.log(L1)
    g, H, G = profile(r)
    s = mp.sqrt(1 + H * H)
    rg = 1 / (L1 * L2**2)
    rH = (L2 - 1) / L1**2
    a11 = (rg * (1 + H * H) + g * H * rH) / s
    a = mp.atan(H)
    if -PI / 2 < theta < PI / 2:
        a21 = 2 * theta / PI * g * rH / s
        a22 = 2 / PI * g * s * a
    else:
        tp = theta + 2 * PI if theta < PI / 2 else theta
        a21 = (2 - 2 * tp / PI) * g * rH / s
        a22 = (2 - 2 / PI * a) * g * s
    return distortion(a11, 0, a21, a22)


def f3(z):
    return z / (z + 1)


def lip_integral(a, b):
    return mp.quad(lambda t: mp.exp(1 / t), [a, (a + b) / 2, b])


def out(name, value, digits=20):
    print(f"inline constexpr double {name} = {mp.nstr(value, digits, min_fixed=1, max_fixed=0)};")


def main():
    print("#pragma once")
    print("// Generated by tests/oracles/generate_oracles.py; do not edit.")
    print("namespace oracle {")

    for tag, r in [("1em1", mp.mpf("1e-1")), ("1em5", mp.mpf("1e-5")),
                   ("1em10", mp.mpf("1e-10")), ("1em50", mp.mpf("1e-50")),
                   ("1em300", mp.mpf("1e-300"))]:
        g, H, G = profile(r)
        out(f"g_{tag}", g)
        out(f"H_{tag}", H)
        out(f"G_{tag}", G)
        out(f"rGprime_{tag}", mp.diff(lambda u: profile(mp.exp(u))[2], mp.log(r)))

    out("g_inv_0p5", CG * mp.exp(-mp.exp(2)))
    out("g_inv_0p3", CG * mp.exp(-mp.exp(1 / mp.mpf("0.3"))))

    points = [("a", mp.mpf("1e-3"), mp.mpf("0.7")), ("b", mp.mpf("1e-3"), mp.mpf("2.5")),
              ("c", mp.mpf("0.3"), mp.mpf("-1.2")), ("d", mp.mpf("1e-8"), mp.mpf("4.0"))]
    for tag, r, th in points:
        j = polar_jacobian(r, th)
        for k, v in zip(("a11", "a12", "a21", "a22"), j):
            out(f"jac_{tag}_{k}", v)
        K = distortion(*j)
        assert abs(K / closed_K(r, th) - 1) < mp.mpf("1e-25")
        out(f"K_{tag}", K)

    for tag, r in [("1em2", mp.mpf("1e-2")), ("1em10", mp.mpf("1e-10")),
                   ("1em30", mp.mpf("1e-30"))]:
        L1 = mp.log(CG / r)
        bound = L1 * mp.log(L1)
        out(f"ratio_pi_{tag}", closed_K(r, PI) / bound)
        out(f"ratio_zero_{tag}", closed_K(r, mp.mpf(0)) / bound)

    out("lip_energy_r0p2_d1", 1 / lip_integral(mp.mpf("0.2"), mp.mpf("0.5")))
    out("log_lip_integral_2em10", mp.log(lip_integral(mp.mpf(2) ** -10, mp.mpf("0.5"))))
    out("log_lip_integral_1em3_2em9", mp.log(lip_integral(mp.mpf("1e-3"), mp.mpf(2) ** -9)))

    t = mp.mpf("1e-2")
    out("boundary_residual_1em2", mp.re(f3(t + 1j * mp.exp(-1 / t))) - t)

    for tag, tt in [("0p1", mp.mpf("0.1")), ("0p3", mp.mpf("0.3"))]:
        x = mp.findroot(lambda x: x * x + mp.exp(-2 / x) - tt * tt, tt * (1 - mp.mpf("1e-12")))
        out(f"x1_max_{tag}", x)

    # Preimage diameter of the image arc with t = 0.05: endpoints +-i r_s.
    t = mp.mpf("0.05")
    s = mp.findroot(lambda s: abs(f3(s + 1j * mp.exp(-1 / s))) - t, t)
    out("image_arc_s_max_0p05", s)
    log_r = mp.log(CG) - mp.exp(1 / s)
    out("log_diam_preimage_0p05", mp.log(4) + log_r - mp.log1p(mp.exp(2 * log_r)))

    # Integral of K over 2^-4 < r < 1 (full disk of the f2 source plane).
    mp.mp.dps = 20
    seams = [-PI / 2, PI / 2, 3 * PI / 2]
    val = mp.quad(lambda r: r * mp.quad(lambda th: closed_K(r, th), seams),
                  [mp.mpf(2) ** -4, mp.mpf("0.25"), 1])
    out("int_K_annulus_2em4", val, 15)

    # log of the integral of exp(K) over the unit disk through f1.
    def inner(v):
        r = mp.exp(-v)
        return mp.quad(lambda th: mp.exp(closed_K(r, th)) * 4 /
                       (1 + 2 * r * mp.cos(th) + r * r) ** 2, [-PI / 2, 0, PI / 2]) * mp.exp(-2 * v)
    part = mp.quad(inner, [0, 1, 4, 16, 60])
    L_ext = closed_K_ext()
    out("log_disk_exp_integral_1", mp.log(part + PI / 2 * mp.exp(L_ext)), 12)
    print("}  // namespace oracle")


def closed_K_ext():
    """K of the radial extension in the inner sector (constant)."""
    g, H, G = profile(mp.mpf(1))
    a = mp.atan(H)
    lp = 2 / PI * a
    return max(lp, 1 / lp)


if __name__ == "__main__":
    main()
