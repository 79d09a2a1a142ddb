"""Independent high-precision reference values for the geometry and kernel tests.

Works directly with the ellipse parametrization z = a cos(theta) + i b sin(theta) in mpmath,
so it shares no code with the library. Prints the values frozen into tests/.
"""

import mpmath as mp

mp.mp.dps = 30
A, B = mp.mpf(2), mp.mpf(1)


def z(th):
    return mp.mpc(A * mp.cos(th), B * mp.sin(th))


def dz(th):
    return mp.mpc(-A * mp.sin(th), B * mp.cos(th))


def arc(th):
    return mp.quad(lambda u: abs(dz(u)), [0, th])


def theta_at(s):
    return mp.findroot(lambda th: arc(th) - s, s / 1.5)


def unit_tangent(th):
    d = dz(th)
    return d / abs(d)


def curvature(th):
    return A * B / (A**2 * mp.sin(th) ** 2 + B**2 * mp.cos(th) ** 2) ** 1.5


def k1(thf, ths):
    t, tau, tp = z(thf), z(ths), unit_tangent(thf)
    return -1 / (tau - t) + mp.conj(tp) / tp / mp.conj(tau - t)


def k2(thf, ths):
    t, tau, tp = z(thf), z(ths), unit_tangent(thf)
    d = tau - t
    return 1 / mp.conj(d) - d / mp.conj(d) ** 2 * mp.conj(tp) / tp


def cauchy_pv(phi, th0, crack_end):
    """PV of phi(tau)/(tau - t0) dtau over the closed ellipse, integrated in theta.

    phi(theta, on_crack) may jump at theta = 0 and theta = crack_end.
    """
    t0 = z(th0)
    on_crack = th0 < crack_end
    # Residue in theta: phi(t0) z'(th0) / (z(th) - t0) ~ phi(t0) / (th - th0).
    r = phi(th0, on_crack)

    def g(th, crack):
        return phi(th, crack) * dz(th) / (z(th) - t0) - r / (th - th0)

    # Gauss-Legendre: tanh-sinh nodes crowd th0 and the subtraction cancels catastrophically.
    gl = "gauss-legendre"
    total = mp.quad(lambda th: g(th, True), [0, th0, crack_end] if on_crack else [0, crack_end],
                    method=gl)
    pts = [crack_end, th0, 2 * mp.pi] if not on_crack else [crack_end, 2 * mp.pi]
    total += mp.quad(lambda th: g(th, False), pts, method=gl)
    return total + r * mp.log((2 * mp.pi - th0) / th0)


def show(name, v):
    if isinstance(v, mp.mpc):
        print(f"{name}: {mp.nstr(v.real, 17)} {mp.nstr(v.imag, 17)}")
    else:
        print(f"{name}: {mp.nstr(v, 17)}")


if __name__ == "__main__":
    crack_end = mp.pi / 2
    show("perimeter", 4 * A * mp.ellipe(1 - B**2 / A**2))
    show("l0", arc(crack_end))
    th = theta_at(mp.mpf(1))
    show("theta(s=1)", th)
    show("t(s=1)", z(th))
    show("t'(s=1)", unit_tangent(th))
    show("rho(s=1)", curvature(th))
    thf, ths = theta_at(mp.mpf("0.7")), theta_at(mp.mpf("2.9"))
    show("k1(0.7, 2.9)", k1(thf, ths))
    show("k2(0.7, 2.9)", k2(thf, ths))
    ths = theta_at(mp.mpf("5.0"))
    show("k1(0.7, 5.0)", k1(thf, ths))
    show("k2(0.7, 5.0)", k2(thf, ths))
    conj_pos = lambda th, crack: mp.conj(z(th))
    crack_only = lambda th, crack: z(th) if crack else mp.mpc(0)
    for s in ("0.7", "4.0"):
        th0 = theta_at(mp.mpf(s))
        show(f"pv conj(tau) at s={s}", cauchy_pv(conj_pos, th0, crack_end))
        show(f"pv tau on crack at s={s}", cauchy_pv(crack_only, th0, crack_end))
