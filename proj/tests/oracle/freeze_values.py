"""Independent mpmath oracle for the frozen reference values in the C++ tests.

Every number here is computed from first principles (power series, direct
angular quadrature of the witness over the shell, root finding) at 40 digits,
without reusing any formula from the library. Run with `python3 freeze_values.py`
and paste the output into the corresponding test files.
"""

import mpmath as mp

mp.mp.dps = 40


def i0_series(z):
    z = mp.mpc(z)
    total, term, k = mp.mpc(1), mp.mpc(1), 0
    while True:
        k += 1
        term *= (z * z / 4) / (k * k)
        total += term
        if abs(term) < mp.mpf(10) ** (-45) * abs(total):
            return total


def cat_terms(Q, hbar, p, q):
    A = 1 / (2 * mp.pi * hbar * (1 - mp.exp(-Q * Q / hbar)))
    lobes = A * mp.exp(-p * p / hbar) * (mp.exp(-(q - Q) ** 2 / hbar) + mp.exp(-(q + Q) ** 2 / hbar))
    interference = 2 * A * mp.exp(-(p * p + q * q) / hbar) * mp.cos(2 * Q * p / hbar)
    return lobes, interference


def circle_means(center_p, rho, Q, hbar):
    """Angular means of both cat pieces over the circle of radius rho at (center_p, 0)."""
    width = mp.sqrt(hbar) / rho
    pts = sorted({mp.mpf(0), mp.pi - 20 * width, mp.pi - 5 * width, mp.pi, mp.pi + 5 * width,
                  mp.pi + 20 * width, 2 * mp.pi})
    pts = [t for t in pts if 0 <= t <= 2 * mp.pi]

    def piece(idx):
        f = lambda t: cat_terms(Q, hbar, center_p + rho * mp.cos(t), rho * mp.sin(t))[idx]
        return mp.quad(f, pts, maxdegree=10) / (2 * mp.pi)

    return piece(0), piece(1)


def main():
    print("# I0 values (re, im)")
    for z in [1, 2j, mp.mpc(3, 4), mp.mpc(-3, 1), mp.mpc(12, -7)]:
        v = i0_series(z)
        print(f"I0({z}) = {mp.nstr(v.real, 20)} {mp.nstr(v.imag, 20)}", flush=True)
    for z in [mp.mpc(20, 5), mp.mpc(0.5, 30), mp.mpc(36, -20), mp.mpc(60, 60)]:
        v = mp.exp(-z) * i0_series(z)
        print(f"scaled I0({z}) = {mp.nstr(v.real, 20)} {mp.nstr(v.imag, 20)}", flush=True)
    for z in [100, 1e6, mp.mpc(1e9, 1e9)]:
        v = mp.besseli(0, z)
        lm = mp.log(abs(v))
        print(f"log|I0({z})| - Re z = {mp.nstr(lm - mp.re(z), 20)} arg = {mp.nstr(mp.arg(v), 20)}", flush=True)
    print(f"I0(100) series check: {mp.nstr(mp.log(i0_series(100)) - 100, 20)}", flush=True)

    print("# cat overlap terms on the circle through the origin (R, Q, hbar): positive negative")
    for R, Q, hbar in [(1, 0.3, 0.01), (1, 0.1, 0.1), (2, 0.5, 0.05),
                       (1, mp.mpf(10) ** (-0.6), mp.mpf("1e-3"))]:
        R, Q, hbar = mp.mpf(R), mp.mpf(Q), mp.mpf(hbar)
        pos, neg = circle_means(R, R, Q, hbar)
        print(f"R={R} Q={mp.nstr(Q, 17)} hbar={hbar}: {mp.nstr(pos, 20)} {mp.nstr(neg, 20)}", flush=True)

    mp.mp.dps = 20
    print("# N=2 separable shell, R=1, omega=1, hbar=1e-2, Q=hbar^0.2")
    hbar = mp.mpf("0.01")
    Q = hbar ** mp.mpf("0.2")
    R = mp.mpf(1)
    E = R * R / 2
    for w2 in [mp.mpf("0.5"), mp.mpf(1), mp.mpf(2)]:
        r_max = mp.sqrt(2 * E / w2)

        def integrand(r, idx):
            s = w2 * r * r / 2
            rho = mp.sqrt(R * R - 2 * s)
            gauss = mp.exp(-r * r / hbar) / (mp.pi * hbar)
            return 2 * mp.pi * r * gauss * circle_means(R, rho, Q, hbar)[idx]

        area = mp.pi * r_max ** 2
        cut = min(r_max, 12 * mp.sqrt(hbar))
        pos = mp.quad(lambda r: integrand(r, 0), [0, cut / 4, cut]) / area
        neg = mp.quad(lambda r: integrand(r, 1), [0, cut / 4, cut]) / area
        print(f"omega2={w2}: {mp.nstr(pos, 17)} {mp.nstr(neg, 17)}", flush=True)

    print("# position-pair witness: transversal limit, circle R=1 centred (0,-1), lines q=-0.5, 0.5")
    theta = mp.findroot(lambda t: -1 + mp.sin(t) + mp.mpf("0.5"), 0.5)
    dh_dp = abs(mp.cos(theta))  # omega R |cos theta| with omega = R = 1
    limit = (1 / (2 * mp.pi)) * 2 * (1 / dh_dp)
    print(f"transversal limit = {mp.nstr(limit, 20)}", flush=True)


if __name__ == "__main__":
    main()
