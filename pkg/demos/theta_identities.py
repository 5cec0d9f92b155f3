#!/usr/bin/env python3
"""A tour of the series layer: expansions, identities, and positivity.

Run:  python3 demos/theta_identities.py
"""

from thetaforms import is_nonnegative, named_function, sift
from thetaforms.identities import load_default_registry, verify_series


def show(name, series, terms=14):
    print(f"{name:24s} {list(series.coeffs[:terms])}")


def main():
    n = 60
    print("== classical expansions ==")
    show("phi(q)", named_function("phi", n))
    show("psi(q)", named_function("psi", n))
    show("E(q)", named_function("E", n))

    print("\n== a theta identity, checked coefficient by coefficient ==")
    psi = named_function("psi", n)
    phi = named_function("phi", n)
    phi3 = named_function("phi", n, 3)
    psi3 = named_function("psi", n, 3)
    psi6 = named_function("psi", n, 6)
    from thetaforms.series import Series
    lhs = psi * phi ** 2
    rhs = psi * phi3 ** 2 + 4 * Series.monomial(1, n) * psi3 * psi6 * phi
    print("psi*phi^2 == psi*phi(q^3)^2 + 4q*psi(q^3)*psi(q^6)*phi :",
          lhs == rhs)

    print("\n== sifting picks out arithmetic progressions ==")
    show("S[8,1](phi*phi(q^8)^2)", sift(phi * named_function("phi", n, 8) ** 2, 8, 1))
    show("2*psi*phi^2", 2 * (psi * phi ** 2))

    print("\n== positivity with a control ==")
    limit = 300
    psi = named_function("psi", limit)
    phi = named_function("phi", limit)
    phi7 = named_function("phi", limit, 7)
    diff = phi * phi - phi7 * phi7
    ok, bad = is_nonnegative(diff)
    print(f"phi^2 - phi(q^7)^2 nonnegative: {ok} (first negative at {bad})")
    ok, _ = is_nonnegative(psi * diff)
    print(f"psi * (phi^2 - phi(q^7)^2) nonnegative: {ok}")

    print("\n== the registry agrees ==")
    registry = load_default_registry()
    for name in ("1.11", "2.9", "1.14", "5.3"):
        result = verify_series(registry[name], 200)
        print(f"{name:6s} {'pass' if result.passed else 'FAIL'}")


if __name__ == "__main__":
    main()
