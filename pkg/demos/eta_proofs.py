#!/usr/bin/env python3
"""The valence-bound prover, end to end.

A combination of eta quotients that is a modular function on Gamma_0(N)
and vanishes to high enough order at infinity must vanish identically:
the per-cusp order bounds turn "high enough" into an explicit coefficient
count.  This script prints both shipped certificates and then refutes a
deliberately corrupted combination.

Run:  python3 demos/eta_proofs.py
"""

from fractions import Fraction

from thetaforms.identities import _eta_combination, load_default_registry
from thetaforms.prover import EtaCombination, newman_check, prove


def main():
    registry = load_default_registry()

    for name in ("4.1", "5.4"):
        comb = _eta_combination(registry[name])
        print(f"== identity {name} (level {comb.level}, "
              f"{len(comb.terms)} quotients) ==")
        for _, eq in comb.terms:
            assert newman_check(eq).passed
        cert = prove(comb)
        print(cert.render())
        print()

    print("== a corrupted combination is refuted, not silently accepted ==")
    comb = _eta_combination(registry["4.1"])
    broken = EtaCombination(
        comb.level,
        ((comb.terms[0][0] + 1, comb.terms[0][1]),) + comb.terms[1:],
        comb.constant)
    cert = prove(broken)
    print("verdict:", cert.verdict)


if __name__ == "__main__":
    main()
