#!/usr/bin/env python3
"""Counting identities: representation numbers, genera, weighted averages.

Run:  python3 demos/ternary_counts.py
"""

from thetaforms import (TernaryForm, aut_count, genus_partition, repcount,
                        build_sgenus, mass_direct, mass_formula,
                        weighted_count)
from thetaforms.identities import load_default_registry, verify_ternary


def main():
    f188 = TernaryForm(1, 8, 8, 0, 0, 0)
    f166 = TernaryForm(1, 6, 6, 0, 0, 0)
    f236 = TernaryForm(2, 3, 6, 0, 0, 0)

    print("== counts agree on the progression 8k+1 ==")
    print(" M   (1,8,8)   (1,6,6) + 2*(2,3,6)")
    for m in (1, 9, 17, 25, 33, 41, 49):
        lhs = repcount(f188, m)
        rhs = repcount(f166, m) + 2 * repcount(f236, m)
        print(f"{m:3d}   {lhs:5d}     {rhs:5d}")

    print("\n== the two weights are 16/|Aut| ==")
    for f in (f166, f236):
        print(f"|Aut({f})| = {aut_count(f):2d}   weight {16 // aut_count(f)}")

    print("\n== genera of discriminant 144 that matter here ==")
    for rec in genus_partition(144):
        forms = [str(g) for g in rec.classes]
        if "1,6,6,0,0,0" in forms or "2,3,6,0,0,0" in forms:
            print(" ", forms)

    print("\n== the union of lifted genera for S = 15 ==")
    sg = build_sgenus(15)
    for i, tg in enumerate(sg.tg, 1):
        chars = {p: sg.eps[(i - 1, p)] for p in sg.primes}
        print(f" cell {i}: {[str(f) for f in tg.classes]}")
        print(f"         characters {chars}  mass {mass_direct(tg)}"
              f" (= formula {mass_formula(tg, 15)})")
    print(" total mass:", sum(mass_direct(tg) for tg in sg.tg))
    print(" weighted counts at M=1:",
          [weighted_count(tg, 1) for tg in sg.tg])

    print("\n== full verification over M <= 2000 ==")
    registry = load_default_registry()
    for name in ("2.18", "1.16", "5.1", "6.9.s15.w15"):
        result = verify_ternary(registry[name], 2000)
        print(f"{name:12s} {'pass' if result.passed else 'FAIL'}  ({result.params})")


if __name__ == "__main__":
    main()
