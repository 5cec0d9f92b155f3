import random
from math import gcd

import pytest

from thetaforms.arith import divisors, jacobi, prime_divisors
from thetaforms.forms import (BinaryForm, TernaryForm,
                              enumerate_binary_classes, theta_series)
from thetaforms.genus import (binary_genus_partition, build_sgenus,
                              epsilon, genus_of, genus_partition,
                              lift_binary_to_ternary, mass_direct, mass_formula,
                              orthogonality_check, same_genus, sgenus_mass,
                              weighted_coefficients, weighted_count)

MASS_SHIFTS = (3, 5, 7, 11, 13, 15, 21, 33, 35)


def transformed_binary(rng, form):
    # random SL2(Z) image with small entries
    while True:
        a, b, c, d = 1, 0, 0, 1
        for _ in range(rng.randrange(1, 5)):
            k = rng.choice((-1, 1))
            if rng.randrange(2):
                a, b = a + k * c, b + k * d
            else:
                c, d = c + k * a, d + k * b
        if max(abs(v) for v in (a, b, c, d)) <= 3:
            break
    # Q(ax+by, cx+dy)
    fa = form.a * a * a + form.b * a * c + form.c * c * c
    fb = 2 * form.a * a * b + form.b * (a * d + b * c) + 2 * form.c * c * d
    fc = form.a * b * b + form.b * b * d + form.c * d * d
    return BinaryForm(fa, fb, fc)


class TestSameGenus:
    def test_reflexive(self):
        f = TernaryForm(2, 5, 10, 0, 0, 0)
        assert same_genus(f, f)

    def test_positive_pair(self):
        assert same_genus(TernaryForm(1, 10, 10, 0, 0, 0),
                          TernaryForm(4, 5, 6, 0, 4, 0))

    def test_negative_pair(self):
        assert not same_genus(TernaryForm(1, 6, 6, 0, 0, 0),
                              TernaryForm(2, 3, 6, 0, 0, 0))

    def test_discriminant_mismatch(self):
        with pytest.raises(ValueError):
            same_genus(TernaryForm(1, 1, 1, 0, 0, 0),
                       TernaryForm(1, 1, 2, 0, 0, 0))


class TestGenusPartition:
    def test_disc_400_groups(self):
        cells = {tuple(sorted(f.sextuple() for f in rec.classes))
                 for rec in genus_partition(400)}
        assert ((1, 10, 10, 0, 0, 0), (4, 5, 6, 0, 4, 0)) in cells
        assert ((2, 5, 10, 0, 0, 0),) in cells

    def test_disc_784_groups(self):
        cells = {tuple(sorted(f.sextuple() for f in rec.classes))
                 for rec in genus_partition(784)}
        assert ((1, 14, 14, 0, 0, 0), (2, 7, 14, 0, 0, 0)) in cells
        assert ((3, 5, 14, 0, 0, 2),) in cells

    def test_disc_3600_lifted_union_cells(self):
        cells = {tuple(sorted(f.sextuple() for f in rec.classes))
                 for rec in genus_partition(3600)}
        assert ((1, 30, 30, 0, 0, 0), (6, 10, 15, 0, 0, 0)) in cells
        assert ((3, 10, 30, 0, 0, 0),) in cells
        assert ((5, 6, 30, 0, 0, 0), (9, 11, 11, 2, 6, 6)) in cells
        assert ((2, 15, 30, 0, 0, 0), (5, 12, 18, 12, 0, 0)) in cells

    def test_partition_covers_and_separates(self):
        part = genus_partition(144)
        seen = []
        for rec in part:
            for f in rec.classes:
                seen.append(f)
                assert same_genus(f, rec.classes[0])
        assert len(seen) == len(set(seen))
        for i, rec in enumerate(part):
            for other in part[i + 1:]:
                assert not same_genus(rec.classes[0], other.classes[0])


def local_count_signature(form, mod):
    """#{v mod `mod` : Q(v) = m (mod `mod`)} for every residue m."""
    counts = [0] * mod
    a, b, c, d, e, f = form.sextuple()
    for x in range(mod):
        ax2 = a * x * x
        ex = e * x
        fx = f * x
        for y in range(mod):
            base = ax2 + b * y * y + fx * y
            lin = d * y + ex
            for z in range(mod):
                counts[(base + (c * z + lin) * z) % mod] += 1
    return tuple(counts)


class TestLocalCountConsistency:
    # solution counts modulo prime powers are genus invariants; the partition
    # must agree with them in both directions at these depths
    @pytest.mark.parametrize("disc,p_mod", [(27, 27), (100, 25)])
    def test_partition_matches_local_counts(self, disc, p_mod):
        part = genus_partition(disc)
        sig = {f: (local_count_signature(f, 64), local_count_signature(f, p_mod))
               for rec in part for f in rec.classes}
        for rec in part:
            ref = sig[rec.classes[0]]
            for f in rec.classes[1:]:
                assert sig[f] == ref, f
        reps = [rec.classes[0] for rec in part]
        signatures = {sig[f] for f in reps}
        assert len(signatures) == len(reps)


class TestBinaryGenera:
    def test_two_cells_at_24(self):
        cells = binary_genus_partition(-24)
        assert len(cells) == 2
        assert all(len(cell) == 1 for cell in cells)

    def test_56_grouping(self):
        cells = {frozenset((f.a, f.b, f.c) for f in cell)
                 for cell in binary_genus_partition(-56)}
        assert frozenset({(1, 0, 14), (2, 0, 7)}) in cells
        assert frozenset({(3, 2, 5), (3, -2, 5)}) in cells

    def test_four_cells_at_120(self):
        assert len(binary_genus_partition(-120)) == 4

    @pytest.mark.parametrize("s", MASS_SHIFTS)
    def test_cell_count_is_power_of_two(self, s):
        cells = binary_genus_partition(-8 * s)
        assert len(cells) == 2 ** len(prime_divisors(s))


class TestLift:
    def test_lift_of_principal(self):
        lifted = lift_binary_to_ternary(3, BinaryForm(1, 0, 6))
        assert lifted.sextuple() == (1, 6, 6, 0, 0, 0)

    def test_lift_uses_absolute_cross_term(self):
        lifted = lift_binary_to_ternary(7, BinaryForm(3, -2, 5))
        assert lifted.sextuple() == (3, 5, 14, 0, 0, 2)

    def test_lift_discriminant(self):
        for s in (3, 5, 7, 15):
            for bf in enumerate_binary_classes(-8 * s):
                assert lift_binary_to_ternary(s, bf).discriminant == 16 * s * s

    def test_rejects_wrong_discriminant(self):
        with pytest.raises(ValueError):
            lift_binary_to_ternary(5, BinaryForm(1, 0, 6))

    @pytest.mark.parametrize("disc,n", [(-24, 6), (-40, 10), (-56, 14),
                                        (-120, 30)])
    def test_lift_preserves_genus_relation(self, disc, n):
        # same ternary genus after adding n z^2 iff same binary genus
        rng = random.Random(disc)
        cells = binary_genus_partition(disc)
        cell_of = {}
        for i, cell in enumerate(cells):
            for f in cell:
                cell_of[(f.a, f.b, f.c)] = i
        reps = [f for cell in cells for f in cell]
        s = n // 2
        for _ in range(50):
            f1 = transformed_binary(rng, rng.choice(reps))
            f2 = transformed_binary(rng, rng.choice(reps))
            from thetaforms.forms import reduce_binary
            r1, r2 = reduce_binary(f1), reduce_binary(f2)
            same_binary = cell_of[(r1.a, r1.b, r1.c)] == cell_of[(r2.a, r2.b, r2.c)]
            t1 = lift_binary_to_ternary(s, r1)
            t2 = lift_binary_to_ternary(s, r2)
            assert same_genus(t1, t2) == same_binary


class TestSGenus:
    def test_s3(self):
        sg = build_sgenus(3)
        cells = [tuple(sorted(f.sextuple() for f in tg.classes)) for tg in sg.tg]
        assert ((1, 6, 6, 0, 0, 0),) in cells
        assert ((2, 3, 6, 0, 0, 0),) in cells

    def test_s15_reproduces_the_four_cells(self):
        sg = build_sgenus(15)
        cells = {tuple(sorted(f.sextuple() for f in tg.classes)) for tg in sg.tg}
        assert cells == {
            ((1, 30, 30, 0, 0, 0), (6, 10, 15, 0, 0, 0)),
            ((3, 10, 30, 0, 0, 0),),
            ((5, 6, 30, 0, 0, 0), (9, 11, 11, 2, 6, 6)),
            ((2, 15, 30, 0, 0, 0), (5, 12, 18, 12, 0, 0)),
        }

    def test_s7(self):
        sg = build_sgenus(7)
        cells = {tuple(sorted(f.sextuple() for f in tg.classes)) for tg in sg.tg}
        assert cells == {
            ((1, 14, 14, 0, 0, 0), (2, 7, 14, 0, 0, 0)),
            ((3, 5, 14, 0, 0, 2),),
        }

    def test_rejects_bad_shift(self):
        for bad in (9, 2, 21 * 3):
            with pytest.raises(ValueError):
                build_sgenus(bad)

    @pytest.mark.parametrize("s", MASS_SHIFTS)
    def test_disjoint_cells(self, s):
        sg = build_sgenus(s)
        all_forms = [f for tg in sg.tg for f in tg.classes]
        assert len(all_forms) == len(set(all_forms))


class TestEpsilon:
    def test_known_values(self):
        assert epsilon(genus_of(TernaryForm(1, 6, 6, 0, 0, 0)), 3) == -1
        assert epsilon(genus_of(TernaryForm(2, 5, 10, 0, 0, 0)), 5) == -1
        assert epsilon(genus_of(TernaryForm(1, 14, 14, 0, 0, 0)), 7) == -1
        assert epsilon(genus_of(TernaryForm(3, 5, 14, 0, 0, 2)), 7) == 1

    def test_trivial_divisor(self):
        assert epsilon(genus_of(TernaryForm(1, 6, 6, 0, 0, 0)), 1) == 1

    def test_multiplicative_over_prime_divisors(self):
        sg = build_sgenus(15)
        for i, tg in enumerate(sg.tg):
            assert sg.eps[(i, 15)] == sg.eps[(i, 3)] * sg.eps[(i, 5)]

    def test_independent_of_represented_value(self):
        # every represented value coprime to w must give the same character
        tg = genus_of(TernaryForm(1, 30, 30, 0, 0, 0))
        coeffs = [theta_series(f, 400).coeffs for f in tg.classes]
        for w in (3, 5, 15):
            values = {jacobi(-n, w)
                      for n in range(1, 400)
                      if gcd(n, w) == 1 and any(c[n] for c in coeffs)}
            assert values == {epsilon(tg, w)}


class TestMasses:
    def test_direct_values_s15(self):
        sg = build_sgenus(15)
        masses = {tuple(sorted(f.sextuple() for f in tg.classes)):
                  mass_direct(tg) for tg in sg.tg}
        assert masses[((1, 30, 30, 0, 0, 0), (6, 10, 15, 0, 0, 0))] == 3
        assert masses[((3, 10, 30, 0, 0, 0),)] == 2
        assert masses[((5, 6, 30, 0, 0, 0), (9, 11, 11, 2, 6, 6))] == 6
        assert masses[((2, 15, 30, 0, 0, 0), (5, 12, 18, 12, 0, 0))] == 4

    def test_singleton_mass(self):
        assert mass_direct(genus_of(TernaryForm(2, 5, 10, 0, 0, 0))) == 2

    @pytest.mark.parametrize("s", MASS_SHIFTS)
    def test_formula_matches_direct(self, s):
        sg = build_sgenus(s)
        for tg in sg.tg:
            assert mass_formula(tg, s) == mass_direct(tg)

    @pytest.mark.parametrize("s", MASS_SHIFTS)
    def test_union_mass_equals_shift(self, s):
        assert sgenus_mass(build_sgenus(s)) == s

    @pytest.mark.parametrize("s", MASS_SHIFTS)
    def test_orthogonality(self, s):
        sg = build_sgenus(s)
        for w in divisors(s):
            if w >= 2:
                assert orthogonality_check(sg, w)


class TestWeightedCounts:
    def test_single_class_weight(self):
        tg = genus_of(TernaryForm(1, 6, 6, 0, 0, 0))
        assert weighted_count(tg, 1) == 2

    def test_zero_when_unrepresented(self):
        tg = genus_of(TernaryForm(2, 3, 6, 0, 0, 0))
        assert weighted_count(tg, 1) == 0

    def test_s15_first_weight(self):
        sg = build_sgenus(15)
        values = [weighted_count(tg, 1) for tg in sg.tg]
        assert sorted(values) == [0, 0, 0, 2]

    def test_weighted_coefficients_match_pointwise(self):
        tg = genus_of(TernaryForm(1, 14, 14, 0, 0, 0))
        rows = weighted_coefficients(tg, 60)
        for m in range(60):
            assert rows[m] == weighted_count(tg, m)

    @pytest.mark.parametrize("s", [3, 5, 7, 15])
    def test_equal_weights_at_exact_shift_gcd(self, s):
        # gcd(S^2, M) = S and M = 1,2 mod 4: every cell carries the same weight
        sg = build_sgenus(s)
        rows = [weighted_coefficients(tg, 500) for tg in sg.tg]
        hit = 0
        for m in range(1, 500):
            if m % 4 in (1, 2) and gcd(s * s, m) == s:
                values = {row[m] for row in rows}
                assert len(values) == 1, f"M={m} gives {values}"
                hit += 1
        assert hit >= 8

    @pytest.mark.parametrize("s", [3, 5, 7, 15])
    def test_single_cell_represents_coprime_values(self, s):
        sg = build_sgenus(s)
        rows = [weighted_coefficients(tg, 500) for tg in sg.tg]
        for m in range(1, 500):
            if m % 4 in (1, 2) and gcd(s, m) == 1:
                nonzero = sum(1 for row in rows if row[m])
                assert nonzero <= 1, f"M={m}"
