import itertools

import pytest

from conftest import brute_minimal_left_ideals, independent_assoc_ok

from semsize import (
    AssociativityError,
    DimensionError,
    NotAGroup,
    NotASubsemigroup,
    SizeLimitExceeded,
    UnknownFamily,
    automorphisms,
    build_family,
    build_from_table,
    enumerate_semigroups,
    inverse_set,
    left_quotient,
    mask_of,
    minimal_left_ideals,
    product_set,
    quotient_pairs,
    semigroup_from_spec,
    set_quotient,
    subgroups,
    translate_set,
)
from semsize.masks import elements
from semsize.semigroups import FAMILY_NAMES, associativity_witness


class TestBuildFromTable:
    def test_z2(self):
        S = build_from_table(2, [[0, 1], [1, 0]])
        assert S.is_group and S.identity == 0

    def test_right_zero_has_no_identity(self):
        S = build_from_table(2, [[0, 1], [0, 1]])
        # neither candidate satisfies e*x = x*e = x
        assert S.identity is None and not S.is_group

    def test_or_table_passes_the_triple_scan(self):
        # the full triple check is the oracle for acceptance of this table
        table = [[0, 1], [1, 1]]
        assert independent_assoc_ok(2, table)
        S = build_from_table(2, table)
        assert S.order == 2

    def test_nonassociative_rejected_with_witness(self):
        table = [[0, 0], [1, 0]]
        assert not independent_assoc_ok(2, table)
        with pytest.raises(AssociativityError) as exc:
            build_from_table(2, table)
        a, b, c = exc.value.triple
        lhs = table[table[a][b]][c]
        rhs = table[a][table[b][c]]
        assert lhs != rhs

    def test_dimension_errors(self):
        with pytest.raises(DimensionError):
            build_from_table(2, [[0, 1]])
        with pytest.raises(DimensionError):
            build_from_table(2, [[0, 1], [0, 2]])


class TestFamilies:
    def test_cyclic4(self, z4):
        assert z4.is_group and z4.order == 4 and z4.identity == 0

    def test_right_zero_law(self, rz3):
        assert all(rz3.table[i][j] == j for i in range(3) for j in range(3))
        assert not rz3.is_group

    def test_direct_product_matches_crt(self):
        prod = semigroup_from_spec("product:cyclic:2,cyclic:3")
        z6 = semigroup_from_spec("cyclic:6")
        # k -> (k mod 2, k mod 3), packed as (k%2)*3 + (k%3)
        phi = [(k % 2) * 3 + (k % 3) for k in range(6)]
        assert prod.is_group and prod.order == 6
        for i in range(6):
            for j in range(6):
                assert prod.table[phi[i]][phi[j]] == phi[z6.table[i][j]]

    def test_quaternion8_signature(self):
        q8 = build_family("quaternion8")
        assert q8.is_group and q8.order == 8
        e = q8.identity
        involutions = [x for x in range(8) if x != e and q8.table[x][x] == e]
        assert len(involutions) == 1  # only -1 squares to the identity

    def test_dihedral_and_symmetric(self):
        d4 = build_family("dihedral", 4)
        s3 = build_family("symmetric", 3)
        assert d4.order == 8 and d4.is_group
        assert s3.order == 6 and s3.is_group
        assert any(
            s3.table[a][b] != s3.table[b][a] for a in range(6) for b in range(6)
        )

    def test_full_transformation_monoid(self):
        t2 = build_family("full_transformation", 2)
        assert t2.order == 4 and t2.identity is not None and not t2.is_group

    def test_every_family_is_associative(self):
        specs = [
            "cyclic:5",
            "dihedral:3",
            "symmetric:4",
            "quaternion8",
            "rightzero:4",
            "leftzero:4",
            "null:5",
            "fulltransformation:3",
            "product:cyclic:2,rightzero:2",
        ]
        for spec in specs:
            S = semigroup_from_spec(spec)
            assert associativity_witness(S.order, S.table) is None, spec

    def test_unknown_and_oversize(self):
        with pytest.raises(UnknownFamily):
            build_family("bogus", 4)
        with pytest.raises(UnknownFamily):
            semigroup_from_spec("cyclic")  # missing parameter
        with pytest.raises(SizeLimitExceeded):
            build_family("symmetric", 5)
        with pytest.raises(SizeLimitExceeded):
            build_family("full_transformation", 4)
        assert "cyclic" in FAMILY_NAMES


class TestSetArithmetic:
    def test_left_quotient_examples(self, z4, rz3):
        assert left_quotient(z4, 1, mask_of([0, 2])) == mask_of([1, 3])
        for spec in ("cyclic:5", "fulltransformation:2"):  # group and monoid
            M = semigroup_from_spec(spec)
            for B in range(M.full_mask + 1):
                assert left_quotient(M, M.identity, B) == B
        rz2 = semigroup_from_spec("rightzero:2")
        assert left_quotient(rz2, 0, mask_of([1])) == mask_of([1])

    def test_left_quotient_round_trip(self, z6, rz3, null3):
        # definitional: x in a^-1 B  iff  a*x in B
        for S in (z6, rz3, null3):
            for a in range(S.order):
                for B in (0, 1, mask_of([0, 2]), S.full_mask):
                    q = left_quotient(S, a, B)
                    for x in range(S.order):
                        assert bool((q >> x) & 1) == bool(
                            (B >> S.table[a][x]) & 1
                        )

    def test_set_quotient_examples(self, z4):
        assert set_quotient(z4, 0, mask_of([1, 2])) == 0
        assert set_quotient(z4, mask_of([1, 2]), mask_of([0])) == mask_of([2, 3])
        for a in range(4):
            for B in range(16):
                assert set_quotient(z4, 1 << a, B) == left_quotient(z4, a, B)

    def test_set_quotient_monotone(self, z6):
        A, A2 = mask_of([1]), mask_of([1, 2])
        B, B2 = mask_of([0, 3]), mask_of([0, 3, 4])
        small = set_quotient(z6, A, B)
        big = set_quotient(z6, A2, B2)
        assert small | big == big

    def test_quotient_pairs_examples(self, z4):
        assert quotient_pairs(z4, mask_of([0, 1])) == mask_of([0, 1, 3])
        z3 = semigroup_from_spec("cyclic:3")
        assert quotient_pairs(z3, mask_of([1, 2])) == z3.full_mask
        assert quotient_pairs(z4, mask_of([z4.identity])) == mask_of([0])

    def test_quotient_pairs_needs_group(self, rz3):
        with pytest.raises(NotAGroup):
            quotient_pairs(rz3, mask_of([0]))
        with pytest.raises(NotAGroup):
            inverse_set(rz3, mask_of([0]))

    def test_group_quotient_is_inverse_translate(self, z6):
        for g in range(6):
            ginv = z6.inverses[g]
            for B in range(0, 64, 5):
                assert left_quotient(z6, g, B) == translate_set(z6, ginv, B)

    def test_product_set(self, z4):
        assert product_set(z4, mask_of([1, 2]), mask_of([0, 1])) == mask_of(
            [1, 2, 3]
        )
        assert product_set(z4, 0, z4.full_mask) == 0


class TestMinimalLeftIdeals:
    def test_group_has_only_itself(self, z6):
        assert minimal_left_ideals(z6) == [z6.full_mask]

    def test_right_zero_singletons(self, rz3):
        assert minimal_left_ideals(rz3) == [1, 2, 4]

    def test_null_has_unique_zero_ideal(self, null3):
        assert minimal_left_ideals(null3) == [mask_of([0])]

    def test_within_subgroup(self, z6):
        sub = mask_of([0, 2, 4])
        assert minimal_left_ideals(z6, within=sub) == [sub]

    def test_not_a_subsemigroup(self, z4):
        with pytest.raises(NotASubsemigroup):
            minimal_left_ideals(z4, within=mask_of([1]))

    def test_agrees_with_brute_force_on_small_families(self):
        specs = [
            "cyclic:2", "cyclic:3", "cyclic:4",
            "rightzero:2", "rightzero:3", "rightzero:4",
            "leftzero:2", "leftzero:3", "leftzero:4",
            "null:2", "null:3", "null:4",
            "symmetric:2", "dihedral:2", "fulltransformation:2",
            "product:cyclic:2,cyclic:2",
        ]
        for spec in specs:
            S = semigroup_from_spec(spec)
            got = [frozenset(elements(m)) for m in minimal_left_ideals(S)]
            expected = [frozenset(L) for L in brute_minimal_left_ideals(S)]
            assert sorted(got, key=sorted) == expected, spec

    def test_pairwise_disjoint(self):
        for spec in ("rightzero:4", "fulltransformation:2", "null:4"):
            S = semigroup_from_spec(spec)
            ideals = minimal_left_ideals(S)
            for i, L in enumerate(ideals):
                for M in ideals[i + 1 :]:
                    assert L & M == 0


class TestAutomorphisms:
    def test_counts(self, z4, rz3):
        assert len(automorphisms(z4)) == 2
        assert len(automorphisms(rz3)) == 6
        assert len(automorphisms(semigroup_from_spec("cyclic:2"))) == 1

    def test_s3_has_six(self):
        assert len(automorphisms(semigroup_from_spec("symmetric:3"))) == 6

    def test_preserve_table_and_compose(self, z6):
        autos = automorphisms(z6)
        assert tuple(range(6)) in autos
        for p in autos:
            for a in range(6):
                for b in range(6):
                    assert p[z6.table[a][b]] == z6.table[p[a]][p[b]]
        for p in autos:
            for q in autos:
                assert tuple(p[q[i]] for i in range(6)) in autos

    def test_limit(self):
        with pytest.raises(SizeLimitExceeded):
            automorphisms(semigroup_from_spec("fulltransformation:3"))


class TestEnumeration:
    def test_counts_match_independent_filter(self):
        # the exhaustive filter is the oracle; counts frozen from its output
        assert sum(1 for _ in enumerate_semigroups(1)) == 1
        assert sum(1 for _ in enumerate_semigroups(2)) == 8
        order3 = list(enumerate_semigroups(3))
        assert len(order3) == 113
        recount = 0
        for flat in itertools.product(range(3), repeat=9):
            table = [list(flat[i * 3 : (i + 1) * 3]) for i in range(3)]
            if independent_assoc_ok(3, table):
                recount += 1
        assert recount == 113

    def test_all_emitted_tables_are_associative(self):
        for S in enumerate_semigroups(2):
            assert independent_assoc_ok(2, S.table)

    def test_limit(self):
        with pytest.raises(SizeLimitExceeded):
            next(enumerate_semigroups(4))


def test_subgroups_of_z6(z6):
    got = subgroups(z6)
    assert mask_of([0]) in got
    assert mask_of([0, 3]) in got
    assert mask_of([0, 2, 4]) in got
    assert z6.full_mask in got
    assert len(got) == 4
