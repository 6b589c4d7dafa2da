import random

import pytest

from quiverkit import (
    CMatrix,
    InternalInvariantError,
    Permutation,
    Quiver,
    QuiverError,
    canonical_form,
    canonical_framed_key,
    frame,
    frozen_isomorphism,
    quiver_from_arrows,
)


def a2():
    return Quiver.from_arrows(2, [(1, 2, 1)])


def three_cycle():
    return Quiver.from_arrows(3, [(2, 1, 1), (1, 3, 1), (3, 2, 1)])


def random_quiver(rng, n, max_mult=3):
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = rng.randint(-max_mult, max_mult)
            b[i][j] = x
            b[j][i] = -x
    return Quiver(n, 0, tuple(tuple(r) for r in b))


class TestConstruction:
    def test_single_arrow(self):
        q = quiver_from_arrows(2, [(1, 2, 1)])
        assert q.b == ((0, 1), (-1, 0))

    def test_three_cycle_matrix(self):
        q = three_cycle()
        assert q.arrows() == [(1, 3, 1), (2, 1, 1), (3, 2, 1)]

    def test_markov_type_double_arrows(self):
        q = Quiver.from_arrows(3, [(1, 2, 2), (2, 3, 2), (3, 1, 2)])
        assert q.b[0][1] == 2
        assert q.b[1][0] == -2

    def test_loop_rejected(self):
        with pytest.raises(QuiverError, match="loop"):
            Quiver.from_arrows(2, [(1, 1, 1)])

    def test_out_of_range_rejected(self):
        with pytest.raises(QuiverError, match="out of range"):
            Quiver.from_arrows(2, [(1, 3, 1)])

    def test_bad_multiplicity_rejected(self):
        with pytest.raises(QuiverError, match="multiplicity"):
            Quiver.from_arrows(2, [(1, 2, 0)])

    def test_from_matrix_checks_skew_symmetry(self):
        with pytest.raises(QuiverError, match="skew"):
            Quiver.from_matrix([[0, 1], [1, 0]])
        with pytest.raises(QuiverError, match="diagonal"):
            Quiver.from_matrix([[1, 1], [-1, 0]])


class TestMutation:
    def test_three_cycle_mutation_link(self):
        assert three_cycle().mutate(1).arrows() == [(1, 2, 1), (3, 1, 1)]

    def test_involution_explicit(self):
        q = three_cycle()
        assert q.mutate(1).mutate(1) == q

    def test_sink_mutation_reverses_arrows(self):
        assert a2().mutate(2).arrows() == [(2, 1, 1)]

    def test_involution_random(self):
        rng = random.Random(7)
        for _ in range(200):
            q = random_quiver(rng, rng.randint(1, 6))
            k = rng.randint(1, q.n)
            assert q.mutate(k).mutate(k) == q

    def test_skew_symmetry_preserved(self):
        rng = random.Random(11)
        for _ in range(200):
            q = random_quiver(rng, rng.randint(2, 6))
            for _ in range(rng.randint(1, 8)):
                q = q.mutate(rng.randint(1, q.n))
            t = q.total
            assert all(q.b[i][j] == -q.b[j][i] for i in range(t) for j in range(t))

    def test_frozen_vertex_rejected(self):
        s = frame(a2())
        with pytest.raises(QuiverError, match="frozen"):
            s.quiver.mutate(3)


class TestFraming:
    def test_frame_adds_one_frozen_per_vertex(self):
        s = frame(a2())
        assert s.quiver.n == 2 and s.quiver.f == 2
        assert s.quiver.arrows() == [(1, 2, 1), (1, 3, 1), (2, 4, 1)]
        assert s.history == ()

    def test_frame_single_vertex(self):
        s = frame(Quiver.from_arrows(1, []))
        assert s.quiver.arrows() == [(1, 2, 1)]

    def test_fresh_framing_has_identity_c_matrix(self):
        rng = random.Random(3)
        for _ in range(20):
            q = random_quiver(rng, rng.randint(1, 5))
            assert frame(q).c_matrix().is_identity()

    def test_double_framing_rejected(self):
        with pytest.raises(QuiverError, match="framed"):
            frame(frame(a2()).quiver)

    def test_apply_sequence_examples(self):
        s1 = frame(a2()).apply([1])
        assert s1.quiver.arrows() == [(2, 1, 1), (2, 4, 1), (3, 1, 1)]
        s21 = frame(a2()).apply([2, 1])
        assert s21.quiver.arrows() == [(1, 2, 1), (2, 3, 1), (3, 1, 1), (4, 1, 1)]
        s = frame(a2())
        assert s.apply([]) == s

    def test_replayable(self):
        rng = random.Random(5)
        q = random_quiver(rng, 4)
        s = frame(q).apply([1, 3, 2, 1])
        assert frame(s.origin).apply(s.history) == s

    def test_undo(self):
        s = frame(a2()).apply([1, 2])
        assert s.undo() == frame(a2()).apply([1])
        with pytest.raises(QuiverError, match="empty"):
            frame(a2()).undo()


class TestCMatrixAndStatus:
    def test_figure_walk_c_matrices(self):
        s = frame(a2())
        assert s.apply([1]).c_matrix().entries == ((-1, 0), (0, 1))
        assert s.apply([2]).c_matrix().entries == ((1, 1), (0, -1))
        assert s.apply([1, 2]).c_matrix().is_negative_identity()

    def test_statuses_along_figure_walk(self):
        s = frame(a2())
        assert s.greens() == [1, 2]
        s1 = s.apply([1])
        assert (s1.status(1), s1.status(2)) == ("red", "green")
        s12 = s.apply([1, 2])
        assert s12.reds() == [1, 2] and s12.all_red()

    def test_status_range_check(self):
        with pytest.raises(QuiverError, match="out of range"):
            frame(a2()).status(3)

    def test_statuses_partition_vertices(self):
        rng = random.Random(13)
        for _ in range(100):
            q = random_quiver(rng, rng.randint(2, 5))
            s = frame(q).apply([rng.randint(1, q.n) for _ in range(rng.randint(0, 8))])
            for i in range(1, q.n + 1):
                assert s.status(i) in ("green", "red")
            assert sorted(s.greens() + s.reds()) == list(range(1, q.n + 1))

    def test_green_iff_nonnegative_c_vector(self):
        rng = random.Random(17)
        for _ in range(100):
            q = random_quiver(rng, 4)
            s = frame(q).apply([rng.randint(1, 4) for _ in range(6)])
            for i in range(1, 5):
                row = s.c_vector(i)
                assert (s.status(i) == "green") == all(x >= 0 for x in row)

    def test_sign_coherence_small_suite(self):
        rng = random.Random(19)
        for _ in range(500):
            q = random_quiver(rng, rng.randint(2, 6))
            s = frame(q)
            for _ in range(rng.randint(1, 12)):
                s = s.mutate(rng.randint(1, q.n))
                s.c_matrix()  # raises InternalInvariantError on violation

    def test_mixed_sign_row_is_internal_error(self):
        with pytest.raises(InternalInvariantError, match="sign coherence"):
            CMatrix(((1, -1), (0, 1)))


class TestFrozenIsomorphism:
    def test_identity_on_identical_states(self):
        s = frame(a2()).apply([1])
        sigma = frozen_isomorphism(s, s)
        assert sigma is not None and sigma.is_identity()

    def test_figure_final_states_swap(self):
        s12 = frame(a2()).apply([1, 2])
        s212 = frame(a2()).apply([2, 1, 2])
        sigma = frozen_isomorphism(s12, s212)
        assert sigma is not None and sigma.images == (2, 1)

    def test_none_between_different_stages(self):
        assert frozen_isomorphism(frame(a2()).apply([1]), frame(a2()).apply([2])) is None

    def test_mismatched_sizes_rejected(self):
        with pytest.raises(QuiverError, match="differ"):
            frozen_isomorphism(frame(a2()), frame(three_cycle()))

    def test_symmetry(self):
        s12 = frame(a2()).apply([1, 2])
        s212 = frame(a2()).apply([2, 1, 2])
        ab = frozen_isomorphism(s12, s212)
        ba = frozen_isomorphism(s212, s12)
        assert ba is not None and ba.images == ab.inverse().images

    def test_agrees_with_brute_force(self):
        from itertools import permutations

        rng = random.Random(23)
        for _ in range(40):
            q = random_quiver(rng, rng.randint(2, 6), max_mult=2)
            sa = frame(q).apply([rng.randint(1, q.n) for _ in range(rng.randint(0, 5))])
            sb = frame(q).apply([rng.randint(1, q.n) for _ in range(rng.randint(0, 5))])
            n = q.n
            ba, bb = sa.quiver.b, sb.quiver.b
            brute = None
            for perm in permutations(range(n)):
                ok = all(
                    ba[perm[i]][perm[j]] == bb[i][j] for i in range(n) for j in range(n)
                ) and all(ba[perm[i]][n + j] == bb[i][n + j] for i in range(n) for j in range(n))
                if ok:
                    brute = perm
                    break
            found = frozen_isomorphism(sa, sb)
            assert (found is None) == (brute is None)
            if found is not None:
                # verify the returned permutation really is an isomorphism
                im = [found(i + 1) - 1 for i in range(n)]
                assert all(
                    ba[im[i]][im[j]] == bb[i][j] for i in range(n) for j in range(n)
                )
                assert all(
                    ba[im[i]][n + j] == bb[i][n + j] for i in range(n) for j in range(n)
                )


class TestCanonicalForm:
    def test_orientation_relabeling(self):
        assert canonical_form(Quiver.from_arrows(2, [(1, 2, 1)])) == canonical_form(
            Quiver.from_arrows(2, [(2, 1, 1)])
        )

    def test_mutation_linked_quivers_differ(self):
        other = Quiver.from_arrows(3, [(1, 2, 1), (3, 1, 1)])
        assert canonical_form(three_cycle()) != canonical_form(other)

    def test_ten_vertex_family_pairwise_distinct(self):
        from quiverkit import fixture

        keys = {
            canonical_form(fixture(name).quiver)
            for name in ("bfz-a4-triangular", "bfz-a4-mutant-1", "bfz-a4-mutant-2")
        }
        assert len(keys) == 3

    def test_relabeling_invariance_random(self):
        rng = random.Random(29)
        for _ in range(100):
            q = random_quiver(rng, rng.randint(2, 6))
            images = list(range(1, q.n + 1))
            rng.shuffle(images)
            assert canonical_form(q) == canonical_form(q.relabel(images))

    def test_framed_key_separates_stages(self):
        s1 = frame(a2()).apply([1])
        s2 = frame(a2()).apply([2])
        assert canonical_framed_key(s1) != canonical_framed_key(s2)
        s12 = frame(a2()).apply([1, 2])
        s212 = frame(a2()).apply([2, 1, 2])
        assert canonical_framed_key(s12) == canonical_framed_key(s212)

    def test_framed_rejects_unframed(self):
        with pytest.raises(QuiverError):
            canonical_form(frame(a2()).quiver)


class TestPermutation:
    def test_compose_inverse_order(self):
        p = Permutation((2, 3, 1))
        assert p.inverse().compose(p).is_identity()
        assert p.order() == 3
        assert p.power(-1).images == p.inverse().images

    def test_invalid(self):
        with pytest.raises(QuiverError):
            Permutation((1, 1, 3))


class TestSerialization:
    def test_arrows_round_trip(self):
        q = three_cycle()
        assert Quiver.from_json(q.to_json()) == q

    def test_matrix_form_accepted(self):
        q = Quiver.from_dict({"matrix": [[0, 2], [-2, 0]]})
        assert q.arrows() == [(1, 2, 2)]

    def test_writer_emits_sorted_arrows(self):
        q = Quiver.from_arrows(3, [(3, 2, 1), (1, 3, 1), (2, 1, 1)])
        assert q.to_dict()["arrows"] == [[1, 3, 1], [2, 1, 1], [3, 2, 1]]

    def test_bad_json_rejected(self):
        with pytest.raises(QuiverError, match="invalid quiver JSON"):
            Quiver.from_json("{nope")
        with pytest.raises(QuiverError, match="arrows"):
            Quiver.from_dict({"n": 2})
