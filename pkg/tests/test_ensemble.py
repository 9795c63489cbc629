import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from infotweet.classifier import PredictionVector
from infotweet.corpus import CorpusSplit, LabeledExample
from infotweet.ensemble import (
    AlignmentError,
    LabelSequence,
    hard_vote,
    labels_from_split,
    load_labels,
    soft_vote,
    write_labels,
)


def vectors_from_matrix(matrix):
    """Rows of `matrix` become one PredictionVector per model."""
    matrix = np.asarray(matrix, dtype=np.float64)
    ids = tuple(f"e{i}" for i in range(matrix.shape[1]))
    return [
        PredictionVector(model_id=f"m{k}", ids=ids, probs=row)
        for k, row in enumerate(matrix)
    ]


class TestHardVote:
    def test_four_three_majority(self):
        vecs = vectors_from_matrix([[p] for p in (0.9, 0.9, 0.9, 0.9, 0.1, 0.1, 0.1)])
        assert hard_vote(vecs).labels.tolist() == [1]

    def test_unanimous_zero(self):
        vecs = vectors_from_matrix([[0.0]] * 7)
        assert hard_vote(vecs).labels.tolist() == [0]

    def test_all_patterns_match_majority_oracle(self):
        for pattern in itertools.product([0, 1], repeat=7):
            probs = [[0.8 if v else 0.2] for v in pattern]
            expected = 1 if sum(pattern) > 3 else 0
            assert hard_vote(vectors_from_matrix(probs)).labels.tolist() == [expected]

    def test_tie_falls_back_to_soft(self):
        # Two models, one vote each way: the mean decides.
        assert hard_vote(vectors_from_matrix([[0.9], [0.3]])).labels.tolist() == [1]
        assert hard_vote(vectors_from_matrix([[0.6], [0.1]])).labels.tolist() == [0]

    def test_tie_with_mean_exactly_threshold_is_one(self):
        assert hard_vote(vectors_from_matrix([[0.6], [0.4]])).labels.tolist() == [1]

    def test_vote_uses_threshold_inclusive(self):
        assert hard_vote(vectors_from_matrix([[0.5]] * 3)).labels.tolist() == [1]


class TestSoftVote:
    def test_mean_below_threshold(self):
        vecs = vectors_from_matrix([[p] for p in (0.6, 0.6, 0.6, 0.1, 0.1, 0.1, 0.9)])
        assert soft_vote(vecs).labels.tolist() == [0]

    def test_single_model_equals_thresholding(self):
        probs = np.array([0.1, 0.5, 0.49, 0.9])
        vecs = vectors_from_matrix([probs])
        assert soft_vote(vecs).labels.tolist() == (probs >= 0.5).astype(int).tolist()

    def test_matches_mean_threshold_oracle(self):
        rng = np.random.default_rng(0)
        matrix = rng.random((7, 200))
        got = soft_vote(vectors_from_matrix(matrix)).labels
        expected = (matrix.mean(axis=0) >= 0.5).astype(int)
        assert np.array_equal(got, expected)

    def test_custom_threshold(self):
        vecs = vectors_from_matrix([[0.4, 0.2]])
        assert soft_vote(vecs, threshold=0.3).labels.tolist() == [1, 0]


class TestAlignment:
    def test_misaligned_ids_rejected(self):
        a = PredictionVector(model_id="a", ids=("1", "2"), probs=np.array([0.1, 0.2]))
        b = PredictionVector(model_id="b", ids=("2", "1"), probs=np.array([0.1, 0.2]))
        with pytest.raises(AlignmentError):
            hard_vote([a, b])
        with pytest.raises(AlignmentError):
            soft_vote([a, b])

    def test_empty_ensemble_rejected(self):
        with pytest.raises(AlignmentError):
            soft_vote([])


PROB_MATRICES = st.integers(min_value=1, max_value=9).flatmap(
    lambda n_models: st.integers(min_value=1, max_value=20).flatmap(
        lambda n_examples: arrays(
            np.float64,
            (n_models, n_examples),
            elements=st.floats(0.0, 1.0, allow_nan=False),
        )
    )
)


class TestVotingProperties:
    @settings(max_examples=150, deadline=None)
    @given(PROB_MATRICES, st.randoms(use_true_random=False))
    def test_permutation_invariance(self, matrix, rnd):
        order = list(range(matrix.shape[0]))
        rnd.shuffle(order)
        for vote in (hard_vote, soft_vote):
            a = vote(vectors_from_matrix(matrix)).labels
            b = vote(vectors_from_matrix(matrix[order])).labels
            assert np.array_equal(a, b)

    @settings(max_examples=150, deadline=None)
    @given(PROB_MATRICES)
    def test_unanimity(self, matrix):
        votes = matrix >= 0.5
        unanimous = (votes.all(axis=0)) | (~votes.any(axis=0))
        expected = votes[0]
        hard = hard_vote(vectors_from_matrix(matrix)).labels
        soft = soft_vote(vectors_from_matrix(matrix)).labels
        for idx in np.flatnonzero(unanimous):
            assert hard[idx] == int(expected[idx])
            assert soft[idx] == int(expected[idx])

    @settings(max_examples=100, deadline=None)
    @given(PROB_MATRICES)
    def test_hard_vote_duplication_invariant_for_odd_ensembles(self, matrix):
        if matrix.shape[0] % 2 == 0:
            matrix = matrix[:-1]
        vecs = vectors_from_matrix(matrix)
        tripled = vectors_from_matrix(np.vstack([matrix, matrix, matrix]))
        assert np.array_equal(hard_vote(vecs).labels, hard_vote(tripled).labels)

    @settings(max_examples=150, deadline=None)
    @given(PROB_MATRICES, st.data())
    def test_soft_monotonic_in_each_probability(self, matrix, data):
        i = data.draw(st.integers(0, matrix.shape[0] - 1))
        j = data.draw(st.integers(0, matrix.shape[1] - 1))
        before = soft_vote(vectors_from_matrix(matrix)).labels[j]
        bumped = matrix.copy()
        bumped[i, j] = data.draw(st.floats(bumped[i, j], 1.0, allow_nan=False))
        after = soft_vote(vectors_from_matrix(bumped)).labels[j]
        assert after >= before

    @settings(max_examples=100, deadline=None)
    @given(
        arrays(np.float64, (1, 15), elements=st.floats(0.0, 1.0, allow_nan=False))
    )
    def test_single_model_hard_equals_soft(self, matrix):
        vecs = vectors_from_matrix(matrix)
        assert np.array_equal(hard_vote(vecs).labels, soft_vote(vecs).labels)


class TestLabelSequenceIO:
    def test_write_and_load_round_trip(self, tmp_path):
        seq = LabelSequence(ids=("a", "b", "c"), labels=np.array([1, 0, 1]))
        path = tmp_path / "labels.tsv"
        write_labels(seq, path)
        loaded = load_labels(path)
        assert loaded.ids == seq.ids
        assert np.array_equal(loaded.labels, seq.labels)
        assert path.read_text().splitlines()[0] == "Id\tLabel"
        assert "INFORMATIVE" in path.read_text()

    def test_labels_from_split(self):
        split = CorpusSplit(
            name="s",
            examples=(
                LabeledExample(id="1", text="x", label=1),
                LabeledExample(id="2", text="y", label=0),
            ),
        )
        seq = labels_from_split(split)
        assert seq.entries == [("1", 1), ("2", 0)]

    def test_labels_from_unlabeled_split_rejected(self):
        split = CorpusSplit(
            name="s", examples=(LabeledExample(id="1", text="x", label=None),)
        )
        with pytest.raises(ValueError):
            labels_from_split(split)

    def test_bad_label_file(self, tmp_path):
        path = tmp_path / "labels.tsv"
        path.write_text("1\tPOSITIVE\n", encoding="utf-8")
        with pytest.raises(ValueError, match="POSITIVE"):
            load_labels(path)
