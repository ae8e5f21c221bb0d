import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropic.communities import NecPartition
from tropic.errors import AlreadyAnnotated, NotAVoter, ScoreOutOfRange
from tropic.ingestion import parse_edge_list
from tropic.scoring import (
    PublisherStats,
    ScoringConfig,
    assign_label,
    compute_publisher_stats,
    nec_url_labels,
    predict_publisher,
    profile_voter,
    score_all,
    select_voters,
)


def edge_list_from(pairs):
    """pairs: (url, user) tuples, repeated for multiplicity."""
    return parse_edge_list("\n".join(f"{u},{v}" for u, v in pairs) + "\n")


def nec_over(edge_list, urls):
    indices = tuple(sorted(edge_list.urls.index(u) for u in urls))
    return NecPartition(necs=(indices,), n_urls=len(edge_list.urls))


@pytest.fixture()
def small_world():
    # three publishers; p1/p2 urls form the NEC, p3 stays outside it
    pairs = [
        ("https://p1.com/a", "v1"),
        ("https://p1.com/a", "v1"),
        ("https://p2.com/a", "v1"),
        ("https://p2.com/a", "v2"),
        ("https://p3.com/a", "v2"),
        ("https://p3.com/a", "v3"),
    ]
    el = edge_list_from(pairs)
    necs = nec_over(el, ["https://p1.com/a", "https://p2.com/a"])
    return el, necs


class TestSelectVoters:
    def test_only_nec_sharers_are_voters(self, small_world):
        el, necs = small_world
        assert select_voters(el, necs) == {"v1", "v2"}

    def test_no_necs_no_voters(self, small_world):
        el, _ = small_world
        empty = NecPartition(necs=(), n_urls=len(el.urls))
        assert select_voters(el, empty) == set()

    def test_all_urls_in_necs_selects_everyone(self, small_world):
        el, _ = small_world
        full = NecPartition(
            necs=(tuple(range(len(el.urls))),), n_urls=len(el.urls)
        )
        assert select_voters(el, full) == {"v1", "v2", "v3"}

    def test_mismatched_partition_rejected(self, small_world):
        el, _ = small_world
        with pytest.raises(ValueError):
            nec_url_labels(el, NecPartition(necs=(), n_urls=99))


class TestProfileVoter:
    def test_equal_weights_average_like_the_ui_example(self):
        pairs = [
            ("https://p95.com/a", "v"),
            ("https://p90.com/a", "v"),
            ("https://p85.com/a", "v"),
        ]
        el = edge_list_from(pairs)
        necs = nec_over(el, [u for u, _ in pairs])
        bk = {"p95.com": 95, "p90.com": 90, "p85.com": 85}
        profile = profile_voter("v", el, necs, bk)
        assert profile.score == pytest.approx(90.0)
        assert profile.support == 3

    def test_share_multiplicity_weights(self):
        pairs = [
            ("https://hi.com/a", "v"),
            ("https://hi.com/a", "v"),
            ("https://lo.com/a", "v"),
        ]
        el = edge_list_from(pairs)
        necs = nec_over(el, ["https://hi.com/a", "https://lo.com/a"])
        profile = profile_voter("v", el, necs, {"hi.com": 100, "lo.com": 40})
        assert profile.score == pytest.approx(80.0)

    def test_only_nec_shares_count(self, small_world):
        el, necs = small_world
        # v1 shares p1 twice and p2 once inside the NEC; p3 is annotated but
        # outside, so it must not contribute
        profile = profile_voter("v1", el, necs, {"p1.com": 90, "p3.com": 0})
        assert profile.score == pytest.approx(90.0)
        assert profile.support == 2

    def test_unprofilable_returns_none(self, small_world):
        el, necs = small_world
        assert profile_voter("v2", el, necs, {"p3.com": 50}) is None

    def test_non_voter_rejected(self, small_world):
        el, necs = small_world
        with pytest.raises(NotAVoter):
            profile_voter("v3", el, necs, {})

    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(
            st.tuples(st.integers(0, 100), st.integers(1, 5)),
            min_size=1,
            max_size=8,
        )
    )
    def test_profile_bounded_by_contributing_scores(self, scored_shares):
        pairs = []
        bk = {}
        for i, (score, mult) in enumerate(scored_shares):
            url = f"https://pub{i}.net/a"
            bk[f"pub{i}.net"] = score
            pairs.extend([(url, "v")] * mult)
        el = edge_list_from(pairs)
        necs = nec_over(el, {u for u, _ in pairs})
        profile = profile_voter("v", el, necs, bk)
        scores = [s for s, _ in scored_shares]
        assert min(scores) <= profile.score <= max(scores)
        assert profile.support == sum(m for _, m in scored_shares)


class TestPredictPublisher:
    def test_mean_of_contributing_profiles(self, small_world):
        el, necs = small_world
        profiles = {
            v: p
            for v in ("v1", "v2")
            if (p := profile_voter(v, el, necs, {"p1.com": 80, "p2.com": 60}))
        }
        score, confidence, n = predict_publisher(
            "p3.com", el, profiles, ScoringConfig()
        )
        # v2 and v3 share p3; only v2 has a profile: (80+60+60)/3 no - v2's
        # profile is its own share-weighted mean over p2 only
        assert n == 1
        assert score == pytest.approx(profiles["v2"].score)
        assert confidence == pytest.approx((1 / 6) * 1.0)

    def test_unclassified_when_no_contributing_voter(self):
        el = edge_list_from([("https://a.com/1", "u1"), ("https://b.com/1", "u2")])
        necs = nec_over(el, ["https://a.com/1"])
        assert predict_publisher("b.com", el, {}, ScoringConfig()) is None

    def test_already_annotated_guard(self, small_world):
        el, necs = small_world
        with pytest.raises(AlreadyAnnotated):
            predict_publisher(
                "p1.com", el, {}, ScoringConfig(), base_knowledge={"p1.com": 5}
            )

    def test_consensus_profiles_give_full_agreement_term(self):
        el = edge_list_from(
            [
                ("https://x.com/1", "a"),
                ("https://x.com/1", "b"),
                ("https://k.com/1", "a"),
                ("https://k.com/1", "b"),
            ]
        )
        necs = nec_over(el, ["https://k.com/1"])
        profiles = {
            v: profile_voter(v, el, necs, {"k.com": 70}) for v in ("a", "b")
        }
        score, confidence, n = predict_publisher(
            "x.com", el, profiles, ScoringConfig()
        )
        assert score == pytest.approx(70.0)
        assert n == 2
        assert confidence == pytest.approx(2 / 7)

    def test_confidence_monotone_in_voter_count(self):
        cfg = ScoringConfig()
        from tropic.scoring import _confidence

        values = [_confidence(n, 0.0, cfg) for n in range(1, 30)]
        assert values == sorted(values)
        assert all(0 <= v <= 1 for v in values)

    def test_confidence_clamped_at_high_dispersion(self):
        from tropic.scoring import _confidence

        assert _confidence(10, 75.0, ScoringConfig()) == 0.0


class TestAssignLabel:
    def test_threshold_inclusive(self):
        cfg = ScoringConfig()
        assert assign_label(60.0, cfg) == "T"
        assert assign_label(59.9, cfg) == "N"
        assert assign_label(100.0, cfg) == "T"
        assert assign_label(0.0, cfg) == "N"

    def test_out_of_range_rejected(self):
        with pytest.raises(ScoreOutOfRange):
            assign_label(100.5, ScoringConfig())
        with pytest.raises(ScoreOutOfRange):
            assign_label(-0.1, ScoringConfig())

    def test_config_validation(self):
        with pytest.raises(ValueError):
            ScoringConfig(label_threshold=0)
        with pytest.raises(ValueError):
            ScoringConfig(confidence_halfpoint=0)
        with pytest.raises(ValueError):
            ScoringConfig(dispersion_scale=0)


class TestStats:
    def test_counting_example(self):
        # publisher with 3 distinct URLs, 1 inside the NEC, 4 sharers,
        # 7 total shares
        pairs = [
            ("https://pub.com/a", "u1"),
            ("https://pub.com/a", "u1"),
            ("https://pub.com/a", "u2"),
            ("https://pub.com/b", "u3"),
            ("https://pub.com/b", "u4"),
            ("https://pub.com/c", "u1"),
            ("https://pub.com/c", "u4"),
        ]
        el = edge_list_from(pairs)
        necs = nec_over(el, ["https://pub.com/a"])
        stats = compute_publisher_stats(el, necs)["pub.com"]
        assert stats == PublisherStats(
            n_voters=2, n_nec_urls=1, n_urls=3, n_shares=7
        )

    def test_no_nec_urls(self, small_world):
        el, necs = small_world
        assert compute_publisher_stats(el, necs)["p3.com"].n_nec_urls == 0

    def test_independent_of_annotations(self, small_world):
        el, necs = small_world
        assert compute_publisher_stats(el, necs) == compute_publisher_stats(
            el, necs
        )


class TestScoreAll:
    def test_annotated_passthrough(self, small_world):
        el, necs = small_world
        result = score_all(el, necs, {"p1.com": 75})
        record = {r.publisher: r for r in result.records}["p1.com"]
        assert record.state == "A"
        assert record.score == 75.0
        assert record.confidence == 1.0
        assert record.label == "T"

    def test_empty_base_knowledge_leaves_everything_unclassified(
        self, small_world
    ):
        el, necs = small_world
        result = score_all(el, necs, {})
        assert all(r.state == "U" for r in result.records)
        assert all(r.score is None and r.label is None for r in result.records)
        assert all(r.confidence == 0.0 for r in result.records)

    def test_records_sorted_by_publisher(self, small_world):
        el, necs = small_world
        result = score_all(el, necs, {})
        names = [r.publisher for r in result.records]
        assert names == sorted(names)
        assert names == el.publishers

    def test_prediction_bounded_by_profiles(self, small_world):
        el, necs = small_world
        result = score_all(el, necs, {"p1.com": 80, "p2.com": 40})
        predicted = [r for r in result.records if r.state == "P"]
        lo = min(p.score for p in result.profiles.values())
        hi = max(p.score for p in result.profiles.values())
        for r in predicted:
            assert lo <= r.score <= hi

    def test_renaming_publishers_keeps_numbers(self, small_world):
        el, necs = small_world
        base = score_all(el, necs, {"p1.com": 80})
        renamed_pairs = []
        for (user, url), count in sorted(el.counts.items()):
            renamed_pairs.extend(
                [(url.replace("p1.", "zz1.").replace("p2.", "aa2."), user)]
                * count
            )
        el2 = edge_list_from(renamed_pairs)
        necs2 = nec_over(
            el2, ["https://zz1.com/a", "https://aa2.com/a"]
        )
        other = score_all(el2, necs2, {"zz1.com": 80})
        by_name = {r.publisher: r for r in other.records}
        for record in base.records:
            twin = by_name[
                record.publisher.replace("p1.", "zz1.").replace("p2.", "aa2.")
            ]
            assert twin.state == record.state
            assert twin.confidence == pytest.approx(record.confidence)
            if record.score is None:
                assert twin.score is None
            else:
                assert twin.score == pytest.approx(record.score)
