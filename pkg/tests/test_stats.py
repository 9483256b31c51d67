import itertools
import math
from fractions import Fraction

import pytest

from ffstats.errors import (
    InvalidGroupError,
    NotAdmissibleError,
    PartitionMismatchError,
    ZeroFrequencyError,
)
from ffstats.field import FieldCtx
from ffstats.mpoly import parse
from ffstats.sets import APSpec, FullSpace, GridProduct, TraceZero
from ffstats.stats import (
    ClassDistribution,
    GroupSpec,
    compare,
    cycle_type,
    cyclic_shift_group,
    empirical_distribution,
    format_type,
    gamma_symmetric,
    parse_type,
    partitions,
    prediction_from_group,
    restricted_charsum,
    weil_sweep,
)

# ---------------------------------------------------------------------------
# partitions, cycle types, gamma
# ---------------------------------------------------------------------------


def test_partition_counts():
    assert len(partitions(5)) == 7
    assert len(partitions(7)) == 15
    assert len(partitions(12)) == 77
    assert partitions(3) == [(3,), (2, 1), (1, 1, 1)]


def test_cycle_type_examples():
    assert cycle_type((0, 1, 2)) == (1, 1, 1)
    assert cycle_type((1, 2, 0)) == (3,)
    assert cycle_type((1, 0, 3, 2)) == (2, 2)


def test_format_parse_type():
    assert format_type((2, 1, 1)) == "[2,1,1]"
    assert parse_type("[2,1,1]") == (2, 1, 1)
    assert parse_type("1,2,1") == (2, 1, 1)
    with pytest.raises(ValueError):
        parse_type("0,2")


def test_gamma_small_cases():
    assert gamma_symmetric(2, (1, 1)) == Fraction(1, 2)
    assert gamma_symmetric(2, (2,)) == Fraction(1, 2)
    assert gamma_symmetric(3, (3,)) == Fraction(1, 3)
    assert gamma_symmetric(4, (2, 1, 1)) == Fraction(1, 4)


def test_gamma_partition_mismatch():
    with pytest.raises(PartitionMismatchError):
        gamma_symmetric(4, (2, 1))


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_gamma_matches_enumeration(d):
    tallies = {}
    for perm in itertools.permutations(range(d)):
        t = cycle_type(perm)
        tallies[t] = tallies.get(t, 0) + 1
    for parts in partitions(d):
        assert gamma_symmetric(d, parts) == Fraction(
            tallies.get(parts, 0), math.factorial(d)
        )


@pytest.mark.parametrize("d", list(range(1, 13)))
def test_gamma_sums_to_one(d):
    assert sum(gamma_symmetric(d, parts) for parts in partitions(d)) == 1


# ---------------------------------------------------------------------------
# group specifications and predictions
# ---------------------------------------------------------------------------


def test_prediction_symmetric_equals_gamma():
    pred = prediction_from_group(GroupSpec.symmetric(4))
    for parts in partitions(4):
        assert pred[parts] == gamma_symmetric(4, parts)
    assert sum(pred.values()) == 1


def test_prediction_cyclic_group_of_order_three():
    pred = prediction_from_group(cyclic_shift_group(3))
    assert pred[(1, 1, 1)] == Fraction(1, 3)
    assert pred[(3,)] == Fraction(2, 3)


def test_prediction_sign_labelled_s3():
    elems = []
    for perm in itertools.permutations(range(3)):
        parity = sum(
            1
            for i in range(3)
            for j in range(i + 1, 3)
            if perm[i] > perm[j]
        ) % 2
        elems.append((perm, parity))
    group = GroupSpec.explicit(3, 2, elems)
    pred = prediction_from_group(group)
    # label 1 = the three transpositions, so all mass on (2, 1)
    assert pred[(2, 1)] == 1
    assert sum(pred.values()) == 1


def test_group_validation_rejects_non_closed():
    with pytest.raises(InvalidGroupError):
        GroupSpec.explicit(3, 1, [((0, 1, 2), 0), ((1, 2, 0), 0)])  # no inverse cycle


def test_group_validation_rejects_bad_labels():
    elems = [((0, 1, 2), 0), ((1, 2, 0), 1), ((2, 0, 1), 1)]  # not additive
    with pytest.raises(InvalidGroupError):
        GroupSpec.explicit(3, 2, elems)
    with pytest.raises(InvalidGroupError):
        GroupSpec.explicit(3, 2, [((0, 1, 2), 0)])  # labels miss 1 mod 2


def test_group_validation_requires_identity_label_zero():
    with pytest.raises(InvalidGroupError):
        GroupSpec.explicit(2, 1, [((1, 0), 0)])


def test_group_file_roundtrip(tmp_path):
    group = cyclic_shift_group(3)
    path = tmp_path / "group.txt"
    group.to_file(str(path))
    loaded = GroupSpec.from_file(str(path))
    assert loaded == group
    text = path.read_text()
    assert text.splitlines()[0] == "d=3 nu=1"


def test_group_file_rejects_garbage(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("d=2 nu=1\n2 2 | 0\n")
    with pytest.raises(InvalidGroupError):
        GroupSpec.from_file(str(path))


# ---------------------------------------------------------------------------
# empirical distributions
# ---------------------------------------------------------------------------


def test_distribution_quadratic_full_f13():
    ctx = FieldCtx(13)
    F = parse("t^2 - A1", 1, ctx)
    dist = empirical_distribution(F, FullSpace(1))
    assert dist.counts == {(1, 1): 6, (2,): 6}
    assert dist.non_squarefree == 1 and dist.degree_drop == 0 and dist.total == 13


def test_distribution_quadratic_interval_f17():
    ctx = FieldCtx(17)
    F = parse("t^2 - A1", 1, ctx)
    dist = empirical_distribution(F, GridProduct([APSpec(1, 0, 8)]))
    # squares mod 17 are {1,2,4,8,9,13,15,16}; of 0..7 only 1, 2, 4 qualify
    assert dist.counts[(1, 1)] == 3
    assert dist.total == 8


def test_distribution_artin_schreier_tracezero():
    ctx = FieldCtx(3, 3, seed=0)
    F = parse("t^3 - t - A1", 1, ctx)
    dist = empirical_distribution(F, TraceZero())
    assert dist.counts == {(1, 1, 1): 9}
    assert dist.total == 9 and dist.non_squarefree == 0


def test_distribution_rejects_vanishing_discriminant():
    ctx = FieldCtx(5)
    with pytest.raises(NotAdmissibleError):
        empirical_distribution(parse("(t - A1)^2", 1, ctx), FullSpace(1))


def test_distribution_thread_count_invariance():
    ctx = FieldCtx(53)
    F = parse("t^3 + A1*t + A2", 2, ctx)
    one = empirical_distribution(F, FullSpace(2), threads=1)
    four = empirical_distribution(F, FullSpace(2), threads=4)
    assert one.counts == four.counts
    assert (one.non_squarefree, one.degree_drop, one.total) == (
        four.non_squarefree,
        four.degree_drop,
        four.total,
    )


def test_distribution_variable_relabelling_invariance():
    ctx = FieldCtx(11)
    F = parse("t^2 + A1*t + A2^2", 2, ctx)
    G = parse("t^2 + A2*t + A1^2", 2, ctx)
    s_f = GridProduct([APSpec(1, 0, 4), APSpec(1, 3, 7)])
    s_g = GridProduct([APSpec(1, 3, 7), APSpec(1, 0, 4)])
    df = empirical_distribution(F, s_f)
    dg = empirical_distribution(G, s_g)
    assert df.counts == dg.counts and df.non_squarefree == dg.non_squarefree


def test_distribution_json_keys():
    d = ClassDistribution({(2, 1): 4, (3,): 2}, 1, 0, 7)
    js = d.to_json_dict()
    assert js["counts"] == {"[3]": 2, "[2,1]": 4}
    assert js["total"] == 7


# ---------------------------------------------------------------------------
# comparisons
# ---------------------------------------------------------------------------


def test_compare_quadratic_tv_is_one_over_p():
    ctx = FieldCtx(13)
    F = parse("t^2 - A1", 1, ctx)
    report = compare(F, FullSpace(1), GroupSpec.symmetric(2))
    assert report.tv_distance == pytest.approx(1 / 13, abs=1e-15)
    assert report.irreg == 1.0
    assert report.normalized_error == pytest.approx(math.sqrt(13) / 13, abs=1e-12)
    assert report.p_gt_d


def test_compare_trinomial_f53():
    ctx = FieldCtx(53)
    F = parse("t^3 + A1*t + A2", 2, ctx)
    report = compare(F, FullSpace(2), GroupSpec.symmetric(3))
    assert report.tv_distance <= 0.05
    assert report.q == 53 and report.n == 2


def test_compare_trinomial_tv_scales_like_inverse_sqrt_p():
    ctx = FieldCtx(13)
    F = parse("t^3 + A1*t + A2", 2, ctx)
    report = compare(F, FullSpace(2), GroupSpec.symmetric(3))
    assert report.tv_distance * math.sqrt(13) <= 5


def test_compare_artin_schreier_counterexample():
    ctx = FieldCtx(3, 3, seed=0)
    F = parse("t^3 - t - A1", 1, ctx)
    report = compare(F, TraceZero(), cyclic_shift_group(3))
    assert report.per_type[(1, 1, 1)][0] == 1.0  # all empirical mass
    assert report.per_type[(1, 1, 1)][1] == pytest.approx(1 / 3)
    assert report.irreg == 3.0
    assert not report.p_gt_d
    # the gap stays macroscopic: the small-irregularity set defeats the law
    assert report.tv_distance == pytest.approx(2 / 3, abs=1e-12)
    sym = compare(F, TraceZero(), GroupSpec.symmetric(3))
    assert sym.normalized_error > 1


def test_compare_json_shape():
    ctx = FieldCtx(13)
    F = parse("t^2 - A1", 1, ctx)
    js = compare(F, FullSpace(1), GroupSpec.symmetric(2)).to_json_dict()
    assert set(js["per_type"]) == {"[2]", "[1,1]"}
    cell = js["per_type"]["[2]"]
    assert {"frequency", "prediction", "deviation"} <= set(cell)
    assert js["distribution"]["total"] == 13


# ---------------------------------------------------------------------------
# restricted character sums
# ---------------------------------------------------------------------------


def test_charsum_golden_ratio_magnitude():
    ctx = FieldCtx(5)
    F = parse("t^2 - A1", 1, ctx)
    res = restricted_charsum(F, (2,), (1,))
    assert res.terms == 2  # the two non-residues 2 and 3
    assert res.magnitude == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-9)
    assert res.weil_ratio == pytest.approx(res.magnitude / math.sqrt(5), abs=1e-12)


def test_charsum_zero_frequency_rejected():
    ctx = FieldCtx(5)
    F = parse("t^2 - A1", 1, ctx)
    with pytest.raises(ZeroFrequencyError):
        restricted_charsum(F, (2,), (0,))
    with pytest.raises(ZeroFrequencyError):
        restricted_charsum(F, (2,), (0, 0))


def test_charsum_split_class_gauss_bound():
    ctx = FieldCtx(11)
    F = parse("t^2 - A1", 1, ctx)
    for b in range(1, 11):
        res = restricted_charsum(F, (1, 1), (b,))
        assert res.magnitude <= (math.sqrt(11) + 1) / 2 + 1e-9


def test_weil_sweep_quadratic_f101():
    ctx = FieldCtx(101)
    F = parse("t^2 - A1", 1, ctx)
    sweep = weil_sweep(F, (2,), None)
    assert len(sweep.rows) == 100
    assert sweep.max_ratio <= 1.0
    assert sweep.max_ratio == pytest.approx((math.sqrt(101) + 1) / 2 / math.sqrt(101), abs=1e-9)


def test_weil_sweep_trinomial_bounded():
    ctx = FieldCtx(13)
    F = parse("t^3 + A1*t + A2", 2, ctx)
    sweep = weil_sweep(F, (3,), None)
    assert len(sweep.rows) == 168
    assert sweep.max_ratio <= 3.0


def test_weil_sweep_empty_frequency_list():
    ctx = FieldCtx(7)
    F = parse("t^2 - A1", 1, ctx)
    sweep = weil_sweep(F, (2,), [])
    assert sweep.rows == [] and sweep.max_ratio == 0.0


def test_weil_sweep_thread_invariance():
    ctx = FieldCtx(31)
    F = parse("t^2 - A1", 1, ctx)
    one = weil_sweep(F, (1, 1), None, threads=1)
    three = weil_sweep(F, (1, 1), None, threads=3)
    assert one.rows == three.rows and one.max_ratio == three.max_ratio


def test_charsum_extension_field_path():
    ctx = FieldCtx(3, 2, modulus=[1, 0, 1])
    F = parse("t^2 - A1", 1, ctx)
    res = restricted_charsum(F, (1, 1), (1,))
    # brute recount: quadratic residues a = s^2 with s != 0
    squares = {ctx.mul(s, s) for s in range(1, 9)}
    assert res.terms == len(squares)
    assert res.magnitude <= (math.sqrt(9) + 1) / 2 + 1e-9
