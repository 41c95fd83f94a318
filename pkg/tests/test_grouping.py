import random

from hypothesis import given, settings, strategies as st
import pytest

from rcgs.errors import GroupingError
from rcgs.grouping import (
    GroupingTable,
    SuperLetter,
    form_super_letters,
    group_redundancy,
    grouped_code_length,
)
from rcgs.model import FrequencyTable, entropy_bits_per_symbol


def table_of(counts_by_symbol: dict[int, int]) -> FrequencyTable:
    counts = [0] * 256
    for sym, c in counts_by_symbol.items():
        counts[sym] = c
    return FrequencyTable.from_counts(counts)


def naive_grouping(table: FrequencyTable, threshold: float) -> list[list[int]]:
    """Direct transcription of the greedy loop using group_redundancy per candidate."""
    remaining = sorted(table.present(), key=lambda s: (table.counts[s], s))
    groups = []
    while remaining:
        for m in (256, 128, 64, 32, 16, 8, 4, 2, 1):
            if m > len(remaining):
                continue
            probs = [table.counts[s] / table.total for s in remaining[:m]]
            if group_redundancy(probs, m) <= threshold:
                groups.append(remaining[:m])
                remaining = remaining[m:]
                break
    return groups


def test_redundancy_singleton():
    assert group_redundancy([0.3], 1) == 0.0
    assert group_redundancy([1.0], 1) == 0.0


def test_redundancy_equiprobable():
    assert group_redundancy([0.25, 0.25], 2) == pytest.approx(0.0, abs=1e-15)


def test_redundancy_unequal_pair():
    # 40-digit mpmath evaluation of (L - H_g) / H_g
    assert group_redundancy([0.1, 0.4], 2) == pytest.approx(0.16148868581578452, rel=1e-12)
    assert group_redundancy([0.1, 0.9], 2) == pytest.approx(1.1322161949260044, rel=1e-12)


@pytest.mark.parametrize("probs, m", [([0.1, 0.2, 0.3], 3), ([0.1, 0.0], 2), ([0.2, -0.1], 2), ([0.1], 2)])
def test_redundancy_errors(probs, m):
    with pytest.raises(ValueError):
        group_redundancy(probs, m)


@given(st.integers(0, 8).flatmap(lambda k: st.lists(
    st.floats(1e-6, 1.0), min_size=1 << k, max_size=1 << k)))
def test_redundancy_nonnegative(weights):
    total = sum(weights)
    probs = [w / total for w in weights]
    delta = group_redundancy(probs, len(probs))
    assert delta >= -1e-12
    if max(probs) - min(probs) > 1e-6:
        assert delta > 0 or len(probs) == 1


def test_uniform_alphabet_is_one_super_letter():
    g = form_super_letters(FrequencyTable.from_counts([7] * 256), 0.01)
    assert g.n_super_letters == 1
    assert g.super_letters[0].suffix_bits == 8
    assert list(g.super_letters[0].members) == list(range(256))


def test_single_symbol_alphabet():
    g = form_super_letters(table_of({42: 10}), 0.01)
    assert g.n_super_letters == 1
    assert g.super_letters[0].suffix_bits == 0
    assert g.per_symbol == {42: (0, 0, 0)}


def test_skewed_pair_stays_split():
    g = form_super_letters(table_of({1: 1, 2: 9}), 0.01)
    assert g.n_super_letters == 2
    assert [sl.members for sl in g.super_letters] == [(1,), (2,)]
    assert grouped_code_length(table_of({1: 1, 2: 9}), g) == pytest.approx(0.4689955935892812, rel=1e-12)


def test_grouped_code_length_trivial():
    uniform = FrequencyTable.from_counts([1] * 256)
    assert grouped_code_length(uniform, form_super_letters(uniform)) == pytest.approx(8.0)
    one = table_of({0: 5})
    assert grouped_code_length(one, form_super_letters(one)) == 0.0


def test_grouped_code_length_rejects_mismatch():
    g = form_super_letters(table_of({1: 1, 2: 1}))
    with pytest.raises(ValueError):
        grouped_code_length(table_of({1: 1, 3: 1}), g)


def test_retry_raises_threshold():
    # counts 4**s: neighbours are too unequal to share a super-letter at 1%
    table = table_of({s: 4 ** s for s in range(30)})
    assert len(naive_grouping(table, 0.01)) > 16
    g = form_super_letters(table, 0.01, 0.005, 64)
    assert g.n_super_letters <= 16
    assert g.t_delta_used == pytest.approx(0.025)
    assert len(naive_grouping(table, g.t_delta_used)) == g.n_super_letters
    assert len(naive_grouping(table, g.t_delta_used - 0.005)) > 16


def test_retry_exhaustion_reports_state():
    table = table_of({s: 4 ** s for s in range(30)})
    with pytest.raises(GroupingError) as info:
        form_super_letters(table, 0.01, 0.0001, 3)
    assert info.value.n_super_letters > 16
    assert info.value.threshold == pytest.approx(0.0103)


def test_bad_arguments():
    with pytest.raises(ValueError):
        form_super_letters(FrequencyTable.from_counts([0] * 256))
    with pytest.raises(ValueError):
        form_super_letters(table_of({1: 1}), 0.0)


def test_super_letter_validation():
    with pytest.raises(ValueError):
        SuperLetter(0, 3, tuple(range(7)))
    with pytest.raises(ValueError):
        GroupingTable.from_super_letters([SuperLetter(0, 0, (1,)), SuperLetter(1, 0, (1,))])


def random_table(rng: random.Random) -> FrequencyTable:
    k = rng.choice([1, 2, 3, rng.randrange(1, 257), 256])
    symbols = rng.sample(range(256), k)
    shape = rng.choice(["uniform", "geometric", "zipf", "flat", "spiky"])
    counts = {}
    for rank, s in enumerate(symbols):
        if shape == "uniform":
            c = rng.randrange(1, 10_000)
        elif shape == "geometric":
            c = max(1, int(1e6 * rng.uniform(0.5, 0.95) ** rank))
        elif shape == "zipf":
            c = max(1, int(1e5 / (rank + 1) ** rng.uniform(0.5, 2.0)))
        elif shape == "flat":
            c = 1000 + rng.randrange(-20, 21)
        else:
            c = rng.choice([1, 1, 2, 50_000])
        counts[s] = c
    return table_of(counts)


@settings(max_examples=300, deadline=None)
@given(st.randoms(use_true_random=False))
def test_matches_naive_transcription(rnd):
    table = random_table(rnd)
    g = form_super_letters(table, 0.01)
    expected = naive_grouping(table, g.t_delta_used)
    assert [list(sl.members) for sl in g.super_letters] == expected


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_grouping_invariants(rnd):
    table = random_table(rnd)
    g = form_super_letters(table, 0.01)
    assert g.n_super_letters <= 16
    assert sorted(g.per_symbol) == table.present()
    assert sum(len(sl.members) for sl in g.super_letters) == table.distinct_symbols
    for sl in g.super_letters:
        assert len(sl.members) == 1 << sl.suffix_bits
        for pos, sym in enumerate(sl.members):
            assert g.per_symbol[sym] == (sl.index, pos, sl.suffix_bits)
    h = entropy_bits_per_symbol(table)
    if table.distinct_symbols > 1:
        assert grouped_code_length(table, g) <= (1 + g.t_delta_used) * h + 1e-9
    assert grouped_code_length(table, g) >= h - 1e-9


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_threshold_monotone(rnd):
    table = random_table(rnd)
    sizes = [len(naive_grouping(table, t)) for t in (0.005, 0.01, 0.02, 0.05, 0.1, 0.3)]
    assert sizes == sorted(sizes, reverse=True)


@given(st.randoms(use_true_random=False), st.integers(2, 256), st.integers(1, 1000))
def test_equal_probability_permutation(rnd, k, count):
    base = rnd.sample(range(256), k)
    other = rnd.sample(range(256), k)
    a = form_super_letters(table_of({s: count for s in base}))
    b = form_super_letters(table_of({s: count for s in other}))
    assert sorted(len(sl.members) for sl in a.super_letters) == sorted(len(sl.members) for sl in b.super_letters)
