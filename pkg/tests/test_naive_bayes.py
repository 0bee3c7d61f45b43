import math

import pytest

from diabml.classifiers.naive_bayes import (
    NbParams,
    nb_from_dict,
    nb_to_dict,
    posterior,
    predict_nb,
    train_nb,
)
from diabml.data import Dataset

from conftest import nominal_schema, random_dataset

FOUR = Dataset(nominal_schema([2]), [(0, 0), (0, 0), (0, 0), (1, 1)])


def test_four_record_example():
    m = train_nb(FOUR)
    assert math.exp(m.class_log_priors[0]) == pytest.approx(4 / 6)
    assert math.exp(m.conditional_log_probs[0][0][0]) == pytest.approx(4 / 5)
    assert math.exp(m.conditional_log_probs[0][0][1]) == pytest.approx(1 / 3)
    p = posterior(m, (0, None))
    assert p[0] == pytest.approx((4 / 6 * 4 / 5) / (4 / 6 * 4 / 5 + 2 / 6 * 1 / 3))
    assert p[0] == pytest.approx(0.8276, abs=1e-4)
    assert predict_nb(m, (0, None)) == 0


def test_unseen_value_gets_nonzero_probability():
    m = train_nb(FOUR)
    assert m.conditional_log_probs[0][1][0] > -math.inf
    assert all(0 < p < 1 for p in posterior(m, (1, None)))


def test_duplicating_data_equals_scaling_alpha_down():
    # k copies with alpha*k smoothing gives the same model as the original with alpha.
    d = Dataset(nominal_schema([2, 3]), [(0, 1, 0), (1, 2, 1), (0, 0, 0), (1, 1, 0), (0, 2, 1)])
    k = 3
    dk = Dataset(d.schema, list(d.records) * k)
    m1 = train_nb(d, NbParams(1.0))
    mk = train_nb(dk, NbParams(1.0 * k))
    for q in [(a, b, None) for a in range(2) for b in range(3)]:
        assert posterior(mk, q) == pytest.approx(posterior(m1, q), abs=1e-12)


def test_extreme_counts_do_not_underflow():
    # 40 attributes all pointing strongly one way: the raw product underflows doubles,
    # the log-space posterior must still be finite and normalised.
    n_attr = 40
    recs = [tuple([0] * n_attr) + (0,)] * 500 + [tuple([1] * n_attr) + (1,)] * 500
    m = train_nb(Dataset(nominal_schema([2] * n_attr), recs), NbParams(1e-6))
    p = posterior(m, tuple([0] * n_attr) + (None,))
    assert all(math.isfinite(x) for x in p)
    assert sum(p) == pytest.approx(1.0, abs=1e-12)
    assert predict_nb(m, tuple([0] * n_attr) + (None,)) == 0


def test_alpha_must_be_positive():
    with pytest.raises(ValueError):
        NbParams(0)


def test_posteriors_sum_to_one(rng):
    for _ in range(30):
        d = random_dataset(rng, rng.randint(1, 20), [rng.randint(2, 4) for _ in range(3)], n_classes=3)
        m = train_nb(d, NbParams(rng.choice([0.5, 1.0, 2.0])))
        for r in d.records:
            assert math.fsum(posterior(m, r)) == pytest.approx(1.0, abs=1e-12)


def test_dict_round_trip(rng):
    d = random_dataset(rng, 15, [2, 3])
    m = train_nb(d)
    back = nb_from_dict(nb_to_dict(m))
    for r in d.records:
        assert posterior(back, r) == pytest.approx(posterior(m, r), abs=1e-12)
