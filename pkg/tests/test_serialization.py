"""JSON round trips and strict revalidation on load."""

from __future__ import annotations

import json

import pytest
from gmpy2 import mpq

from pareto_cover import (
    ContinuousInstance,
    Cover,
    FiniteSupportOracle,
    PiecewiseConstantOracle,
    UniformOracle,
    ValidationError,
    bernoulli_instance,
)
from pareto_cover.serialization import (
    cover_from_json,
    cover_to_json,
    dumps,
    instance_from_json,
    instance_to_json,
)


class TestDiscreteRoundTrip:
    def test_round_trip(self):
        inst = bernoulli_instance([mpq(1, 3), mpq(2, 3)], [mpq(1), mpq(5, 2)], 2)
        obj = instance_to_json(inst)
        assert obj["type"] == "discrete"
        assert obj["grid"] == ["0/1", "1/1"]
        back = instance_from_json(json.loads(dumps(obj)))
        assert back == inst

    def test_bad_rows_refused_on_load(self):
        inst = bernoulli_instance([mpq(1, 3)], [mpq(1)], 1)
        obj = instance_to_json(inst)
        obj["probs"][0][0] = "1/2"  # row no longer sums to one
        with pytest.raises(ValidationError):
            instance_from_json(obj)

    def test_missing_field(self):
        with pytest.raises(ValidationError):
            instance_from_json({"type": "discrete", "grid": ["0/1", "1/1"]})
        with pytest.raises(ValidationError):
            instance_from_json({"type": "nonsense"})


class TestContinuousRoundTrip:
    def test_all_oracle_kinds(self):
        inst = ContinuousInstance(
            oracles=(
                UniformOracle(),
                FiniteSupportOracle(atoms=[(mpq(0), mpq(1, 4)), (mpq(1), mpq(3, 4))]),
                PiecewiseConstantOracle(
                    breakpoints=[mpq(0), mpq(1, 2), mpq(1)],
                    densities=[mpq(3, 2), mpq(1, 2)],
                ),
            ),
            costs=(mpq(1), mpq(2), mpq(3)),
            k=2,
            alpha=mpq(1, 8),
        )
        back = instance_from_json(instance_to_json(inst))
        assert back.costs == inst.costs
        assert back.alpha == inst.alpha
        assert [o.kind for o in back.oracles] == ["uniform", "finite", "piecewise"]
        for a, b in [(mpq(-1), mpq(1, 3)), (mpq(1, 4), mpq(1))]:
            for o1, o2 in zip(inst.oracles, back.oracles):
                assert o1.query(a, b, mpq(1, 2)) == o2.query(a, b, mpq(1, 2))


class TestCoverRoundTrip:
    def test_round_trip(self):
        cover = Cover(points=((mpq(1, 2), mpq(1)), (mpq(0), mpq(2, 3))))
        assert cover_from_json(cover_to_json(cover)) == cover

    def test_bad_cover(self):
        with pytest.raises(ValidationError):
            cover_from_json({"cover": [["3/2"]]})
        with pytest.raises(ValidationError):
            cover_from_json({"points": []})


class TestDeterminism:
    def test_byte_identical_dumps(self):
        inst = bernoulli_instance([mpq(1, 7)] * 3, [mpq(2), mpq(1), mpq(3)], 2)
        assert dumps(instance_to_json(inst)) == dumps(instance_to_json(inst))
