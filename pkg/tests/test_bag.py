import pytest

from tncbgen.bag import Bag, BagError, parse_bag
from tncbgen.signs import Sign, Var


def test_round_trip(dog_bag):
    assert parse_bag(dog_bag.dumps()) == dog_bag


def test_default_ids():
    bag = parse_bag('[{"cat": "DET", "orth": "the", "feats": {"spec": 1}}]')
    assert bag.ids == (0,)


@pytest.mark.parametrize("text", [
    "{}",
    "[{\"orth\": \"x\"}]",
    "[{\"cat\": \"N\", \"orth\": \"x\", \"feats\": {\"idx\": -1}}]",
    "[{\"cat\": \"N\", \"orth\": \"x\", \"feats\": {\"idx\": true}}]",
    "[{\"cat\": \"N\", \"orth\": \"x\", \"feats\": {\"idx\": 1.5}}]",
    "[{\"cat\": \"N\", \"orth\": \"x\", \"feats\": {\"case\": \"Nom\"}}]",
    "[{\"id\": 1, \"cat\": \"N\", \"orth\": \"x\"},"
    " {\"id\": 1, \"cat\": \"N\", \"orth\": \"y\"}]",
    "not json",
])
def test_bad_bags(text):
    with pytest.raises(BagError):
        parse_bag(text)


def test_signs_must_be_ground():
    with pytest.raises(BagError):
        Bag.of([Sign("N", "x", (("idx", Var("X")),))])


def test_subbag(dog_bag):
    sub = dog_bag.subbag([3, 1])
    assert sub.ids == ("the", "dog")
    assert sub.orths() == ["the", "dog"]
