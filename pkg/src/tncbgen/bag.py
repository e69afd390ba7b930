"""Bags of ground signs and their JSON file format.

A bag file is a JSON list of ``{"id", "cat", "orth", "feats"}`` objects.
Integer feature values are indices, strings are atoms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Union

from .signs import Sign

LeafId = Union[int, str]


class BagError(ValueError):
    pass


@dataclass(frozen=True)
class Bag:
    """A multiset of ground signs, each with a stable leaf identifier."""

    ids: tuple
    signs: tuple

    def __post_init__(self):
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "signs", tuple(self.signs))
        if len(self.ids) != len(self.signs):
            raise BagError("ids and signs differ in length")
        if len(set(self.ids)) != len(self.ids):
            raise BagError("duplicate leaf id in bag")
        for s in self.signs:
            if not s.is_ground():
                raise BagError("bag sign %s is not ground" % s)

    @classmethod
    def of(cls, signs: Iterable[Sign]) -> "Bag":
        signs = tuple(signs)
        return cls(tuple(range(len(signs))), signs)

    def __len__(self) -> int:
        return len(self.signs)

    def __iter__(self) -> Iterator[Sign]:
        return iter(self.signs)

    def index(self, leaf_id: LeafId) -> int:
        return self.ids.index(leaf_id)

    def orths(self) -> list[str]:
        return [s.orth for s in self.signs]

    def subbag(self, positions: Iterable[int]) -> "Bag":
        positions = list(positions)
        return Bag(tuple(self.ids[i] for i in positions),
                   tuple(self.signs[i] for i in positions))

    def to_json(self) -> list[dict]:
        return [{"id": i, "cat": s.cat, "orth": s.orth, "feats": s.fmap}
                for i, s in zip(self.ids, self.signs)]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"


def _check_value(v, where: str):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise BagError("%s: feature values must be integers or strings"
                       % where)
    if isinstance(v, int) and v < 0:
        raise BagError("%s: indices must be non-negative" % where)
    if isinstance(v, str) and (not v or v[0].isupper() or " " in v):
        # uppercase-initial tokens are template variables
        raise BagError("%s: bad atom %r" % (where, v))
    return v


def bag_from_json(data) -> Bag:
    if not isinstance(data, list):
        raise BagError("bag must be a JSON list")
    ids, signs = [], []
    for n, item in enumerate(data):
        try:
            cat, orth = item["cat"], item["orth"]
        except (KeyError, TypeError):
            raise BagError("entry %d: needs cat and orth" % n) from None
        if not orth or not cat:
            raise BagError("entry %d: empty cat or orth" % n)
        feats = item.get("feats", {})
        for k, v in feats.items():
            _check_value(v, "entry %d feature %s" % (n, k))
        ids.append(item.get("id", n))
        signs.append(Sign(cat, orth, feats))
    return Bag(tuple(ids), tuple(signs))


def parse_bag(text: str) -> Bag:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise BagError("invalid JSON: %s" % e) from None
    return bag_from_json(data)


def load_bag(path) -> Bag:
    return parse_bag(Path(path).read_text(encoding="utf-8"))
