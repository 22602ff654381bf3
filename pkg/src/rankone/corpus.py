"""Bundled example systems.

``instances`` reach equality of congruence and exact residues within the
standard schedule (places of degree <= 3, precision <= 2). ``deep`` ones do
not: their spurious residues at that level are eliminated only by further
places, some of which are listed explicitly as ``extra_places``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .ffpoly import FieldSpec
from .jsonio import CORPUS_SCHEMA, FormatError, dense_from_json, field_from_json, system_from_json

KINDS = ("empty", "unique", "finite", "positive")


@dataclass(frozen=True)
class Instance:
    name: str
    field: FieldSpec
    kind: str
    text: str
    system: tuple
    extra_places: tuple = ()
    resolve: tuple = ()     # (max degree, max precision) of places searched for elimination
    deep: bool = False

    @property
    def M(self):
        return self.system[0].M


def _instance(obj, deep):
    fld = field_from_json(obj["field"])
    if obj["kind"] not in KINDS:
        raise FormatError(f"unknown kind {obj['kind']!r}")
    extra = tuple(dense_from_json(fld, c) for c in obj.get("extra_places", []))
    return Instance(obj["name"], fld, obj["kind"], obj.get("text", ""),
                    tuple(system_from_json(fld, obj["system"])), extra,
                    tuple(obj.get("resolve", ())), deep)


@lru_cache(maxsize=1)
def _load():
    raw = resources.files("rankone").joinpath("data/corpus.json").read_text()
    doc = json.loads(raw)
    if doc.get("schema") != CORPUS_SCHEMA:
        raise FormatError(f"unexpected corpus schema {doc.get('schema')!r}")
    main = tuple(_instance(o, False) for o in doc["instances"])
    deep = tuple(_instance(o, True) for o in doc["deep"])
    return main, deep


def load_corpus(include_deep: bool = False):
    main, deep = _load()
    return main + deep if include_deep else main


def deep_instances():
    return _load()[1]


def get_instance(name: str) -> Instance:
    for inst in load_corpus(include_deep=True):
        if inst.name == name:
            return inst
    raise KeyError(f"no corpus instance named {name!r}")
