import json

import pytest

from grpdhopf import corpus
from grpdhopf.io import (ParseError, dumps, groupoid_from_json, groupoid_to_json, hopf_from_json, hopf_to_json,
                         rep_from_json, rep_to_json)
from grpdhopf.repfun import repfun_concrete
from grpdhopf.representation import spanning_family

from conftest import F5, Q, member


@pytest.mark.parametrize("name", corpus.names())
def test_shipped_corpus_matches_builders(name):
    assert corpus.load(name) == corpus.build(name)
    assert corpus.path(name).read_text() == dumps(groupoid_to_json(corpus.build(name)))


@pytest.mark.parametrize("name", corpus.CORPUS)
def test_groupoid_round_trip(name):
    g = member(name)
    doc = groupoid_to_json(g)
    back = groupoid_from_json(json.loads(dumps(doc)))
    assert back == g and back.arrow_names == g.arrow_names and back.object_names == g.object_names


def test_rep_round_trip(field):
    g = member("band_2_z2")
    (r,) = spanning_family(g, field)
    doc = json.loads(dumps(rep_to_json(r)))
    assert rep_from_json(doc) == r


def test_rep_with_groupoid_path(tmp_path):
    g = member("pair_2")
    (tmp_path / "g.json").write_text(dumps(groupoid_to_json(g)))
    (r,) = spanning_family(g, Q)
    doc = rep_to_json(r, groupoid="g.json")
    assert rep_from_json(doc, base_dir=tmp_path) == r


@pytest.mark.parametrize("name", ["unit_3", "band_2_z2", "union_pair2_z2"])
def test_hopf_round_trip_bit_exact(name, field):
    h = repfun_concrete(member(name), field)
    text = dumps(hopf_to_json(h))
    back = hopf_from_json(json.loads(text))
    assert back == h
    assert dumps(hopf_to_json(back)) == text


def test_scalar_formats():
    h = repfun_concrete(member("pair_2"), F5)
    doc = hopf_to_json(h)
    assert doc["field"] == "fp:5"
    assert all(" mod 5" in v for v in doc["total"]["unit"])
    assert hopf_to_json(repfun_concrete(member("pair_2"), Q))["total"]["unit"] == ["1"] * 4
    assert Q.parse_scalar(Q.format(Q(3) / Q(-4))) == Q(3) / Q(-4)


@pytest.mark.parametrize("doc,msg", [
    ({"objects": ["a"]}, "arrows"),
    ({"objects": ["a", "a"], "arrows": [], "compose": [], "identity": {}, "inverse": {}}, "duplicate"),
    ({"objects": ["a"], "arrows": [{"id": "f", "src": "a", "tgt": "b"}], "compose": [],
      "identity": {"a": "f"}, "inverse": {"f": "f"}}, "unknown object"),
    ({"objects": ["a"], "arrows": [{"id": "f", "src": "a", "tgt": "a"}], "compose": [["f", "f"]],
      "identity": {"a": "f"}, "inverse": {"f": "f"}}, "triple"),
    ({"objects": ["a"], "arrows": [{"id": "f", "src": "a", "tgt": "a"}], "compose": [],
      "identity": {}, "inverse": {"f": "f"}}, "identity"),
])
def test_groupoid_parse_errors(doc, msg):
    with pytest.raises(ParseError, match=msg):
        groupoid_from_json(doc)


def test_bad_matrix_shape_rejected():
    g = member("pair_2")
    (r,) = spanning_family(g, Q)
    doc = rep_to_json(r)
    doc["matrices"][g.arrow_names[0]] = [["1", "0"], ["0", "1"]]
    with pytest.raises(ParseError):
        rep_from_json(doc)


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
