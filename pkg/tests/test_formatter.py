"""Output formatting."""
import json
from fractions import Fraction

from data.documents import content_digest
from data.models.schemas import EdgeSet, SolverTrace, VCResult
from output.formatter import (
    bounds_report_to_dict, dump_json, edge_configurations_to_dict, envelope, format_edges_text,
    mask_to_bits,
    trace_to_dict, vc_result_to_dict, witness_to_dict
)
from analysis.enumeration import edge_configurations, enumerate_realized, realize_witness
from analysis.validation.invariants import check_bounds


def test_mask_to_bits():
    assert mask_to_bits(5, 4) == "0101"
    assert mask_to_bits(0, 3) == "000"
    assert mask_to_bits(0, 0) == ""


def test_edges_text():
    assert format_edges_text(EdgeSet(2, (0, 1, 3))) == "00\n01\n11\n"


def test_dump_json_is_canonical():
    text = dump_json({"b": 1, "a": [1, 2]})
    assert text.endswith("}\n")
    assert text.index('"a"') < text.index('"b"')
    assert dump_json({"a": [1, 2], "b": 1}) == text


def test_envelope():
    payload = envelope("vc", vc_result_to_dict(VCResult(2, 3), 4), input_text="{}")
    assert payload["tool"] == "halfplane-hypergraph"
    assert payload["command"] == "vc"
    assert payload["input_digest"] == content_digest("{}")
    assert payload["result"] == {"dim": 2, "witness": "0011"}
    assert envelope("battery", {})["input_digest"] is None


def test_witness_dict(five_segments):
    witness = realize_witness(five_segments.family, 0b00011)
    data = witness_to_dict(witness, 5)
    assert data["subset"] == "00011"
    assert set(data["halfplane"]) == {"a", "b", "c"}
    assert len(data["anchor"]) == 2


def test_trace_dict():
    trace = SolverTrace(final_k=2, rounds_per_k=[3, 1], doublings=3, solution=0b101, optimum=2)
    data = trace_to_dict(trace, 4)
    assert data["solution"] == "0101"
    assert data["ratio"] == "1"
    assert data["rounds_per_k"] == [3, 1]


def test_bounds_report_is_json_ready(five_segments):
    data = bounds_report_to_dict(check_bounds(five_segments.family))
    assert json.loads(dump_json(data)) == data
    assert data["turan_bound"] == "5/3"
    assert Fraction(data["turan_bound"]) == Fraction(5, 3)


def test_edge_configurations_records(five_segments):
    family = five_segments.family
    edges = enumerate_realized(family)
    configurations = edge_configurations(family)
    records = edge_configurations_to_dict(edges, configurations, family.n)
    assert [r["subset"] for r in records] == format_edges_text(edges).splitlines()
    assert records[0]["configuration"] is None
    assert records[-1]["configuration"] is None
    middle = records[1]
    assert middle["configuration"]["case"] == configurations[0b00001].case
