import numpy as np
import pytest

from miml import Bag, MIMLDataset, parse_dataset, select_bags, write_dataset
from miml.errors import DataSyntaxError, SchemaError
from miml.synthetic import random_dataset

from conftest import TOY_ARFF, TOY_XML


def test_parse_toy(toy_files):
    ds = parse_dataset(*toy_files)
    assert (ds.n_bags, ds.n_attributes, ds.n_labels) == (2, 2, 2)
    assert ds.relation_name == "toy"
    assert ds.schema.names == ("f1", "f2")
    assert ds.label_names == ("red", "blue")
    assert ds.bags[0].id == "b1"
    np.testing.assert_array_equal(ds.bags[0].instances, [[0.5, 1.0], [0.25, 2.0]])
    np.testing.assert_array_equal(ds.bags[1].instances, [[3.0, 1.5]])
    np.testing.assert_array_equal(ds.y, [[1, 0], [0, 1]])


def test_label_order_follows_sidecar(tmp_path):
    arff = tmp_path / "x.arff"
    xml = tmp_path / "x.xml"
    arff.write_text(TOY_ARFF)
    xml.write_text('<labels><label name="blue"/><label name="red"/></labels>')
    ds = parse_dataset(arff, xml)
    assert ds.label_names == ("blue", "red")
    np.testing.assert_array_equal(ds.y, [[0, 1], [1, 0]])


def test_string_bag_id_accepted(tmp_path):
    arff = tmp_path / "x.arff"
    xml = tmp_path / "x.xml"
    arff.write_text(TOY_ARFF.replace("@attribute id {b1,b2}", "@ATTRIBUTE id string"))
    xml.write_text(TOY_XML)
    assert parse_dataset(arff, xml).n_bags == 2


def _write(tmp_path, arff_text, xml_text=TOY_XML):
    arff = tmp_path / "bad.arff"
    xml = tmp_path / "bad.xml"
    arff.write_text(arff_text)
    xml.write_text(xml_text)
    return arff, xml


@pytest.mark.parametrize("arff_text, xml_text", [
    (TOY_ARFF, '<labels><label name="red"/><label name="green"/></labels>'),
    (TOY_ARFF.replace('b2,"3.0,1.5",0,1', 'b2,"3.0,1.5",0,2'), TOY_XML),
    (TOY_ARFF.replace('b2,"3.0,1.5",0,1', 'b2,"3.0,abc",0,1'), TOY_XML),
    (TOY_ARFF.replace('b2,"3.0,1.5",0,1', 'b2,"3.0,?",0,1'), TOY_XML),
    (TOY_ARFF.replace('b2,"3.0,1.5",0,1', 'b1,"3.0,1.5",0,1'), TOY_XML),
    (TOY_ARFF.replace('b2,"3.0,1.5",0,1', 'b2,"",0,1'), TOY_XML),
    (TOY_ARFF.replace("@attribute f2 numeric", "@attribute f2 {x,y}"), TOY_XML),
    (TOY_ARFF.replace("@attribute blue {0,1}", "@attribute blue {0,1}\n@attribute extra numeric"),
     TOY_XML),
    (TOY_ARFF.replace('b2,"3.0,1.5",0,1', 'b2,"3.0,1.5,7",0,1'), TOY_XML),
    (TOY_ARFF.replace('b2,"3.0,1.5",0,1', 'b2,"3.0,inf",0,1'), TOY_XML),
], ids=["label-missing", "non-binary", "non-numeric", "missing-value", "duplicate-id",
        "empty-bag", "nominal-feature", "undeclared-attr", "wrong-width", "non-finite"])
def test_schema_errors(tmp_path, arff_text, xml_text):
    with pytest.raises(SchemaError):
        parse_dataset(*_write(tmp_path, arff_text, xml_text))


def test_syntax_error_reports_location(tmp_path):
    text = TOY_ARFF.replace('b2,"3.0,1.5",0,1', 'b2,"3.0,1.5,0,1')
    with pytest.raises(DataSyntaxError) as info:
        parse_dataset(*_write(tmp_path, text))
    assert info.value.line == 14
    assert info.value.column == 4


def test_malformed_xml(tmp_path):
    with pytest.raises(DataSyntaxError):
        parse_dataset(*_write(tmp_path, TOY_ARFF, "<labels><label name='a'>"))


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        parse_dataset(tmp_path / "nope.arff", tmp_path / "nope.xml")


def test_round_trip(toy_files, tmp_path):
    ds = parse_dataset(*toy_files)
    write_dataset(ds, tmp_path / "out.arff", tmp_path / "out.xml")
    assert parse_dataset(tmp_path / "out.arff", tmp_path / "out.xml") == ds


def test_round_trip_full_precision(tmp_path):
    ds = MIMLDataset.from_arrays([[[1 / 3, -0.0, 1e-300]], [[2 / 3, 1e300, -7.1]]],
                                 [[1, 0], [0, 1]], bag_ids=["odd id", "it's"],
                                 label_names=["has space", "x,y"], relation_name="a b")
    write_dataset(ds, tmp_path / "p.arff", tmp_path / "p.xml")
    back = parse_dataset(tmp_path / "p.arff", tmp_path / "p.xml")
    assert back == ds
    assert back.bags[0].instances[0, 0] == 1 / 3


def test_round_trip_random(tmp_path, rng):
    for _ in range(25):
        ds = random_dataset(rng)
        write_dataset(ds, tmp_path / "r.arff", tmp_path / "r.xml")
        assert parse_dataset(tmp_path / "r.arff", tmp_path / "r.xml") == ds


def test_unwritable_path(tmp_path, four_bags):
    with pytest.raises(OSError):
        write_dataset(four_bags, tmp_path / "missing" / "x.arff", tmp_path / "missing" / "x.xml")


def test_select_identity(four_bags):
    assert select_bags(four_bags, range(4)) == four_bags


def test_select_repeats_get_unique_ids(four_bags):
    ds = MIMLDataset.from_arrays([[[0.0]], [[1.0]]], [[1, 0], [0, 1]])
    out = select_bags(ds, [0, 0])
    assert out.n_bags == 2
    assert out.bags[0].id != out.bags[1].id
    np.testing.assert_array_equal(out.bags[0].instances, out.bags[1].instances)
    np.testing.assert_array_equal(out.y, [[1, 0], [1, 0]])


def test_select_single(four_bags):
    out = select_bags(four_bags, [1])
    np.testing.assert_array_equal(out.y, [four_bags.y[1]])
    assert out.bags[0] == four_bags.bags[1]


def test_select_keeps_pairing(rng):
    ds = random_dataset(rng, min_bags=5)
    idx = rng.integers(0, ds.n_bags, size=12)
    out = select_bags(ds, idx)
    for pos, i in enumerate(idx):
        np.testing.assert_array_equal(out.bags[pos].instances, ds.bags[i].instances)
        np.testing.assert_array_equal(out.y[pos], ds.y[i])


def test_select_out_of_range(four_bags):
    with pytest.raises(IndexError):
        select_bags(four_bags, [4])


def test_dataset_is_immutable(four_bags):
    with pytest.raises(ValueError):
        four_bags.bags[0].instances[0, 0] = 9.0
    with pytest.raises(ValueError):
        four_bags.y[0, 0] = 0


def test_bag_validation():
    with pytest.raises(SchemaError):
        Bag("", [[1.0]])
    with pytest.raises(SchemaError):
        Bag("x", np.empty((0, 2)))
    with pytest.raises(SchemaError):
        Bag("x", [[np.nan]])


from hypothesis import given, settings, strategies as st


@settings(max_examples=200, deadline=None)
@given(pos=st.integers(min_value=0, max_value=len(TOY_ARFF) - 1),
       char=st.sampled_from(list(",{}\"'\\@%?x0-. \n")),
       mode=st.sampled_from(["replace", "insert", "delete"]))
def test_corruptions_raise_declared_errors(tmp_path_factory, pos, char, mode):
    if mode == "replace":
        text = TOY_ARFF[:pos] + char + TOY_ARFF[pos + 1:]
    elif mode == "insert":
        text = TOY_ARFF[:pos] + char + TOY_ARFF[pos:]
    else:
        text = TOY_ARFF[:pos] + TOY_ARFF[pos + 1:]
    d = tmp_path_factory.mktemp("fuzz")
    (d / "f.arff").write_text(text)
    (d / "f.xml").write_text(TOY_XML)
    try:
        parse_dataset(d / "f.arff", d / "f.xml")
    except (DataSyntaxError, SchemaError):
        pass
