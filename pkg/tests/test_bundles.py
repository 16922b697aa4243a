import json

import pytest

from dgmf.bundles import (
    dict_to_instance,
    emit_text,
    instance_to_dict,
    load_path,
    save_path,
)
from dgmf.errors import BundleFormatError


def test_round_trip_byte_identical(e1, e2, e3):
    for inst in (e1, e2, e3):
        text = emit_text(inst)
        again = emit_text(dict_to_instance(json.loads(text)))
        assert text == again


def test_file_round_trip(tmp_path, e1):
    path = tmp_path / "e1.json"
    save_path(str(path), e1)
    loaded = load_path(str(path))
    assert loaded.name == e1.name
    assert loaded.f == e1.f
    assert loaded.sequence == e1.sequence
    assert loaded.bundle.d(2) == e1.bundle.d(2)
    save_path(str(tmp_path / "again.json"), loaded)
    assert (tmp_path / "again.json").read_bytes() == path.read_bytes()


def test_missing_key_rejected(e1):
    data = instance_to_dict(e1)
    del data["sequence"]
    with pytest.raises(BundleFormatError):
        dict_to_instance(data)


def test_bad_polynomial_rejected(e1):
    data = instance_to_dict(e1)
    data["f"] = "x + ("
    with pytest.raises(BundleFormatError):
        dict_to_instance(data)


def test_wrong_matrix_shape_rejected(e1):
    data = instance_to_dict(e1)
    data["M"]["differentials"][0] = [["x", "y"]]
    with pytest.raises(BundleFormatError):
        dict_to_instance(data)


def test_bad_mult_key_rejected(e1):
    data = instance_to_dict(e1)
    data["M"]["mult"]["nonsense"] = ["0"]
    with pytest.raises(BundleFormatError):
        dict_to_instance(data)
    data = instance_to_dict(e1)
    data["M"]["mult"]["1,1:9,9"] = ["0"] * 6
    with pytest.raises(BundleFormatError):
        dict_to_instance(data)


def test_truncated_file_rejected(tmp_path, e1):
    path = tmp_path / "broken.json"
    path.write_text(emit_text(e1)[:50])
    with pytest.raises(BundleFormatError):
        load_path(str(path))


def test_differentials_only_load(tmp_path, e1):
    path = tmp_path / "e1.json"
    save_path(str(path), e1)
    ring, sequence, f, cx, split, label = load_path(str(path), differentials_only=True)
    assert label == "E1"
    assert cx.ranks == [1, 4, 6, 4, 1]
    assert split == ([0, 1, 2, 3], [])
