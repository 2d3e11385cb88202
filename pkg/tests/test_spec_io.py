import json

import pytest

from src.core.categories.finite_category import category_law_violations
from src.core.categories.instances import finite_sets_injections_instance
from src.core.categories.spec_io import dumps_spec, load_spec, save_spec, spec_from_dict, spec_to_dict
from src.core.permgrp.group_category import group_as_category
from src.core.permgrp.groups import alternating_group
from src.core.utils.errors import SpecValidationError


def test_document_layout():
    data = spec_to_dict(finite_sets_injections_instance(2))
    assert data["objects"] == ["set1", "set2"]
    assert data["homs"][0] == {"source": "set1", "target": "set1", "morphisms": ["set1->set1:(1)"]}
    assert ["set1->set2:(2)", "set2->set2:(2,1)", "set1->set2:(1)"] in data["compose"]
    assert data["inner"]["set2"] == ["set2->set2:(1,2)", "set2->set2:(2,1)"]


def test_saved_file_reloads_and_saves_identically(tmp_path):
    path = tmp_path / "injections.json"
    save_spec(finite_sets_injections_instance(3), str(path))
    first = path.read_text(encoding="utf-8")
    assert first.endswith("}\n")
    save_spec(load_spec(str(path)), str(path))
    assert path.read_text(encoding="utf-8") == first


def test_lazy_tables_are_written_out():
    text = dumps_spec(group_as_category(alternating_group(3)))
    data = json.loads(text)
    assert len(data["compose"]) == 9
    reloaded = spec_from_dict(data)
    assert category_law_violations(reloaded) == []


@pytest.mark.parametrize("document", [
    [],
    {"objects": ["a"], "homs": []},
    {"objects": ["a"], "identities": {}, "homs": [{"source": "a"}], "compose": []},
    {"objects": ["a"], "identities": {}, "homs": [], "compose": [["f", "g"]]},
])
def test_malformed_documents(document):
    with pytest.raises(SpecValidationError):
        spec_from_dict(document)


def test_invalid_json_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(SpecValidationError):
        load_spec(str(path))
