import json

import pytest

from quarantine_release.serialize import encode_json, format_number


class TestFormatNumber:
    def test_twelve_significant_digits(self):
        assert format_number(1 / 3) == "0.333333333333"
        assert format_number(0.9792216483154669) == "0.979221648315"

    def test_short_decimals_stay_short(self):
        assert format_number(0.98) == "0.98"
        assert format_number(13.0) == "13"

    def test_scientific_range(self):
        assert format_number(5.65699999e-23) == "5.65699999e-23"

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            format_number(float("inf"))
        with pytest.raises(ValueError):
            format_number(float("nan"))


class TestEncodeJson:
    def test_key_order_is_insertion_order(self):
        assert encode_json({"b": 1, "a": 2}) == '{"b":1,"a":2}'

    def test_nested_document(self):
        doc = {"p0": 0.98, "groups": [{"day": 8, "count": 1}], "note": None, "ok": True}
        assert (
            encode_json(doc)
            == '{"p0":0.98,"groups":[{"day":8,"count":1}],"note":null,"ok":true}'
        )

    def test_parses_back(self):
        doc = {"x": [1, 2.5, "s", False, None], "y": {"z": 1e-9}}
        assert json.loads(encode_json(doc)) == {"x": [1, 2.5, "s", False, None], "y": {"z": 1e-9}}

    def test_deterministic(self):
        doc = {"a": 0.1234567890123456789, "b": [3.14159, {"c": 2.71828}]}
        assert encode_json(doc) == encode_json(doc)

    def test_floats_trimmed_to_twelve_digits(self):
        assert encode_json({"v": 0.1234567890123456789}) == '{"v":0.123456789012}'

    def test_unicode_preserved(self):
        assert encode_json({"s": "Gruppengröße"}) == '{"s":"Gruppengröße"}'

    def test_unsupported_type_rejected(self):
        with pytest.raises(TypeError):
            encode_json({"x": object()})
