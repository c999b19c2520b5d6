import io
import json

import numpy as np
from django.test import SimpleTestCase

from noisywires.apps.core.records import SuccessRecord, dumps, format_float, write_csv, write_json


class FormatFloatTests(SimpleTestCase):
    def test_round_trip_exact(self):
        value = 0.1 + 0.2
        self.assertEqual(float(format_float(value)), value)

    def test_special_values(self):
        self.assertEqual(format_float(None), "")
        self.assertEqual(format_float(float("nan")), "nan")
        self.assertEqual(format_float(float("-inf")), "-inf")
        self.assertEqual(format_float(True), "true")
        self.assertEqual(format_float(7), "7")


class WriterTests(SimpleTestCase):
    def test_csv_uses_lf_and_column_order(self):
        stream = io.StringIO()
        write_csv(stream, ["t", "H", "error"], [{"H": 0.5, "t": 1.0, "error": ""}])
        self.assertEqual(stream.getvalue(), "t,H,error\n1,0.5,\n")

    def test_csv_without_header(self):
        stream = io.StringIO()
        write_csv(stream, ["a"], [{"a": 2.5}], include_header=False)
        self.assertEqual(stream.getvalue(), "2.5\n")

    def test_json_is_sorted_and_handles_numpy(self):
        text = dumps(SuccessRecord(data={"b": np.array([1.0, 2.0]), "a": np.float64(3.0)}).to_dict())
        self.assertLess(text.index('"a"'), text.index('"b"'))
        self.assertEqual(json.loads(text)["data"]["b"], [1.0, 2.0])

    def test_write_json_is_deterministic(self):
        first, second = io.StringIO(), io.StringIO()
        record = {"z": 1, "meta": {"y": 2, "x": 3}}
        write_json(first, record)
        write_json(second, dict(reversed(list(record.items()))))
        self.assertEqual(first.getvalue(), second.getvalue())
