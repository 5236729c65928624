import io
import json
import os
import logging
import shlex
import shutil
import sys
import tempfile
import unittest
from contextlib import redirect_stdout

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from main import EXIT_CAP, EXIT_INPUT, EXIT_OK, build_parser, main
from src.utils.logger import WARNING, get_logger, set_level
from tests.racg.fixtures import C4_WHISKER_TEXT

PRODUCT_REGION = {
    "domains": [{"id": "S"}, {"id": "W"}, {"id": "U"}, {"id": "V"}],
    "nest": [["W", "S"], ["U", "W"], ["V", "W"]],
    "orth": [["U", "V"]],
}

SQUARE = {
    "vertices": ["a", "b", "c", "d", "e"],
    "edges": [["a", "b", 1], ["b", "c", 1], ["c", "d", 1], ["d", "a", 1], ["a", "e", 2]],
}


class TestCommandLine(unittest.TestCase):

    def setUp(self):
        self.test_dir = tempfile.mkdtemp()
        self.config_path = os.path.join(self.test_dir, "toolkit.json")
        with open(self.config_path, 'w') as f:
            json.dump({"parallel_survey": False}, f)

    def tearDown(self):
        shutil.rmtree(self.test_dir)

    def write(self, name, content):
        path = os.path.join(self.test_dir, name)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(content if isinstance(content, str) else json.dumps(content))
        return path

    def run_main(self, *argv):
        out = io.StringIO()
        with redirect_stdout(out):
            code = main(["--quiet", "--config", self.config_path, *argv])
        return code, out.getvalue()

    def test_racg_classify(self):
        """A square with a whisker is relatively hyperbolic relative to the square."""
        path = self.write("whisker.txt", C4_WHISKER_TEXT)
        code, out = self.run_main("racg-classify", path)
        self.assertEqual(code, EXIT_OK)
        report = json.loads(out)
        self.assertEqual(report["status"], "relatively_hyperbolic")
        self.assertEqual(report["peripherals"], [["a", "b", "c", "d"]])
        self.assertEqual(report["provenance"]["command"],
                         shlex.join(["--quiet", "--config", self.config_path, "racg-classify", path]))
        self.assertEqual(len(report["provenance"]["input_hash"]), 64)

    def test_curves_classify(self):
        """The cut graph of the genus-two surface is relatively hyperbolic."""
        code, out = self.run_main("curves-classify", "--kind", "cut", "--surface", "2,0")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["status"], "relatively_hyperbolic")

    def test_curves_survey_csv(self):
        """The cut survey up to 2g + n = 4 has one row per closed surface."""
        code, out = self.run_main("curves-survey", "--kind", "cut", "--max-bound", "4")
        self.assertEqual(code, EXIT_OK)
        lines = out.strip().splitlines()
        self.assertEqual(lines[0], "kind,g,n,complexity,verdict,witness_types,disjoint_pairs,udp,note")
        self.assertEqual(len(lines), 3)
        self.assertIn("hyperbolic", lines[1])
        self.assertIn("relatively_hyperbolic", lines[2])

    def test_experiment_rh_delta(self):
        """Radius zero is a point; radius one is a star with one peripheral region."""
        path = self.write("whisker.txt", C4_WHISKER_TEXT)
        code, out = self.run_main("experiment-rh-delta", path, "--radii", "0..1", "--format", "json")
        self.assertEqual(code, EXIT_OK)
        rows = json.loads(out)
        self.assertEqual([row["radius"] for row in rows], [0, 1])
        self.assertEqual(rows[0]["ball_size"], 1)
        self.assertEqual(rows[0]["delta_plain"], 0)
        self.assertEqual(rows[1]["ball_size"], 6)
        self.assertEqual(rows[1]["regions"], 1)
        self.assertEqual(rows[1]["delta_plain"], 0)

    def test_metric_delta(self):
        """The unit square with a pendant edge has δ = 1."""
        path = self.write("square.json", SQUARE)
        code, out = self.run_main("metric-delta", path)
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertEqual(payload["delta"], 1)
        self.assertEqual(payload["vertex_count"], 5)
        self.assertEqual(payload["provenance"]["command"].split()[-2:], ["metric-delta", path])

    def test_hhs_validate_and_isolate(self):
        """A product region validates and is isolated by its container."""
        path = self.write("product.json", PRODUCT_REGION)
        code, out = self.run_main("hhs", "validate", path)
        self.assertEqual(code, EXIT_OK)
        report = json.loads(out)
        self.assertTrue(report["valid"])
        self.assertIn("rank", report)
        self.assertIn("complexity", report)

        code, out = self.run_main("hhs", "isolate", path)
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertTrue(payload["found"])
        self.assertEqual(payload["isolating_set"], ["W"])
        self.assertIn("skeleton", payload)

    def test_input_errors(self):
        """Malformed or missing input exits with code 2."""
        bad_graph = self.write("bad.txt", "v a\ne a z\n")
        self.assertEqual(self.run_main("racg-classify", bad_graph)[0], EXIT_INPUT)
        missing = os.path.join(self.test_dir, "missing.txt")
        self.assertEqual(self.run_main("racg-classify", missing)[0], EXIT_INPUT)
        broken = self.write("broken.json", "{\"domains\": [")
        self.assertEqual(self.run_main("hhs", "validate", broken)[0], EXIT_INPUT)
        self.assertEqual(self.run_main("curves-classify", "--kind", "sep", "--surface", "2,1")[0], EXIT_INPUT)
        self.assertEqual(self.run_main("curves-survey", "--kind", "cut", "--max-bound", "13")[0], EXIT_INPUT)
        self.assertEqual(self.run_main("metric-delta", self.write("s.json", SQUARE), "--mode", "sampled")[0],
                         EXIT_INPUT)

    def test_resource_cap(self):
        """Exact δ over more vertices than the cap exits with code 3."""
        code, out = self.run_main("metric-delta", self.write("square.json", SQUARE), "--cap-vertices", "3")
        self.assertEqual(code, EXIT_CAP)
        self.assertEqual(out, "")

    def test_provenance_records_flags(self):
        """Provenance keeps every flag of the invocation."""
        code, out = self.run_main("curves-classify", "--kind", "cut", "--surface", "2,0")
        self.assertEqual(code, EXIT_OK)
        command = json.loads(out)["provenance"]["command"]
        self.assertTrue(command.endswith("curves-classify --kind cut --surface 2,0"))
        self.assertIn("--config", command)

    def test_detailed_logging_enables_debug(self):
        """detailed_logging in the configuration raises the log level to debug."""
        with open(self.config_path, "w") as f:
            json.dump({"parallel_survey": False, "detailed_logging": True}, f)
        path = self.write("product.json", PRODUCT_REGION)
        try:
            with redirect_stdout(io.StringIO()):
                code = main(["--config", self.config_path, "hhs", "validate", path])
            self.assertEqual(code, EXIT_OK)
            self.assertEqual(get_logger().level, logging.DEBUG)
        finally:
            set_level(WARNING)

        set_level(logging.INFO)
        self.run_main("hhs", "validate", path)
        self.assertEqual(get_logger().level, WARNING)

    def test_parser(self):
        """Subcommands are required and radius options exclude each other."""
        parser = build_parser()
        with redirect_stdout(io.StringIO()), self.assertRaises(SystemExit):
            parser.parse_args([])
        args = parser.parse_args(["experiment-rh-delta", "g.txt", "--radius", "2", "--no-prune"])
        self.assertFalse(args.prune)
        self.assertEqual(args.radius, 2)


if __name__ == '__main__':
    unittest.main()
