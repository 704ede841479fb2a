import contextlib
import io
import json
import os
import unittest
import uuid
from unittest import mock

import fsspec

from pathdepth.cli import main
from pathdepth.exceptions import InconsistentResultError
from pathdepth.exceptions import SearchTimeout
from pathdepth.settings import CACHE_ENV


class CliTestCase(unittest.TestCase):
    def setUp(self):
        patcher = mock.patch.dict(os.environ, {CACHE_ENV: ""})
        patcher.start()
        self.addCleanup(patcher.stop)
        self.root = f"memory://pathdepth-cli-{uuid.uuid4().hex}"

    def run_cli(self, *argv):
        out = io.StringIO()
        with contextlib.redirect_stdout(out):
            code = main(list(argv))
        return code, out.getvalue()

    def write(self, name, text):
        url = f"{self.root}/{name}"
        with fsspec.open(url, "wt") as f:
            f.write(text)
        return url


class TestDepthAndBetti(CliTestCase):
    def test_depth(self):
        code, out = self.run_cli("depth", "--path", "3", "2")
        self.assertEqual(0, code)
        self.assertEqual("depth=1\npd=2\ndepth(I)=2\n", out)

    def test_depth_json(self):
        code, out = self.run_cli("depth", "--path", "4", "2", "--t", "2", "--format", "json")
        self.assertEqual(0, code)
        self.assertEqual({"n": 4, "depth": 1, "pd": 3, "depth_ideal": 2}, json.loads(out))

    def test_betti_from_file(self):
        url = self.write("principal.ideal", "ring n=3\nx1*x2*x3\n")
        code, out = self.run_cli("betti", "--file", url, "--field", "GF2")
        self.assertEqual(0, code)
        self.assertIn("field=GF2", out)
        self.assertIn("beta_1 x1*x2*x3 = 1", out)
        self.assertIn("totals: 0:1 1:1", out)

    def test_power_of_file(self):
        url = self.write("path.ideal", "ring n=3\nx1*x2\nx2*x3\n")
        _, from_file = self.run_cli("depth", "--file", url, "--t", "2")
        _, from_path = self.run_cli("depth", "--path", "3", "2", "--t", "2")
        self.assertEqual(from_path, from_file)


class TestSdepth(CliTestCase):
    def test_sdepth(self):
        code, out = self.run_cli("sdepth", "--path", "3", "2")
        self.assertEqual(0, code)
        self.assertTrue(out.startswith("sdepth=1\nintervals="))

    def test_modes(self):
        _, out = self.run_cli("sdepth", "--path", "3", "2", "--mode", "ideal", "--g", "2,1,1")
        self.assertTrue(out.startswith("sdepth=2\n"))
        sub = self.write("sub.ideal", "ring n=2\nx1*x2\n")
        ideal = self.write("ideal.ideal", "ring n=2\nx1\nx2\n")
        _, out = self.run_cli("sdepth", "--file", ideal, "--mode", "pair", "--sub", sub)
        self.assertTrue(out.startswith("sdepth=1\n"))

    def test_certificate_round_trip(self):
        cert = f"{self.root}/cert.json"
        code, out = self.run_cli("sdepth", "--path", "4", "2", "--t", "2", "--certificate", cert)
        self.assertEqual(0, code)
        self.assertIn(f"certificate={cert}", out)
        code, out = self.run_cli("sdepth", "--path", "4", "2", "--t", "2", "--verify", cert)
        self.assertEqual(0, code)
        self.assertEqual("certificate accepted\n", out)

    def test_rejected_certificate(self):
        cert = f"{self.root}/cert.json"
        self.run_cli("sdepth", "--path", "4", "2", "--t", "2", "--certificate", cert)
        code, out = self.run_cli("sdepth", "--path", "4", "2", "--verify", cert)
        self.assertEqual(1, code)
        self.assertIn("rejected", out)
        self.assertIn("outside poset", out)

    def test_cache(self):
        cache_dir = f"{self.root}/cache"
        _, cold = self.run_cli("sdepth", "--path", "4", "2", "--cache-dir", cache_dir)
        _, warm = self.run_cli("sdepth", "--path", "4", "2", "--cache-dir", cache_dir, "--paranoid")
        self.assertEqual(cold, warm)
        self.assertEqual(1, len([p for p in fsspec.filesystem("memory").find(cache_dir) if p.endswith(".json")]))

    def cached_entry(self, cache_dir):
        fs = fsspec.filesystem("memory")
        (name,) = [p for p in fs.find(cache_dir) if p.endswith(".json")]
        with fs.open(name, "rt") as f:
            return fs, name, json.load(f)

    def test_cache_entry_of_the_wrong_shape_is_recomputed(self):
        cache_dir = f"{self.root}/cache"
        _, cold = self.run_cli("sdepth", "--path", "4", "2", "--cache-dir", cache_dir)
        fs, name, entry = self.cached_entry(cache_dir)
        with fs.open(name, "wt") as f:
            json.dump({"key": entry["key"], "value": {"depth": 2}}, f)
        with self.assertLogs("pathdepth.cache", "WARNING"):
            code, warm = self.run_cli("sdepth", "--path", "4", "2", "--cache-dir", cache_dir)
        self.assertEqual(0, code)
        self.assertEqual(cold, warm)

    def test_paranoid_cache_checks_value_against_certificate(self):
        cache_dir = f"{self.root}/cache"
        _, cold = self.run_cli("sdepth", "--path", "4", "2", "--cache-dir", cache_dir)
        self.assertTrue(cold.startswith("sdepth=2\n"))
        fs, name, entry = self.cached_entry(cache_dir)
        entry["value"]["value"] = 3
        with fs.open(name, "wt") as f:
            json.dump(entry, f)
        with self.assertLogs("pathdepth.cache", "WARNING"):
            _, warm = self.run_cli("sdepth", "--path", "4", "2", "--cache-dir", cache_dir, "--paranoid")
        self.assertEqual(cold, warm)

    def test_backtracking_solver(self):
        _, out = self.run_cli("sdepth", "--path", "4", "2", "--t", "2", "--solver", "backtrack")
        _, default = self.run_cli("sdepth", "--path", "4", "2", "--t", "2")
        self.assertEqual(default.splitlines()[0], out.splitlines()[0])


class TestSweepAndCheck(CliTestCase):
    def test_sweep_jsonl(self):
        code, out = self.run_cli("sweep", "--n", "2-3", "--format", "jsonl")
        self.assertEqual(0, code)
        rows = [json.loads(line) for line in out.splitlines()]
        self.assertEqual([(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)], [(r["n"], r["m"]) for r in rows])

    def test_sweep_markdown_with_sdepth(self):
        code, out = self.run_cli("sweep", "--n", "3", "--m", "2", "--t", "1-2", "--sdepth")
        self.assertEqual(0, code)
        self.assertIn("| n | m | t |", out)

    def test_sweep_error_fails_the_run(self):
        error = InconsistentResultError("searches disagree on k=2")
        with mock.patch("pathdepth.sweep.sdepth", side_effect=error), self.assertLogs("pathdepth.sweep", "ERROR"):
            code, out = self.run_cli("sweep", "--n", "3", "--m", "2", "--t", "1", "--sdepth", "--format", "jsonl")
        self.assertEqual(1, code)
        (row,) = [json.loads(line) for line in out.splitlines()]
        self.assertEqual((1, 2), (row["depth_computed"], row["pd_computed"]))
        self.assertEqual("pass", row["status"]["depth"])
        self.assertIn("quotient_upper", row["bounds"])
        self.assertEqual("error: searches disagree on k=2", row["status"]["sdepth_quotient"])

    def test_check_timeout_exit_code(self):
        with mock.patch("pathdepth.checks.sdepth", side_effect=SearchTimeout(0.5)), self.assertLogs("pathdepth"):
            code, out = self.run_cli("check", "umt", "--m", "2", "--t", "2")
        self.assertEqual(4, code)
        self.assertTrue(out.startswith("umt m=2 t=2: unknown"))

    def test_check_exit_codes(self):
        code, out = self.run_cli("check", "colon-power", "--n", "3", "--m", "2", "--t", "2")
        self.assertEqual(0, code)
        self.assertTrue(out.startswith("colon-power n=3 m=2 t=2: pass"))
        code, _ = self.run_cli("check", "colon-w", "--m", "2", "--t", "2", "--q", "1", "--r", "1")
        self.assertEqual(1, code)

    def test_check_json(self):
        code, out = self.run_cli("check", "umt", "--m", "2", "--t", "2", "--no-sdepth", "--format", "json")
        self.assertEqual(0, code)
        self.assertTrue(json.loads(out)["passed"])

    def test_explore_stefan(self):
        code, out = self.run_cli("explore-stefan", "--n", "2-4", "--format", "jsonl")
        self.assertEqual(0, code)
        self.assertEqual(["agree"] * 3, [json.loads(line)["status"] for line in out.splitlines()])


class TestExitCodes(CliTestCase):
    def test_malformed_input(self):
        url = self.write("bad.ideal", "x1*x2\n")
        self.assertEqual(2, self.run_cli("depth", "--file", url)[0])
        self.assertEqual(2, self.run_cli("depth", "--file", f"{self.root}/missing.ideal")[0])
        self.assertEqual(2, self.run_cli("depth", "--path", "3", "2", "--t", "0")[0])

    def test_cap(self):
        with self.assertLogs("pathdepth", "ERROR"):
            self.assertEqual(3, self.run_cli("depth", "--path", "6", "1", "--t", "3")[0])

    def test_unit_ideal(self):
        url = self.write("unit.ideal", "ring n=2\n1\n")
        self.assertEqual(5, self.run_cli("depth", "--file", url)[0])

    def test_parameter_error(self):
        self.assertEqual(5, self.run_cli("depth", "--path", "2", "3")[0])
        self.assertEqual(5, self.run_cli("check", "colon-power", "--n", "3", "--m", "2")[0])

    def test_bad_setting(self):
        self.assertEqual(2, self.run_cli("depth", "--path", "3", "2", "--max-poset", "0")[0])

    def test_usage_error(self):
        with contextlib.redirect_stderr(io.StringIO()), self.assertRaises(SystemExit) as cm:
            main(["sweep", "--n", "5-2"])
        self.assertEqual(2, cm.exception.code)
