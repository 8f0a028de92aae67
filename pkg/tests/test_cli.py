import contextlib
import csv
import io
import json
import unittest
from pathlib import Path

from trigmin.certificates.results import ToleranceMode
from trigmin.cli.commands import ExitCode
from trigmin.cli.settings import (CONFIG_FILENAME, Command, OutputFormat,
                                  UsageError, build_run_config,
                                  get_settings_directory, parse_config_text,
                                  resolve_pool_size)
from trigmin.trigmin import main
from tests import test_helpers


def run(argv: list[str]) -> tuple[int, str, str]:
    (out, err) = (io.StringIO(), io.StringIO())
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return (code, out.getvalue(), err.getvalue())


class CliTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.config_home = test_helpers.TempConfigHome()
        self.directory = self.config_home.__enter__()

    def tearDown(self) -> None:
        self.config_home.__exit__(None, None, None)


class TestExitCodes(CliTestCase):
    def test_usage_errors(self) -> None:
        for argv in ([], ["verify"], ["oracle", "--m", "81"],
                     ["oracle", "--m", "81", "--n", "forty"],
                     ["oracle", "--m", "3", "--n", "5"],
                     ["oracle", "--m", "81", "--n", "42", "--density", "0.5"],
                     ["scan", "--m-from", "4", "--m-to", "9"],
                     ["verify", "--m", "81", "--n", "42", "--seed", "-1"],
                     ["nonsense"]):
            with self.subTest(argv=argv):
                (code, out, err) = run(argv)
                self.assertEqual(code, ExitCode.USAGE)
                self.assertEqual(out, "")
                self.assertIn("usage error", err)

    def test_out_of_scope(self) -> None:
        for (m, n) in ((82, 42), (81, 68), (79, 40)):
            with self.subTest(m=m, n=n):
                (code, out, _) = run(["verify", "--m", str(m), "--n", str(n)])
                self.assertEqual(code, ExitCode.OUT_OF_SCOPE)
                self.assertEqual(out, "")

    def test_oracle_exit_codes(self) -> None:
        (code, out, _) = run(["oracle", "--m", "3", "--n", "2"])
        self.assertEqual(code, ExitCode.OK)
        self.assertTrue(json.loads(out)["works"])
        (code, out, _) = run(["oracle", "--m", "4", "--n", "3"])
        self.assertEqual(code, ExitCode.DOES_NOT_WORK)
        self.assertAlmostEqual(float(json.loads(out)["min"]), 0.0,
                               delta=1e-9)

    def test_missing_config_file(self) -> None:
        missing = self.directory / "missing.conf"
        (code, _, err) = run(["oracle", "--m", "3", "--n", "2",
                              "--config", str(missing)])
        self.assertEqual(code, ExitCode.IO_ERROR)
        self.assertIn("cannot read config", err)

    def test_unwritable_report(self) -> None:
        (code, _, _) = run(["oracle", "--m", "3", "--n", "2",
                            "-o", str(self.directory)])
        self.assertEqual(code, ExitCode.IO_ERROR)


class TestReports(CliTestCase):
    def test_report_file_is_deterministic(self) -> None:
        path = self.directory / "oracle.json"
        argv = ["oracle", "--m", "81", "--n", "42", "-o", str(path)]
        self.assertEqual(run(argv)[0], ExitCode.OK)
        first = path.read_bytes()
        self.assertEqual(run(argv)[0], ExitCode.OK)
        self.assertEqual(path.read_bytes(), first)
        document = json.loads(first)
        self.assertEqual(document["pair"], {"m": 81, "n": 42})
        self.assertEqual(document["f0"], "301/2160")

    def test_csv_and_text(self) -> None:
        (_, out, _) = run(["oracle", "--m", "3", "--n", "2",
                           "--format", "csv"])
        lines = out.splitlines()
        self.assertEqual(lines[0], "m,n,argmin,min,f0,works,slack")
        self.assertTrue(lines[1].startswith("3,2,"))
        (_, out, _) = run(["oracle", "--m", "3", "--n", "2",
                           "--format", "text"])
        self.assertIn("min f", out.splitlines()[0])

    def test_scan(self) -> None:
        (code, out, _) = run(["scan", "--m-from", "3", "--m-to", "7",
                              "--format", "csv"])
        self.assertEqual(code, ExitCode.OK)
        lines = out.splitlines()
        self.assertEqual(len(lines), 4)
        self.assertTrue(lines[1].startswith("3,2,"))

    def test_bmn(self) -> None:
        (code, out, _) = run(["bmn", "--m", "4", "--n", "3"])
        self.assertEqual(code, ExitCode.OK)
        document = json.loads(out)
        self.assertEqual(document["basis"], "m_even_n_odd")
        self.assertEqual(document["expected"], "0/1")

    def test_bmn_tables_carry_the_known_value(self) -> None:
        (code, out, _) = run(["bmn", "--m", "4", "--n", "3",
                              "--format", "csv"])
        self.assertEqual(code, ExitCode.OK)
        (head, row) = list(csv.reader(io.StringIO(out)))
        self.assertEqual(head, ["m", "n", "basis", "description", "f0",
                                "expected", "condition_2_expected", "min",
                                "argmin", "works"])
        self.assertEqual(row[:3], ["4", "3", "m_even_n_odd"])
        self.assertEqual(row[4:7], ["2/5", "0/1", "False"])
        self.assertEqual(row[9], "False")
        (_, out, _) = run(["bmn", "--m", "4", "--n", "3",
                           "--format", "text"])
        self.assertIn("known B_mn", out.splitlines()[0])
        self.assertIn("m even, n odd", out)

    def test_constants(self) -> None:
        (code, out, _) = run(["constants"])
        self.assertEqual(code, ExitCode.OK)
        document = json.loads(out)
        self.assertTrue(document["all_pass"])
        self.assertEqual(document["tolerances"], "paper")
        (code, out, _) = run(["constants", "--paper-tolerances", "off"])
        self.assertEqual(code, ExitCode.NOT_PROVED)
        self.assertFalse(json.loads(out)["all_pass"])


class TestConfig(CliTestCase):
    def test_parse(self) -> None:
        values = parse_config_text("# pair\nm = 81\nmax-depth=30  # deeper\n"
                                   "\nformat = csv\n")
        self.assertEqual(values, {"m": "81", "max_depth": "30",
                                  "format": "csv"})

    def test_parse_errors(self) -> None:
        with self.assertRaises(UsageError):
            parse_config_text("m 81\n")
        with self.assertLogs("trigmin.cli.settings", level="WARNING"):
            self.assertEqual(parse_config_text("colour = blue\n"), {})

    def test_flags_win_over_file(self) -> None:
        config = build_run_config("oracle", {"m": "3", "n": None},
                                  {"m": "4", "n": "2", "format": "text"})
        self.assertEqual((config.m, config.n), (3, 2))
        self.assertIs(config.format, OutputFormat.TEXT)
        self.assertIs(config.command, Command.ORACLE)
        self.assertIs(config.tolerance_mode, ToleranceMode.PAPER)

    def test_validation(self) -> None:
        with self.assertRaises(UsageError):
            build_run_config("oracle", {"m": "3", "n": "2",
                                        "paper_tolerances": "maybe"})
        with self.assertRaises(UsageError):
            build_run_config("oracle", {"m": "3", "n": "2",
                                        "loglevel": "chatty"})
        config = build_run_config("verify", {"batch": True,
                                             "paper_tolerances": "off"})
        self.assertTrue(config.batch)
        self.assertIs(config.tolerance_mode, ToleranceMode.STRICT)

    def test_default_config_file(self) -> None:
        settings_dir = get_settings_directory()
        self.assertEqual(settings_dir.parent, self.directory)
        settings_dir.mkdir()
        (settings_dir / CONFIG_FILENAME).write_text("m = 3\nn = 2\n",
                                                    encoding="utf-8")
        (code, out, _) = run(["oracle", "--format", "csv"])
        self.assertEqual(code, ExitCode.OK)
        self.assertTrue(out.splitlines()[1].startswith("3,2,"))

    def test_explicit_config_file(self) -> None:
        path = Path(self.directory) / "run.conf"
        path.write_text("m = 4\nn = 3\n", encoding="utf-8")
        (code, _, _) = run(["oracle", "--config", str(path)])
        self.assertEqual(code, ExitCode.DOES_NOT_WORK)
        (code, _, _) = run(["oracle", "--config", str(path),
                            "--m", "3", "--n", "2"])
        self.assertEqual(code, ExitCode.OK)


class TestThreads(unittest.TestCase):
    def test_cap(self) -> None:
        self.assertEqual(resolve_pool_size({"TRIGMIN_THREADS": "1"}), 1)
        self.assertGreaterEqual(resolve_pool_size({}), 1)
        self.assertLessEqual(resolve_pool_size({"TRIGMIN_THREADS": "2"}), 2)

    def test_invalid_cap(self) -> None:
        for value in ("abc", "0", "-3"):
            with self.subTest(value=value):
                with self.assertRaises(UsageError):
                    resolve_pool_size({"TRIGMIN_THREADS": value})


@unittest.skipUnless(test_helpers.SLOW_TESTS, "set TRIGMIN_SLOW_TESTS=1")
class TestVerify(CliTestCase):
    def test_theorem_pair(self) -> None:
        path = self.directory / "certificate.json"
        argv = ["verify", "--m", "81", "--n", "42", "-o", str(path)]
        self.assertEqual(run(argv)[0], ExitCode.OK)
        first = path.read_bytes()
        self.assertEqual(json.loads(first)["verdict"], "condition_2_holds")
        self.assertEqual(run(argv)[0], ExitCode.OK)
        self.assertEqual(path.read_bytes(), first)


if __name__ == '__main__':
    unittest.main()
