import os
import unittest
from unittest import mock

from pathdepth.exceptions import ImproperlyConfigured
from pathdepth.settings import CACHE_ENV
from pathdepth.settings import EngineSettings
from pathdepth.settings import cache_location


class TestEngineSettings(unittest.TestCase):
    def test_defaults(self):
        settings = EngineSettings()
        self.assertEqual(22, settings.max_gens)
        self.assertEqual(200_000, settings.max_lattice)
        self.assertEqual(20, settings.max_vertices)
        self.assertEqual(2_000_000, settings.max_poset)
        self.assertEqual(60.0, settings.timeout_secs)
        self.assertEqual("QQ", settings.field)
        self.assertEqual("cpsat", settings.solver)
        self.assertTrue(settings.reconfirm)
        self.assertFalse(settings.paranoid)

    def test_from_options_skips_none(self):
        settings = EngineSettings.from_options(max_poset=500, field="GF2", timeout_secs=None)
        self.assertEqual(500, settings.max_poset)
        self.assertEqual("GF2", settings.field)
        self.assertEqual(60.0, settings.timeout_secs)

    def test_unknown_setting(self):
        with self.assertRaisesRegex(ImproperlyConfigured, "Unknown setting"):
            EngineSettings.from_options(max_posets=5)

    def test_invalid_values(self):
        for options in ({"field": "ZZ"}, {"solver": "dlx"}, {"max_gens": 0}, {"max_poset": 1.5}, {"timeout_secs": 0}):
            with self.subTest(options=options), self.assertRaises(ImproperlyConfigured):
                EngineSettings.from_options(**options)

    def test_fingerprint_ignores_paranoid(self):
        self.assertEqual(EngineSettings().fingerprint(), EngineSettings(paranoid=True).fingerprint())
        self.assertNotEqual(EngineSettings().fingerprint(), EngineSettings(field="GF2").fingerprint())
        self.assertIn("paranoid", EngineSettings().to_dict())


class TestCacheLocation(unittest.TestCase):
    def test_flag_wins(self):
        with mock.patch.dict(os.environ, {CACHE_ENV: "memory://from-env"}):
            self.assertEqual("memory://flag", cache_location("memory://flag"))
            self.assertEqual("memory://from-env", cache_location())

    def test_unset(self):
        with mock.patch.dict(os.environ, {CACHE_ENV: ""}):
            self.assertIsNone(cache_location())
