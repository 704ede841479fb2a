import unittest
from math import comb

from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from pathdepth import families
from pathdepth.betti import betti_table
from pathdepth.betti import depth_ideal
from pathdepth.betti import depth_quotient
from pathdepth.betti import pd_quotient
from pathdepth.betti import upper_koszul
from pathdepth.exceptions import DomainError
from pathdepth.exceptions import MalformedInputError
from pathdepth.monomials import colon
from pathdepth.monomials import extend_ring
from pathdepth.monomials import minimalize
from pathdepth.monomials import power
from pathdepth.monomials import principal
from pathdepth.monomials import unit_ideal
from pathdepth.monomials import variables_ideal
from pathdepth.monomials import zero_ideal
from pathdepth.settings import EngineSettings

GF2 = EngineSettings(field="GF2")

small_ideals = (
    st.lists(st.tuples(*[st.integers(0, 2)] * 3), min_size=1, max_size=4)
    .map(lambda gens: minimalize(gens, 3))
    .filter(lambda ideal: ideal.is_proper_nonzero)
)


class TestUpperKoszul(unittest.TestCase):
    def test_path_ideal(self):
        complex_ = upper_koszul(families.path_ideal(3, 2), (1, 1, 1))
        self.assertEqual({(), (1,), (3,)}, set(complex_.faces))

    def test_outside_ideal_is_void(self):
        self.assertTrue(upper_koszul(families.path_ideal(3, 2), (1, 0, 1)).is_void)

    def test_principal(self):
        self.assertEqual({()}, set(upper_koszul(principal((1, 1, 1)), (1, 1, 1)).faces))
        self.assertEqual({()}, set(upper_koszul(unit_ideal(2), (0, 0)).faces))

    def test_length_mismatch(self):
        with self.assertRaises(MalformedInputError):
            upper_koszul(families.path_ideal(3, 2), (1, 1))


class TestBettiTable(unittest.TestCase):
    def test_path_ideal(self):
        table = betti_table(families.path_ideal(3, 2))
        self.assertEqual({0: 1, 1: 2, 2: 1}, table.totals())
        self.assertEqual(
            [(1, (0, 1, 1), 1), (1, (1, 1, 0), 1), (2, (1, 1, 1), 1)],
            table.rows(),
        )
        self.assertEqual(2, table.pd)
        self.assertEqual(1, table.depth)

    def test_koszul_complex(self):
        table = betti_table(variables_ideal(range(1, 5), 4))
        self.assertEqual({i: comb(4, i) for i in range(5)}, table.totals())

    def test_text_and_json(self):
        table = betti_table(families.path_ideal(3, 2))
        text = table.to_text()
        self.assertIn("beta_2 x1*x2*x3 = 1", text)
        self.assertTrue(text.rstrip().endswith("totals: 0:1 1:2 2:1"))
        data = table.to_dict()
        self.assertEqual(2, data["pd"])
        self.assertEqual("S/I", data["convention"])
        self.assertEqual({"i": 2, "degree": [1, 1, 1], "rank": 1}, data["rows"][-1])

    def test_unit_ideal(self):
        with self.assertRaises(DomainError):
            betti_table(unit_ideal(3))

    def test_gf2_agrees(self):
        for ideal in (families.path_power(4, 2, 2), families.u_ideal(2, 2), power(variables_ideal([1, 2, 3], 3), 2)):
            with self.subTest(ideal=str(ideal)):
                self.assertEqual(betti_table(ideal).entries, betti_table(ideal, GF2).entries)


class TestDepth(unittest.TestCase):
    def test_small_values(self):
        self.assertEqual(1, depth_quotient(families.path_ideal(3, 2)))
        self.assertEqual(0, depth_quotient(power(variables_ideal([1, 2, 3], 3), 2)))
        self.assertEqual(1, depth_quotient(families.u_ideal(2, 2)))
        self.assertEqual(3, pd_quotient(variables_ideal([1, 2, 3], 3)))

    def test_depth_ideal(self):
        self.assertEqual(2, depth_ideal(families.path_ideal(3, 2)))
        self.assertEqual(3, depth_ideal(principal((1, 1, 1))))
        self.assertEqual(1, depth_ideal(variables_ideal([1, 2, 3], 3)))

    def test_zero_and_unit_rejected(self):
        for ideal in (zero_ideal(3), unit_ideal(3)):
            with self.subTest(ideal=str(ideal)):
                with self.assertRaises(DomainError):
                    depth_quotient(ideal)
                with self.assertRaises(DomainError):
                    depth_ideal(ideal)

    def test_closed_form(self):
        for n in range(1, 9):
            for m in range(1, n + 1):
                for t in range(1, 5):
                    ideal = families.path_power(n, m, t)
                    if len(ideal) > 22:
                        continue
                    with self.subTest(n=n, m=m, t=t):
                        table = betti_table(ideal)
                        self.assertEqual(families.phi(n, m, t).value, table.depth)
                        self.assertEqual(families.pd_formula(n, m, t), table.pd)

    def test_first_powers(self):
        for n in range(1, 11):
            for m in range(1, n + 1):
                low, high = (n + 1) // (m + 1), -(-(n + 1) // (m + 1))
                expected = n + 1 - low - high
                with self.subTest(n=n, m=m):
                    self.assertEqual(expected, depth_quotient(families.path_ideal(n, m)))

    def test_extra_variable_adds_one(self):
        for ideal in (families.path_ideal(4, 2), families.u_ideal(2, 2), families.path_power(3, 2, 2)):
            with self.subTest(ideal=str(ideal)):
                self.assertEqual(depth_quotient(ideal) + 1, depth_quotient(extend_ring(ideal, 1)))

    @settings(max_examples=50, deadline=None)
    @given(small_ideals)
    def test_extra_variable_adds_one_on_random_ideals(self, ideal):
        self.assertEqual(depth_quotient(ideal) + 1, depth_quotient(extend_ring(ideal, 1)))

    def test_colon_does_not_lower_depth(self):
        ideal = families.path_power(4, 2, 2)
        for u in ((0, 0, 0, 1), (0, 0, 1, 1), (0, 1, 0, 0)):
            with self.subTest(u=u):
                self.assertGreaterEqual(depth_quotient(colon(ideal, u)), depth_quotient(ideal))
