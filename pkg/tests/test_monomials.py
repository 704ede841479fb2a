import itertools
import random
import unittest

from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from pathdepth.exceptions import ExponentOverflowError
from pathdepth.exceptions import MalformedInputError
from pathdepth.exceptions import ParameterError
from pathdepth.exceptions import ResourceLimitError
from pathdepth.families import path_ideal
from pathdepth.monomials import add
from pathdepth.monomials import box
from pathdepth.monomials import colon
from pathdepth.monomials import contains
from pathdepth.monomials import exponent_vector
from pathdepth.monomials import extend_ring
from pathdepth.monomials import format_monomial
from pathdepth.monomials import intersect
from pathdepth.monomials import is_subset
from pathdepth.monomials import lcm_lattice
from pathdepth.monomials import minimalize
from pathdepth.monomials import mul
from pathdepth.monomials import multiply
from pathdepth.monomials import power
from pathdepth.monomials import principal
from pathdepth.monomials import scale
from pathdepth.monomials import unit_ideal
from pathdepth.monomials import variables_ideal
from pathdepth.monomials import zero_ideal

N = 3
exponents = st.tuples(*[st.integers(0, 2)] * N)
ideals = st.lists(exponents, min_size=1, max_size=4).map(lambda gens: minimalize(gens, N))


class TestMinimalize(unittest.TestCase):
    def test_drops_multiples(self):
        self.assertEqual(((1, 1),), minimalize([(1, 1), (1, 2)], 2).gens)

    def test_empty_is_zero_ideal(self):
        ideal = minimalize([], 4)
        self.assertTrue(ideal.is_zero)
        self.assertEqual("(0)", str(ideal))

    def test_pairwise_products_of_path_ideal(self):
        gens = path_ideal(3, 2).gens
        products = [mul(a, b) for a in gens for b in gens]
        self.assertEqual(((0, 2, 2), (1, 2, 1), (2, 2, 0)), minimalize(products, 3).gens)

    def test_length_mismatch(self):
        with self.assertRaises(MalformedInputError):
            minimalize([(1, 0)], 3)

    def test_unit_ideal(self):
        ideal = minimalize([(0, 0), (1, 2)], 2)
        self.assertEqual(unit_ideal(2), ideal)
        self.assertTrue(ideal.is_unit)
        self.assertFalse(ideal.is_proper_nonzero)

    @given(st.lists(exponents, max_size=6), st.randoms())
    def test_idempotent_and_order_insensitive(self, gens, rnd):
        ideal = minimalize(gens, N)
        self.assertEqual(ideal, minimalize(ideal.gens, N))
        shuffled = list(gens)
        rnd.shuffle(shuffled)
        self.assertEqual(ideal, minimalize(shuffled, N))
        for a, b in itertools.permutations(ideal.gens, 2):
            self.assertFalse(all(x <= y for x, y in zip(a, b)))
        self.assertEqual(sorted(ideal.gens), list(ideal.gens))


class TestExponentVectors(unittest.TestCase):
    def test_negative(self):
        with self.assertRaises(MalformedInputError):
            exponent_vector([1, -1])

    def test_overflow(self):
        with self.assertRaises(ExponentOverflowError):
            exponent_vector([2**31])
        with self.assertRaises(ExponentOverflowError):
            mul((2**30,), (2**30,))

    def test_format(self):
        self.assertEqual("x1^2*x3", format_monomial((2, 0, 1)))
        self.assertEqual("1", format_monomial((0, 0)))

    def test_box_is_lex_ordered(self):
        self.assertEqual([(0, 0), (0, 1), (1, 0), (1, 1)], list(box((1, 1))))
        self.assertEqual([(1, 1), (1, 2)], list(box((1, 2), (1, 1))))


class TestContains(unittest.TestCase):
    def test_path_ideal(self):
        ideal = path_ideal(3, 2)
        self.assertFalse(contains(ideal, (1, 0, 1)))
        self.assertTrue(contains(ideal, (1, 1, 1)))
        self.assertIn((1, 1, 1), ideal)

    def test_zero_ideal(self):
        self.assertFalse(contains(zero_ideal(2), (5, 5)))

    def test_length_mismatch(self):
        with self.assertRaises(MalformedInputError):
            contains(path_ideal(3, 2), (1, 1))

    @given(ideals, st.integers(1, 3), st.data())
    def test_power_contains_products_of_generators(self, ideal, t, data):
        picks = data.draw(st.lists(st.sampled_from(ideal.gens), min_size=t, max_size=t))
        product = picks[0]
        for g in picks[1:]:
            product = mul(product, g)
        self.assertTrue(contains(power(ideal, t), product))


class TestOperations(unittest.TestCase):
    def test_power(self):
        self.assertEqual(((2, 2, 2),), power(principal((1, 1, 1)), 2).gens)
        self.assertEqual(path_ideal(3, 2), power(path_ideal(3, 2), 1))
        self.assertEqual(((0, 2, 2), (1, 2, 1), (2, 2, 0)), power(path_ideal(3, 2), 2).gens)

    def test_power_zero_rejected(self):
        with self.assertRaises(ParameterError):
            power(path_ideal(3, 2), 0)

    def test_colon(self):
        self.assertEqual(path_ideal(3, 2), colon(power(path_ideal(3, 2), 2), (0, 1, 1)))
        self.assertEqual(path_ideal(3, 2), colon(path_ideal(3, 2), (0, 0, 0)))
        self.assertEqual(
            ((0, 0, 2, 1), (0, 1, 2, 0), (1, 1, 1, 0), (2, 2, 0, 0)),
            colon(power(path_ideal(4, 2), 2), (0, 0, 0, 1)).gens,
        )

    def test_add(self):
        self.assertEqual(((0, 0, 1), (1, 1, 0)), add(path_ideal(3, 2), principal((0, 0, 1))).gens)

    def test_intersect(self):
        left = variables_ideal([1, 3], 4)
        right = variables_ideal([2, 4], 4)
        self.assertEqual(
            ((0, 0, 1, 1), (0, 1, 1, 0), (1, 0, 0, 1), (1, 1, 0, 0)),
            intersect(left, right).gens,
        )
        self.assertEqual(left, intersect(left, left))

    def test_ring_mismatch(self):
        with self.assertRaises(MalformedInputError):
            add(path_ideal(3, 2), path_ideal(4, 2))

    def test_extend_ring(self):
        ext = extend_ring(path_ideal(3, 2), 2)
        self.assertEqual(5, ext.n)
        self.assertEqual(((0, 1, 1, 0, 0), (1, 1, 0, 0, 0)), ext.gens)

    def test_scale(self):
        self.assertEqual(path_ideal(3, 2), scale(variables_ideal([1, 3], 3), (0, 1, 0)))

    @given(ideals, exponents, exponents)
    def test_colon_composes(self, ideal, u, v):
        self.assertEqual(colon(colon(ideal, u), v), colon(ideal, mul(u, v)))

    @given(ideals, exponents)
    def test_scaled_colon_is_inside(self, ideal, u):
        scaled = scale(colon(ideal, u), u)
        self.assertTrue(is_subset(scaled, ideal))
        if scaled == ideal:
            self.assertEqual(ideal.gens, tuple(sorted(mul(g, u) for g in colon(ideal, u).gens)))

    @given(ideals, ideals, ideals)
    def test_lattice_laws(self, a, b, c):
        self.assertEqual(add(a, b), add(b, a))
        self.assertEqual(intersect(a, b), intersect(b, a))
        self.assertEqual(add(add(a, b), c), add(a, add(b, c)))
        self.assertEqual(intersect(intersect(a, b), c), intersect(a, intersect(b, c)))
        self.assertEqual(a, add(a, intersect(a, b)))
        self.assertTrue(is_subset(multiply(a, b), intersect(a, b)))

    @settings(max_examples=50)
    @given(ideals, ideals)
    def test_intersection_membership(self, a, b):
        rnd = random.Random(len(a.gens) * 31 + len(b.gens))
        for _ in range(20):
            u = tuple(rnd.randint(0, 3) for _ in range(N))
            self.assertEqual(contains(intersect(a, b), u), contains(a, u) and contains(b, u))
            self.assertEqual(contains(add(a, b), u), contains(a, u) or contains(b, u))


class TestLcmLattice(unittest.TestCase):
    def test_path_ideal(self):
        self.assertEqual({(1, 1, 0), (0, 1, 1), (1, 1, 1)}, lcm_lattice(path_ideal(3, 2)))

    def test_principal(self):
        self.assertEqual({(2, 0, 1)}, lcm_lattice(principal((2, 0, 1))))

    def test_joins_are_deduplicated(self):
        # x1x2 ∨ x3x4 is also the join of all three generators
        self.assertEqual(6, len(lcm_lattice(path_ideal(4, 2))))

    def test_caps(self):
        with self.assertRaises(ResourceLimitError) as cm:
            lcm_lattice(path_ideal(3, 2), max_gens=1)
        self.assertEqual("max_gens", cm.exception.cap_name)
        with self.assertRaises(ResourceLimitError) as cm:
            lcm_lattice(path_ideal(4, 2), max_lattice=4)
        self.assertEqual("max_lattice", cm.exception.cap_name)

    @settings(max_examples=30)
    @given(ideals)
    def test_matches_subset_enumeration(self, ideal):
        expected = set()
        for size in range(1, len(ideal.gens) + 1):
            for subset in itertools.combinations(ideal.gens, size):
                expected.add(tuple(max(col) for col in zip(*subset)))
        self.assertEqual(expected, lcm_lattice(ideal))
