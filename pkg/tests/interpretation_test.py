#!/usr/bin/env python3
# Copyright 2024 The checkers-workbench Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import unittest

from hypothesis import given, settings

from checkers import interpretation
from checkers import reduction
from checkers import syntax
from checkers.interpretation import Typechecker, TypeBound
from checkers.multitype import EMPTY_ENV, Arrow, Atom, check_derivation, multi
from checkers.term import Color
from tests import strategies

B, W = Color.BLACK, Color.WHITE
X = Atom('X')

parse = syntax.parse_term

OMEGA = '(\\b x. x @b x) @b (\\b x. x @b x)'


class TestInterpret(unittest.TestCase):

  def test_identity_typings(self):
    found = interpretation.interpret(parse('\\b x. x'), TypeBound(width=1, depth=1))
    types = [typing.type for typing, _ in found.typings]
    self.assertIn(Arrow(multi(X), B, X), types)
    self.assertTrue(all(typing.index == 0 for typing, _ in found.typings))
    self.assertFalse(found.truncated)

  def test_interactions_shift_the_index(self):
    t = parse('(\\b x. x) @w (\\b z. z)')
    found = interpretation.interpret(t, TypeBound(width=1, depth=1))
    self.assertEqual(1, found.evaluation.interactions)
    self.assertTrue(all(typing.index >= 1 for typing, _ in found.typings))
    for typing, d in found.typings:
      self.assertEqual(t, d.term)
      self.assertEqual(typing, d.typing())

  def test_truncation(self):
    found = interpretation.interpret(parse('\\b x. x'), TypeBound(limit=2))
    self.assertEqual(2, len(found.typings))
    self.assertTrue(found.truncated)

  def test_divergent_term_has_no_typing(self):
    with self.assertRaises(interpretation.Diverged) as raised:
      interpretation.interpret(parse(OMEGA))
    self.assertTrue(raised.exception.result.diverged())

  @settings(max_examples=200, deadline=None)
  @given(strategies.normalizing_terms())
  def test_least_index_counts_interactions(self, t):
    found = list(interpretation.enumerate_typings(t, strategies.SMALL_BOUND,
                                                  strategies.SMALL_FUEL))
    result = reduction.evaluate_head(t, strategies.SMALL_FUEL, detect_cycles=True)
    self.assertTrue(found)
    self.assertEqual(result.interactions, min(typing.index for typing, _ in found))

  @settings(max_examples=200, deadline=None)
  @given(strategies.typed_terms())
  def test_enumerated_derivations_are_sound(self, typed):
    t, d = typed
    self.assertTrue(check_derivation(d))
    self.assertTrue(interpretation.check_soundness(t, d, strategies.SMALL_FUEL).holds())


class TestTypechecker(unittest.TestCase):

  def test_least_index(self):
    t = parse('(\\b x. x) @w (\\b z. z)')
    checker = Typechecker()
    self.assertEqual(1, checker.min_index(t, EMPTY_ENV, Arrow(multi(X), B, X)))
    d = checker.min_derivation(t, EMPTY_ENV, Arrow(multi(X), B, X))
    self.assertTrue(check_derivation(d))
    self.assertEqual(t, d.term)

  def test_wrong_color_is_not_typable(self):
    t = parse('(\\b x. x) @w (\\b z. z)')
    self.assertIsNone(Typechecker().min_index(t, EMPTY_ENV, Arrow(multi(X), W, X)))

  def test_divergence_is_not_typable(self):
    checker = Typechecker(fuel=500)
    self.assertIsNone(checker.min_index(parse(OMEGA), EMPTY_ENV, X))
    self.assertFalse(checker.inconclusive)

  def test_fuel_makes_the_answer_inconclusive(self):
    checker = Typechecker(fuel=50, detect_cycles=False)
    self.assertIsNone(checker.min_index(parse(OMEGA), EMPTY_ENV, X))
    self.assertTrue(checker.inconclusive)


class TestSoundness(unittest.TestCase):

  def test_fewer_interactions_than_index(self):
    t = parse('(\\b x. x) @w (\\b z. z)')
    d = Typechecker().min_derivation(t, EMPTY_ENV, Arrow(multi(X), B, X))
    found = interpretation.check_soundness(t, d)
    self.assertTrue(found.holds())
    self.assertEqual({'interactions': 1, 'index': 1}, found.witness)


if __name__ == '__main__':
  unittest.main()
