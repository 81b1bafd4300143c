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

from hypothesis import assume, given, settings, strategies as st

from checkers import bohm
from checkers import preorders
from checkers import reduction
from checkers import syntax
from checkers import verdict
from checkers.config import RunConfig
from checkers.interpretation import TypeBound
from checkers.term import Color, paint, plug
from tests import strategies

parse = syntax.parse_term

ETA_I = parse('\\x. \\y. x y')
SMALL = RunConfig(fuel=2000, depth=4, bound=TypeBound(width=1, depth=2, limit=16),
                  max_contexts=120)


class TestPwc(unittest.TestCase):

  def test_eta_expansion_is_not_improved_by_the_identity(self):
    found = preorders.pwc_check(bohm.I, ETA_I, SMALL.bound, SMALL.fuel)
    self.assertTrue(found.fails())
    self.assertEqual(0, found.witness['typing'].index)

  def test_reflexive(self):
    found = preorders.pwc_check(bohm.K, bohm.K, SMALL.bound, SMALL.fuel)
    self.assertTrue(found.holds())
    self.assertTrue(found.bounded)
    for match in found.witness['matches']:
      self.assertEqual(0, match.delta)
      self.assertEqual(match.lhs, match.rhs)

  def test_divergent_left_side_holds(self):
    self.assertTrue(preorders.pwc_check(bohm.OMEGA, parse('x'), SMALL.bound, SMALL.fuel).holds())

  def test_colored_identities(self):
    black, white = parse('\\b x. x'), parse('\\w x. x')
    self.assertTrue(preorders.pwc_check_colored(black, white, SMALL.bound, SMALL.fuel).fails())
    self.assertTrue(preorders.pwc_check_colored(white, black, SMALL.bound, SMALL.fuel).fails())


class TestContexts(unittest.TestCase):

  def test_white_contexts_start_with_the_hole(self):
    first = next(preorders.white_contexts(bohm.I, bohm.K))
    self.assertEqual(parse('\\b x. x'), plug(first, parse('\\b x. x')))

  def test_white_contexts_are_white(self):
    for c in list(preorders.white_contexts(parse('x'), parse('y'), 2))[:50]:
      t = plug(c, paint(Color.BLACK, parse('z')))
      self.assertNotIn('@b', syntax.print_term(t))

  def test_separates_a_variable_from_its_expansion(self):
    found = preorders.interaction_improvement_check(parse('x'), parse('\\y. x y'),
                                                    SMALL.depth, SMALL.fuel)
    self.assertTrue(found.fails())
    self.assertEqual('bohm-out', found.reason)

  def test_colored_identities(self):
    black, white = parse('\\b x. x'), parse('\\w x. x')
    for lhs, rhs in ((black, white), (white, black)):
      found = preorders.interaction_improvement_check_colored(lhs, rhs, SMALL.fuel,
                                                              max_contexts=SMALL.max_contexts)
      self.assertTrue(found.fails())
      sep = found.witness
      self.assertEqual(sep.lhs_count,
                       reduction.evaluate_head(plug(sep.context, lhs)).interactions)
      self.assertLess(sep.lhs_count, sep.rhs_count)

  def test_divergent_right_side(self):
    found = preorders.interaction_improvement_check(parse('x'), bohm.OMEGA, SMALL.depth,
                                                    SMALL.fuel, max_contexts=10)
    self.assertTrue(found.fails())
    self.assertIsNone(found.witness.rhs_count)


class TestBohmOut(unittest.TestCase):

  def test_identity_and_its_expansion(self):
    sep = preorders.bohm_out_separator(bohm.I, ETA_I)
    self.assertEqual((1, 2), (sep.lhs_count, sep.rhs_count))
    lhs = reduction.evaluate_head(plug(sep.context, paint(Color.BLACK, bohm.I)))
    rhs = reduction.evaluate_head(plug(sep.context, paint(Color.BLACK, ETA_I)))
    self.assertEqual((1, 2), (lhs.interactions, rhs.interactions))

  def test_no_gap(self):
    with self.assertRaises(preorders.PreconditionFailed):
      preorders.bohm_out_separator(bohm.I, bohm.K)

  def test_reversed_eta(self):
    with self.assertRaises(preorders.PreconditionFailed):
      preorders.find_eta_gap(ETA_I, bohm.I)

  def test_gap_below_a_free_head(self):
    gap = preorders.find_eta_gap(parse('f (\\x. x)'), parse('f (\\x. \\y. x y)'))
    self.assertEqual((0,), gap.path)
    sep = preorders.bohm_out_separator(parse('f (\\x. x)'), parse('f (\\x. \\y. x y)'))
    self.assertLess(sep.lhs_count, sep.rhs_count)

  def test_j_is_separated_from_the_identity(self):
    sep = preorders.bohm_out_separator(bohm.I, bohm.j_unfold(2), depth=4)
    self.assertLess(sep.lhs_count, sep.rhs_count)


class TestMainTheorem(unittest.TestCase):

  def _assert_consistent(self, t, u):
    check = preorders.crosscheck_main_theorem(t, u, SMALL)
    self.assertEqual([], check.disagreements())
    return check.verdicts

  def test_eta_gap(self):
    found = self._assert_consistent(bohm.I, ETA_I)
    self.assertEqual({'fails'}, {v.tag.value for v in found.values()})

  def test_eta_expansion(self):
    found = self._assert_consistent(ETA_I, bohm.I)
    self.assertTrue(found[preorders.BOHM_ETA].holds())
    self.assertFalse(found[preorders.PWC].fails())
    self.assertFalse(found[preorders.CTX_IMP].fails())

  def test_omega_is_least(self):
    found = self._assert_consistent(bohm.OMEGA, parse('x'))
    self.assertTrue(all(v.holds() for v in found.values()))

  def test_bounded_pwc_does_not_contradict(self):
    t, u = parse('f (\\x. x (\\y. y))'), parse('f (\\x. x (\\y. \\z. y z))')
    check = preorders.crosscheck_main_theorem(t, u, SMALL)
    self.assertEqual([], check.disagreements())
    self.assertTrue(check.verdicts[preorders.BOHM_ETA].fails())
    pwc = check.verdicts[preorders.PWC]
    self.assertTrue(pwc.fails() or pwc.bounded, pwc.label())

  def test_only_selected_relations(self):
    check = preorders.crosscheck_main_theorem(bohm.I, bohm.K, SMALL, (preorders.BOHM_ETA,))
    self.assertEqual([preorders.BOHM_ETA], list(check.verdicts))

  def test_unknown_relation(self):
    with self.assertRaises(ValueError):
      preorders.check('bisimilar', bohm.I, bohm.I)

  def test_induced_equivalence(self):
    self.assertTrue(preorders.equivalent(preorders.BOHM_ETA, parse('\\x. x'),
                                         parse('\\y. y'), SMALL).holds())
    self.assertTrue(preorders.equivalent(preorders.BOHM_ETA, bohm.I, ETA_I, SMALL).fails())


class TestCompositionality(unittest.TestCase):

  @settings(max_examples=150, deadline=None)
  @given(strategies.terms(depth=3), strategies.contexts(depth=2), st.data())
  def test_contexts_preserve_pwc(self, t, c, data):
    paths = reduction.redex_paths(t)
    assume(paths)
    u = reduction.reduce_anywhere(t, data.draw(st.sampled_from(paths))).target
    premise = preorders.pwc_check_colored(t, u, strategies.SMALL_BOUND, strategies.SMALL_FUEL)
    assume(premise.holds())
    found = preorders.pwc_check_colored(plug(c, t), plug(c, u), strategies.SMALL_BOUND,
                                        strategies.SMALL_FUEL)
    self.assertFalse(found.fails(), found.witness)


class TestVerdicts(unittest.TestCase):

  def test_conjoin(self):
    self.assertTrue(verdict.conjoin([verdict.holds(), verdict.unknown('fuel'),
                                     verdict.fails()]).fails())
    self.assertEqual('fuel', verdict.conjoin([verdict.holds(), verdict.unknown('fuel')]).reason)
    self.assertEqual('holds(bounded)',
                     verdict.conjoin([verdict.holds(), verdict.holds(bounded=True)]).label())

  def test_contradiction_needs_two_definite_answers(self):
    self.assertTrue(verdict.contradicts(verdict.holds(), verdict.fails()))
    self.assertFalse(verdict.contradicts(verdict.holds(), verdict.unknown('depth')))
    self.assertFalse(verdict.contradicts(verdict.holds(bounded=True), verdict.holds()))

  def test_bounded_holds_may_still_fail(self):
    self.assertFalse(verdict.contradicts(verdict.holds(bounded=True), verdict.fails()))
    self.assertFalse(verdict.holds(bounded=True).conclusive())
    self.assertTrue(verdict.holds(bounded=True).definite())


if __name__ == '__main__':
  unittest.main()
