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

import dataclasses
import unittest

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from checkers import whitening
from checkers.multitype import EMPTY, Arrow, Atom, TypeEnv, multi, singleton_env
from checkers.term import Color
from checkers.whitening import Pair, Polarity, WRule, check_whitening, decide_whitening
from tests import strategies

B, W = Color.BLACK, Color.WHITE
POS, NEG = Polarity.POS, Polarity.NEG
X = Atom('X')


def _arrow(color, *args, result=X):
  return Arrow(multi(*args), color, result)


class TestDecide(unittest.TestCase):

  def test_single_positive_whitening(self):
    w = decide_whitening(POS, _arrow(W), _arrow(B))
    self.assertEqual(1, w.count)
    self.assertEqual(WRule.WHITEN, w.rule)
    self.assertTrue(check_whitening(w))

  def test_no_negative_whitening_at_the_top(self):
    self.assertIsNone(decide_whitening(NEG, _arrow(W), _arrow(B)))

  def test_cannot_blacken(self):
    self.assertIsNone(decide_whitening(POS, _arrow(B), _arrow(W)))

  def test_argument_flips_polarity(self):
    lhs = _arrow(B, _arrow(W))
    rhs = _arrow(B, _arrow(B))
    self.assertIsNone(decide_whitening(POS, lhs, rhs))
    self.assertEqual(1, decide_whitening(NEG, lhs, rhs).count)

  def test_doubly_nested_argument_is_positive(self):
    lhs = _arrow(B, _arrow(B, _arrow(W)))
    rhs = _arrow(B, _arrow(B, _arrow(B)))
    self.assertEqual(1, whitening.whitening_count(POS, lhs, rhs))

  def test_pair_flips_the_environment(self):
    arrow = _arrow(W)
    lhs = Pair(singleton_env('x', arrow), arrow)
    rhs = Pair(singleton_env('x', arrow), _arrow(B))
    w = decide_whitening(POS, lhs, rhs)
    self.assertEqual(1, w.count)
    self.assertTrue(check_whitening(w))

  def test_environment_is_contravariant(self):
    lhs = Pair(singleton_env('x', _arrow(W)), X)
    rhs = Pair(singleton_env('x', _arrow(B)), X)
    self.assertIsNone(decide_whitening(POS, lhs, rhs))
    self.assertEqual(1, whitening.whitening_count(NEG, lhs, rhs))

  def test_multisets_pair_up_elements(self):
    lhs = multi(_arrow(W), _arrow(B))
    rhs = multi(_arrow(B), _arrow(B))
    self.assertEqual(1, whitening.whitening_count(POS, lhs, rhs))
    self.assertIsNone(decide_whitening(POS, multi(_arrow(W)), multi(_arrow(B), X)))

  def test_supports_must_agree(self):
    self.assertIsNone(decide_whitening(POS, singleton_env('x', X), singleton_env('y', X)))

  def test_atoms_are_never_whitened(self):
    self.assertIsNone(decide_whitening(POS, X, Atom('Y')))

  @settings(max_examples=200, deadline=None)
  @given(strategies.linear_types(), st.sampled_from(Polarity))
  def test_zero_whitening_is_equality(self, ltype, pol):
    w = decide_whitening(pol, ltype, ltype)
    self.assertEqual(0, w.count)
    self.assertTrue(check_whitening(w))

  @settings(max_examples=200, deadline=None)
  @given(strategies.linear_types(), strategies.linear_types())
  def test_zero_count_means_equal(self, lhs, rhs):
    w = decide_whitening(POS, lhs, rhs)
    assume(w is not None and w.count == 0)
    self.assertEqual(lhs, rhs)


class TestCheck(unittest.TestCase):

  def test_count_must_add_up(self):
    w = decide_whitening(POS, _arrow(W), _arrow(B))
    bad = dataclasses.replace(w, count=0)
    self.assertEqual(((), 'count does not add up'), whitening.find_whitening_error(bad))

  def test_negative_whiten_rule_is_rejected(self):
    w = decide_whitening(POS, _arrow(W), _arrow(B))
    bad = dataclasses.replace(w, polarity=NEG)
    self.assertFalse(check_whitening(bad))


class TestVariants(unittest.TestCase):

  def test_variants_of_a_black_arrow(self):
    found = whitening.whiter_variants(_arrow(B))
    self.assertEqual([(_arrow(B), 0), (_arrow(W), 1)], found)

  @settings(max_examples=200, deadline=None)
  @given(strategies.linear_types(), st.sampled_from(Polarity))
  def test_variants_are_decided(self, ltype, pol):
    for variant, count in whitening.whiter_variants(ltype, pol):
      w = decide_whitening(pol, variant, ltype)
      self.assertIsNotNone(w)
      self.assertEqual(count, w.count)


class TestCompose(unittest.TestCase):

  def test_two_steps(self):
    top = _arrow(B, result=_arrow(B))
    middle = _arrow(B, result=_arrow(W))
    bottom = _arrow(W, result=_arrow(W))
    w1 = decide_whitening(POS, bottom, middle)
    w2 = decide_whitening(POS, middle, top)
    composed = whitening.compose_whitening(w1, w2)
    self.assertEqual(2, composed.count)
    self.assertEqual((bottom, top), (composed.lhs, composed.rhs))

  def test_identity(self):
    w = decide_whitening(POS, _arrow(W), _arrow(B))
    zero = decide_whitening(POS, _arrow(W), _arrow(W))
    self.assertEqual(w, whitening.compose_whitening(zero, w))

  def test_middle_must_agree(self):
    w = decide_whitening(POS, _arrow(W), _arrow(B))
    with self.assertRaises(whitening.Mismatch):
      whitening.compose_whitening(w, w)

  @settings(max_examples=150, deadline=None)
  @given(strategies.linear_types(), st.data())
  def test_chains_recheck(self, ltype, data):
    chain = [ltype]
    for _ in range(3):
      variant, _ = data.draw(st.sampled_from(whitening.whiter_variants(chain[-1])))
      chain.append(variant)
    composed = decide_whitening(POS, chain[1], chain[0])
    for lower, upper in zip(chain[2:], chain[1:]):
      composed = whitening.compose_whitening(decide_whitening(POS, lower, upper), composed)
    self.assertTrue(check_whitening(composed))
    self.assertEqual((chain[-1], chain[0]), (composed.lhs, composed.rhs))


class TestInversion(unittest.TestCase):

  def test_inverts_to_an_arrow(self):
    env_lhs = TypeEnv((('x', multi(_arrow(W))), ('y', multi(X))))
    env_rhs = TypeEnv((('x', multi(_arrow(W))), ('y', multi(X))))
    w = decide_whitening(POS, Pair(env_lhs, _arrow(W)), Pair(env_rhs, _arrow(B)))
    inverted = whitening.invert_pair(w, 'x', B)
    self.assertEqual(w.count, inverted.count)
    self.assertEqual(Pair(singleton_env('y', X), _arrow(B, _arrow(W), result=_arrow(W))),
                     inverted.lhs)
    self.assertEqual(w, whitening.revert_pair(inverted, 'x'))

  def test_revert_needs_a_free_name(self):
    arrow = _arrow(B, X)
    w = decide_whitening(POS, Pair(singleton_env('x', X), arrow), Pair(singleton_env('x', X),
                                                                        arrow))
    with self.assertRaises(whitening.Mismatch):
      whitening.revert_pair(w, 'x')

  @settings(max_examples=100, deadline=None)
  @given(strategies.envs(), strategies.linear_types(), st.data())
  def test_round_trip(self, env, ltype, data):
    pair = Pair(env, ltype)
    lhs, _ = data.draw(st.sampled_from(whitening.whiter_variants(pair)))
    w = decide_whitening(POS, lhs, pair)
    name = data.draw(st.sampled_from(strategies.NAMES))
    color = data.draw(strategies.colors)
    self.assertEqual(w, whitening.revert_pair(whitening.invert_pair(w, name, color), name))


class TestCommute(unittest.TestCase):

  def test_square_closes(self):
    rhs = _arrow(B, _arrow(B), result=_arrow(B))
    w_neg = decide_whitening(NEG, _arrow(B, _arrow(W), result=_arrow(B)), rhs)
    w_pos = decide_whitening(POS, _arrow(B, _arrow(B), result=_arrow(W)), rhs)
    corner, to_neg, to_pos = whitening.commute(w_neg, w_pos)
    self.assertEqual(_arrow(B, _arrow(W), result=_arrow(W)), corner)
    self.assertTrue(check_whitening(to_neg) and check_whitening(to_pos))

  @settings(max_examples=200, deadline=None)
  @given(strategies.linear_types(), st.data())
  def test_square_closes_for_single_changes(self, ltype, data):
    negatives = whitening.single_whitenings(ltype, NEG)
    positives = whitening.single_whitenings(ltype, POS)
    assume(negatives and positives)
    w_neg = decide_whitening(NEG, data.draw(st.sampled_from(negatives)), ltype)
    w_pos = decide_whitening(POS, data.draw(st.sampled_from(positives)), ltype)
    _, to_neg, to_pos = whitening.commute(w_neg, w_pos)
    self.assertEqual((1, 1), (to_neg.count, to_pos.count))


if __name__ == '__main__':
  unittest.main()
