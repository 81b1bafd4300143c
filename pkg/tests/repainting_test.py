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

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from checkers import repainting
from checkers.multitype import (EMPTY, Arrow, Atom, TypeEnv, app, ax, check_derivation, many,
                                multi, singleton_env)
from checkers.term import App, Color, Var
from checkers.whitening import (Pair, Polarity, check_whitening, decide_whitening, pair_of,
                                whitening_count, whiter_variants)
from tests import strategies

B, W = Color.BLACK, Color.WHITE
POS, NEG = Polarity.POS, Polarity.NEG
X = Atom('X')


def _x_applied_to_y(fun_color):
  """x : [[X] ->fun_color X], y : [X] |- x @b y : X."""
  return app(B, ax('x', Arrow(multi(X), fun_color, X)), many(Var('y'), [ax('y', X)]))


class TestRepaintOne(unittest.TestCase):

  def test_variable_case_whitens_both_sides(self):
    black = Arrow(EMPTY, B, X)
    d = ax('x', black)
    target = Pair(singleton_env('x', Arrow(EMPTY, W, X)), black)
    result, i, witness = repainting.repaint_one(d, decide_whitening(NEG, target, pair_of(d)))
    self.assertEqual(ax('x', Arrow(EMPTY, W, X)), result)
    self.assertEqual((1, 0), (i, result.index))
    self.assertTrue(check_whitening(witness))

  def test_application_color_shift(self):
    d = _x_applied_to_y(B)
    self.assertEqual(0, d.index)
    target = Pair(d.env.bind('x', multi(Arrow(multi(X), W, X))), X)
    result, i, witness = repainting.repaint_one(d, decide_whitening(NEG, target, pair_of(d)))
    self.assertTrue(check_derivation(result))
    self.assertEqual((0, 1), (i, result.index))
    self.assertEqual(target, pair_of(result))
    self.assertEqual(0, witness.count)

  def test_witness_must_be_negative(self):
    d = ax('x', Arrow(EMPTY, B, X))
    w = decide_whitening(POS, Pair(d.env, Arrow(EMPTY, W, X)), pair_of(d))
    with self.assertRaises(repainting.WitnessMismatch):
      repainting.repaint_one(d, w)

  def test_witness_must_start_from_the_typing(self):
    d = ax('x', Arrow(EMPTY, B, X))
    other = Pair(singleton_env('y', Arrow(EMPTY, B, X)), Arrow(EMPTY, B, X))
    lhs = Pair(singleton_env('y', Arrow(EMPTY, W, X)), Arrow(EMPTY, B, X))
    with self.assertRaises(repainting.WitnessMismatch):
      repainting.repaint_one(d, decide_whitening(NEG, lhs, other))

  @settings(max_examples=500, deadline=None)
  @given(strategies.typed_terms(), st.data())
  def test_bounds_hold(self, typed, data):
    _, d = typed
    changes = [v for v, count in whiter_variants(pair_of(d), NEG) if count == 1]
    assume(changes)
    w = decide_whitening(NEG, data.draw(st.sampled_from(changes)), pair_of(d))
    result, i, witness = repainting.repaint_one(d, w)
    self.assertTrue(check_derivation(result))
    self.assertEqual(d.term, result.term)
    self.assertLessEqual(abs(d.index - result.index), 1 - i)
    self.assertEqual(i, whitening_count(POS, pair_of(result), w.lhs))


class TestMultirepaint(unittest.TestCase):

  def test_zero_is_identity(self):
    d = _x_applied_to_y(B)
    result, k2, _ = repainting.multirepaint(d, decide_whitening(NEG, pair_of(d), pair_of(d)))
    self.assertEqual((d, 0), (result, k2))

  def test_one_agrees_with_repaint_one(self):
    d = _x_applied_to_y(B)
    target = Pair(d.env.bind('x', multi(Arrow(multi(X), W, X))), X)
    w = decide_whitening(NEG, target, pair_of(d))
    once, i, _ = repainting.repaint_one(d, w)
    result, k2, _ = repainting.multirepaint(d, w)
    self.assertEqual((once, i), (result, k2))

  @settings(max_examples=200, deadline=None)
  @given(strategies.typed_terms(), st.data())
  def test_bounds_hold(self, typed, data):
    _, d = typed
    changes = [(v, count) for v, count in whiter_variants(pair_of(d), NEG) if 2 <= count <= 3]
    assume(changes)
    lhs, k1 = data.draw(st.sampled_from(changes))
    result, k2, witness = repainting.multirepaint(d, decide_whitening(NEG, lhs, pair_of(d)))
    self.assertTrue(check_derivation(result))
    self.assertLessEqual(k2, k1)
    self.assertLessEqual(abs(d.index - result.index), k1 - k2)
    self.assertTrue(check_whitening(witness))


class TestAppRepaint(unittest.TestCase):

  def test_matching_arguments_use_the_plain_rule(self):
    fun = ax('x', Arrow(multi(X), B, X))
    arg = many(Var('y'), [ax('y', X)])
    result, delta, _ = repainting.app_repaint(fun, arg, W)
    self.assertEqual(app(W, fun, arg), result)
    self.assertEqual((0, 1), (delta, result.index))

  def test_whiter_argument(self):
    black, white = Arrow(EMPTY, B, X), Arrow(EMPTY, W, X)
    fun = ax('x', Arrow(multi(black), B, X))
    arg = many(Var('y'), [ax('y', white)])
    result, delta, witness = repainting.app_repaint(fun, arg, B)
    self.assertTrue(check_derivation(result))
    self.assertEqual(TypeEnv((('x', multi(Arrow(multi(white), B, X))), ('y', multi(white)))),
                     result.env)
    self.assertEqual((1, 0), (delta, result.index))
    self.assertTrue(check_whitening(witness))
    self.assertLessEqual(result.index, repainting.app_repaint_bound(0, 0, B, B, 1, delta))

  def test_unrelated_arguments(self):
    fun = ax('x', Arrow(multi(X), B, X))
    arg = many(Var('y'), [ax('y', Arrow(EMPTY, B, X))])
    with self.assertRaises(repainting.WitnessMismatch):
      repainting.app_repaint(fun, arg, B)

  @settings(max_examples=200, deadline=None)
  @given(strategies.typed_terms(depth=3), st.data())
  def test_random_applications(self, typed, data):
    u, d = typed
    arg = many(u, [d])
    changes = [(m, count) for m, count in whiter_variants(arg.type, NEG) if count <= 2]
    wanted, delta = data.draw(st.sampled_from(changes))
    arrow_color, app_color = data.draw(strategies.colors), data.draw(strategies.colors)
    fun = ax('f', Arrow(wanted, arrow_color, X))
    result, delta_after, witness = repainting.app_repaint(fun, arg, app_color)
    self.assertTrue(check_derivation(result))
    self.assertEqual(App(app_color, Var('f'), u), result.term)
    self.assertLessEqual(delta_after, delta)
    self.assertTrue(check_whitening(witness))
    self.assertEqual(Pair(fun.env + arg.env, X), witness.rhs)
    self.assertLessEqual(result.index, repainting.app_repaint_bound(
        fun.index, arg.index, arrow_color, app_color, delta, delta_after))


if __name__ == '__main__':
  unittest.main()
