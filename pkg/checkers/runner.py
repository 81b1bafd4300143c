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

import logging

from checkers import corpus
from checkers import preorders
from checkers import reduction
from checkers import syntax
from checkers import term as terms
from checkers import verdict
from checkers.config import RunConfig
from checkers.term import Color, paint, plug


class Visitor(corpus.Visitor):
  """Runs every selected entry and records verdicts and mismatches on it."""

  def __init__(self, config: RunConfig = None, fail_fast=False):
    self.config = config or RunConfig()
    self.run_passed = True
    self.fail_fast = fail_fast
    self.encountered_failure = False

  def start_visit(self):
    logging.info('========== Running corpus')
    return self.visit_suite, self.visit_suite_end

  def visit_suite(self, idx: int, suite: corpus.Suite, do_suite: bool):
    if not do_suite:
      logging.info('skipping suite "{}"'.format(suite.name()))
      return None

    if self.fail_fast and self.encountered_failure:
      logging.info('fail fast: not running suite "{}"'.format(suite.name()))
      return None

    suite.attempted = True
    logging.info('==== SUITE {}:{} START ===='.format(idx, suite.name()))
    logging.info('     {}'.format(suite.source()))
    return lambda idx, entry, do_entry: self.visit_entry(idx, entry, do_entry, suite)

  def visit_entry(self, idx: int, entry: corpus.Entry, do_entry: bool, suite: corpus.Suite):
    if not do_entry:
      logging.info('skipping entry "{}"'.format(entry.name()))
      return

    if self.fail_fast and self.encountered_failure:
      logging.info('fail fast: not running entry "{}"'.format(entry.name()))
      return

    entry.attempted = True
    logging.info('==== ENTRY {}:{}:{} START ===='.format(suite.name(), idx, entry.name()))
    try:
      run_entry(entry, self.config)
    except Exception as e:
      logging.error('entry "{}" raised {}'.format(entry.name(), repr(e)))
      entry.errors.append((type(e).__name__, str(e)))
      entry.num_errors += 1

    entry.num_failures += len(entry.mismatches)
    suite.num_failures += entry.num_failures
    suite.num_errors += entry.num_errors
    if not entry.success():
      suite.num_failing_entries += 1
      self.encountered_failure = True
    entry.completed = True
    logging.info('==== ENTRY {}:{}:{} {} ===='.format(
        suite.name(), idx, entry.name(), 'SUCCESS' if entry.success() else 'FAILURE'))

  def visit_suite_end(self, idx, suite: corpus.Suite, do_suite: bool):
    if not suite.attempted:
      return
    if not suite.success():
      self.run_passed = False
    suite.completed = True
    logging.info('==== SUITE {}:{} {} ===='.format(
        idx, suite.name(), 'SUCCESS' if suite.success() else 'FAILURE'))

  def end_visit(self):
    logging.info('========== Finished running corpus')
    return self.success()

  def success(self):
    return self.run_passed


def run_entry(entry: corpus.Entry, config: RunConfig):
  """Computes the verdicts of `entry` and records every mismatch on it."""
  if entry.colored():
    found = {
        preorders.PWC: preorders.pwc_check_colored(entry.lhs, entry.rhs, config.bound,
                                                   config.fuel),
        preorders.CTX_IMP: preorders.interaction_improvement_check_colored(
            entry.lhs, entry.rhs, config.fuel, config.context_size, config.max_contexts),
    }
    if verdict.contradicts(found[preorders.PWC], found[preorders.CTX_IMP]):
      entry.mismatches.append((preorders.PWC, 'disagrees with {}'.format(preorders.CTX_IMP)))
  else:
    check = preorders.crosscheck_main_theorem(entry.lhs, entry.rhs, config)
    found = check.verdicts
    for a, b in check.disagreements():
      entry.mismatches.append((a, 'disagrees with {}'.format(b)))
  entry.verdicts = found

  for rel, tag in sorted(entry.expected().items()):
    if tag == 'unknown':
      continue
    if rel not in found:
      entry.mismatches.append((rel, 'expected {} but the relation was not run'.format(tag)))
    elif found[rel].tag.value != tag:
      entry.mismatches.append((rel, 'expected {}, got {}'.format(tag, found[rel].label())))

  for item in entry.contexts():
    entry.context_results.append(_recheck_context(entry, item, config))


def _recheck_context(entry, item, config):
  """Evaluates the context on both sides; plain sides are painted black first."""
  c = syntax.parse_context(item['context'])
  counts = []
  for side in (entry.lhs, entry.rhs):
    if terms.is_plain(side):
      side = paint(Color.BLACK, side)
    result = reduction.evaluate_head(plug(c, side), config.fuel,
                                     detect_cycles=config.detect_cycles, keep_trace=False)
    counts.append(result.interactions if result.normal() else None)
  expected = [item.get('lhs_count'), item.get('rhs_count')]
  if counts != expected:
    entry.mismatches.append(('context', '{}: expected counts {}, got {}'.format(
        item['context'], expected, counts)))
  return {'context': item['context'], 'lhs_count': counts[0], 'rhs_count': counts[1]}
