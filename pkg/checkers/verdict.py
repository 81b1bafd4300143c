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

from dataclasses import dataclass
from enum import Enum
from typing import Any


class Tag(Enum):
  HOLDS = 'holds'
  FAILS = 'fails'
  UNKNOWN = 'unknown'


@dataclass(frozen=True)
class Verdict:
  """Outcome of a bounded check.

  HOLDS and FAILS carry a witness that can be rechecked independently.
  `bounded` marks a HOLDS that only covers the explored search space.
  """
  tag: Tag
  witness: Any = None
  reason: str = ''
  bounded: bool = False

  def holds(self):
    return self.tag is Tag.HOLDS

  def fails(self):
    return self.tag is Tag.FAILS

  def definite(self):
    return self.tag is not Tag.UNKNOWN

  def conclusive(self):
    """A definite answer that no larger search bound can overturn."""
    return self.definite() and not self.bounded

  def label(self):
    if self.tag is Tag.HOLDS and self.bounded:
      return 'holds(bounded)'
    return self.tag.value


def holds(witness=None, reason='', bounded=False):
  return Verdict(Tag.HOLDS, witness, reason, bounded)


def fails(witness=None, reason=''):
  return Verdict(Tag.FAILS, witness, reason)


def unknown(reason, witness=None):
  return Verdict(Tag.UNKNOWN, witness, reason)


def conjoin(verdicts):
  """All must hold: the first FAILS wins, else any UNKNOWN, else HOLDS."""
  verdicts = list(verdicts)
  for verdict in verdicts:
    if verdict.fails():
      return verdict
  for verdict in verdicts:
    if not verdict.definite():
      return verdict
  return holds([v.witness for v in verdicts],
               bounded=any(v.bounded for v in verdicts))


def contradicts(first: Verdict, second: Verdict) -> bool:
  """Two conclusive verdicts with different tags; a bounded HOLDS may still sharpen to FAILS."""
  return first.conclusive() and second.conclusive() and first.tag is not second.tag
