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


"""JSON-ready encoding of workbench values.

Terms and contexts are nested objects tagged by "k": "var", "abs" and "app",
plus "hole", "app-fun" and "app-arg" for contexts (the latter two name the
side holding the hole). The color sits under "c" and is null on plain nodes.
Linear types are tagged "atom" or "arrow", multi types are lists,
environments map names to multi types, and a typing is
{"env": ..., "type": ..., "index": k}.

Decoding rebuilds derivations with the rule constructors and rechecks
whitening witnesses, so a decoded value is always valid. Verdict witnesses
are free-form payloads; each payload value is wrapped in a one-key object
naming what it is ({"term": ...}, {"tuple": [...]}, {"record": "Separation",
"fields": ...}) so it decodes to an equal value.
"""

import dataclasses
from enum import Enum

from checkers import bohm
from checkers import multitype
from checkers import preorders
from checkers import reduction
from checkers import verdict
from checkers import whitening
from checkers.multitype import Arrow, Atom, Derivation, MultiType, Rule, TypeEnv, Typing
from checkers.reduction import EvalResult, Outcome, Step, StepKind
from checkers.term import Abs, App, AppLeft, AppRight, CAbs, Color, Hole, Sel, Var
from checkers.whitening import Pair, Polarity, WhiteningWitness, WRule

KINDS = ('term', 'context', 'type', 'multitype', 'env', 'typing', 'derivation', 'witness',
         'eval', 'verdict')

# Records and enums that may appear inside verdict witnesses.
RECORDS = {cls.__name__: cls for cls in (Pair, preorders.Separation, preorders.PwcMatch,
                                         preorders.EtaGap, bohm.SpineMatch,
                                         reduction.NormalizeResult)}
ENUMS = {'sel': Sel, 'color': Color, 'polarity': Polarity}

_KIND_TYPES = (
    ('term', (Var, Abs, App)),
    ('context', (Hole, CAbs, AppLeft, AppRight)),
    ('type', (Atom, Arrow)),
    ('multitype', (MultiType,)),
    ('env', (TypeEnv,)),
    ('typing', (Typing,)),
    ('derivation', (Derivation,)),
    ('witness', (WhiteningWitness,)),
    ('eval', (EvalResult,)),
    ('verdict', (verdict.Verdict,)),
)


def kind_of(value):
  """The entry of KINDS describing `value`, or None."""
  for kind, types in _KIND_TYPES:
    if isinstance(value, types):
      return kind
  return None


## Encoding

def encode(value):
  """Encodes a workbench value, or any dict/list/dataclass built from them."""
  kind = kind_of(value)
  if kind is not None:
    return _ENCODERS[kind](value)
  if value is None or isinstance(value, (bool, int, float, str)):
    return value
  if isinstance(value, Pair):
    return _encode_pair(value)
  if isinstance(value, Enum):
    return value.value
  if dataclasses.is_dataclass(value):
    return {f.name: encode(getattr(value, f.name)) for f in dataclasses.fields(value)}
  if isinstance(value, dict):
    return {str(key): encode(item) for key, item in value.items()}
  if isinstance(value, (list, tuple, set, frozenset)):
    items = sorted(value) if isinstance(value, (set, frozenset)) else value
    return [encode(item) for item in items]
  raise TypeError('cannot encode a value of type {}'.format(type(value).__name__))


def _color(color):
  return None if color is None else color.value


def _encode_term(t):
  if isinstance(t, Var):
    return {'k': 'var', 'x': t.name}
  if isinstance(t, Abs):
    return {'k': 'abs', 'c': _color(t.color), 'x': t.binder, 't': _encode_term(t.body)}
  return {'k': 'app', 'c': _color(t.color), 'f': _encode_term(t.fun), 'a': _encode_term(t.arg)}


def _encode_context(c):
  if isinstance(c, Hole):
    return {'k': 'hole'}
  if isinstance(c, CAbs):
    return {'k': 'abs', 'c': _color(c.color), 'x': c.binder, 't': _encode_context(c.body)}
  if isinstance(c, AppLeft):
    return {'k': 'app-fun', 'c': _color(c.color), 'f': _encode_context(c.fun),
            'a': _encode_term(c.arg)}
  return {'k': 'app-arg', 'c': _color(c.color), 'f': _encode_term(c.fun),
          'a': _encode_context(c.arg)}


def _encode_type(ltype):
  if isinstance(ltype, Atom):
    return {'k': 'atom', 'x': ltype.name}
  return {'k': 'arrow', 'm': _encode_multitype(ltype.arg), 'c': ltype.color.value,
          't': _encode_type(ltype.result)}


def _encode_multitype(mtype):
  return [_encode_type(elem) for elem in mtype.elems]


def _encode_env(env):
  return {name: _encode_multitype(mtype) for name, mtype in env.bindings}


def _encode_typing(typing):
  return {'env': _encode_env(typing.env), 'type': _encode_type(typing.type),
          'index': typing.index}


def _encode_pair(pair):
  return {'env': _encode_env(pair.env), 'type': encode(pair.type)}


def _encode_derivation(d):
  return {
      'rule': d.rule.value,
      'env': _encode_env(d.env),
      'term': _encode_term(d.term),
      'type': encode(d.type),
      'index': d.index,
      'children': [_encode_derivation(child) for child in d.children],
  }


def _encode_witness(w):
  return {
      'polarity': w.polarity.value,
      'count': w.count,
      'rule': w.rule.value,
      'lhs': encode(w.lhs),
      'rhs': encode(w.rhs),
      'children': [_encode_witness(child) for child in w.children],
  }


def _encode_eval(result):
  return {
      'outcome': result.outcome.value,
      'term': _encode_term(result.term),
      'interactions': result.interactions,
      'silents': result.silents,
      'cycle': result.cycle,
      'trace': [{'kind': step.kind.value, 'path': [sel.value for sel in step.path],
                 'source': _encode_term(step.source), 'target': _encode_term(step.target)}
                for step in result.trace],
  }


def _encode_verdict(found):
  return {
      'tag': found.tag.value,
      'bounded': found.bounded,
      'reason': found.reason,
      'witness': encode_payload(found.witness),
  }


_ENCODERS = {
    'term': _encode_term,
    'context': _encode_context,
    'type': _encode_type,
    'multitype': _encode_multitype,
    'env': _encode_env,
    'typing': _encode_typing,
    'derivation': _encode_derivation,
    'witness': _encode_witness,
    'eval': _encode_eval,
    'verdict': _encode_verdict,
}


def encode_payload(value):
  """Encodes a witness payload so that `decode_payload` gives it back."""
  if value is None or isinstance(value, (bool, int, float, str)):
    return value
  kind = kind_of(value)
  if kind is not None:
    return {kind: encode(value)}
  for name, enum in ENUMS.items():
    if isinstance(value, enum):
      return {name: value.value}
  record = RECORDS.get(type(value).__name__)
  if record is not None and isinstance(value, record):
    return {'record': type(value).__name__,
            'fields': {f.name: encode_payload(getattr(value, f.name))
                       for f in dataclasses.fields(value)}}
  if isinstance(value, dict):
    return {'dict': {str(key): encode_payload(item) for key, item in value.items()}}
  if isinstance(value, list):
    return {'list': [encode_payload(item) for item in value]}
  if isinstance(value, tuple):
    return {'tuple': [encode_payload(item) for item in value]}
  raise TypeError('cannot encode a payload of type {}'.format(type(value).__name__))


## Decoding

def decode(kind, obj):
  """Inverse of `encode` for the value kinds listed in KINDS."""
  if kind not in KINDS:
    raise DecodeError('unknown kind "{}"'.format(kind))
  try:
    return _DECODERS[kind](obj)
  except (KeyError, TypeError, ValueError, AttributeError) as e:
    raise DecodeError('malformed {}: {}'.format(kind, e))


def _name(obj):
  if not isinstance(obj, str) or not obj:
    raise DecodeError('expected a name, got {}'.format(obj))
  return obj


def _decode_color(obj):
  return None if obj is None else Color(obj)


def _decode_term(obj):
  k = obj['k']
  if k == 'var':
    return Var(_name(obj['x']))
  if k == 'abs':
    return Abs(_decode_color(obj['c']), _name(obj['x']), _decode_term(obj['t']))
  if k == 'app':
    return App(_decode_color(obj['c']), _decode_term(obj['f']), _decode_term(obj['a']))
  raise DecodeError('unknown term tag "{}"'.format(k))


def _decode_context(obj):
  k = obj['k']
  if k == 'hole':
    return Hole()
  if k == 'abs':
    return CAbs(_decode_color(obj['c']), _name(obj['x']), _decode_context(obj['t']))
  if k == 'app-fun':
    return AppLeft(_decode_color(obj['c']), _decode_context(obj['f']), _decode_term(obj['a']))
  if k == 'app-arg':
    return AppRight(_decode_color(obj['c']), _decode_term(obj['f']), _decode_context(obj['a']))
  raise DecodeError('unknown context tag "{}"'.format(k))


def _decode_type(obj):
  k = obj['k']
  if k == 'atom':
    return Atom(_name(obj['x']))
  if k == 'arrow':
    return Arrow(_decode_multitype(obj['m']), Color(obj['c']), _decode_type(obj['t']))
  raise DecodeError('unknown type tag "{}"'.format(k))


def _decode_multitype(obj):
  if not isinstance(obj, list):
    raise DecodeError('a multi type is a list, got {}'.format(obj))
  return MultiType(tuple(_decode_type(elem) for elem in obj))


def _decode_env(obj):
  if not isinstance(obj, dict):
    raise DecodeError('an environment is an object, got {}'.format(obj))
  return TypeEnv(tuple((_name(name), _decode_multitype(mtype)) for name, mtype in obj.items()))


def _decode_any_type(obj):
  return _decode_multitype(obj) if isinstance(obj, list) else _decode_type(obj)


def _decode_typing(obj):
  return Typing(_decode_env(obj['env']), _decode_type(obj['type']), _count(obj['index']))


def _count(obj):
  if isinstance(obj, bool) or not isinstance(obj, int) or obj < 0:
    raise DecodeError('expected a count, got {}'.format(obj))
  return obj


def _decode_derivation(obj):
  rule = Rule(obj['rule'])
  term = _decode_term(obj['term'])
  children = [_decode_derivation(child) for child in obj.get('children', [])]
  try:
    if rule is Rule.AX:
      d = multitype.ax(term.name, _decode_type(obj['type']))
    elif rule is Rule.MANY:
      d = multitype.many(term, children)
    elif rule is Rule.LAM:
      d = multitype.lam(term.color, term.binder, children[0])
    else:
      d = multitype.app(term.color, children[0], children[1])
  except (multitype.TypingError, IndexError, AttributeError) as e:
    raise DecodeError('derivation does not check: {}'.format(e))
  recorded = (_decode_env(obj['env']), _decode_any_type(obj['type']), obj['index'])
  if recorded != (d.env, d.type, d.index) or d.term != term:
    raise DecodeError('recorded conclusion differs from the rebuilt one at rule {}'.format(
        rule.value))
  return d


def _decode_side(rule, obj):
  if rule is WRule.PAIR:
    return Pair(_decode_env(obj['env']), _decode_any_type(obj['type']))
  if rule is WRule.ENV:
    return _decode_env(obj)
  if rule is WRule.MULTI:
    return _decode_multitype(obj)
  return _decode_type(obj)


def _decode_witness(obj):
  rule = WRule(obj['rule'])
  w = WhiteningWitness(Polarity(obj['polarity']), _count(obj['count']),
                       _decode_side(rule, obj['lhs']), _decode_side(rule, obj['rhs']), rule,
                       tuple(_decode_witness(child) for child in obj.get('children', [])))
  error = whitening.find_whitening_error(w)
  if error is not None:
    raise DecodeError('whitening witness does not check: {}'.format(error))
  return w


def _decode_eval(obj):
  trace = tuple(Step(_decode_term(step['source']), _decode_term(step['target']),
                     StepKind(step['kind']), tuple(Sel(sel) for sel in step['path']))
                for step in obj.get('trace', []))
  return EvalResult(Outcome(obj['outcome']), _decode_term(obj['term']),
                    _count(obj['interactions']), _count(obj['silents']), trace,
                    _count(obj.get('cycle', 0)))


def _decode_verdict(obj):
  return verdict.Verdict(verdict.Tag(obj['tag']), decode_payload(obj.get('witness')),
                         obj.get('reason', ''), obj.get('bounded', False))


_DECODERS = {
    'term': _decode_term,
    'context': _decode_context,
    'type': _decode_type,
    'multitype': _decode_multitype,
    'env': _decode_env,
    'typing': _decode_typing,
    'derivation': _decode_derivation,
    'witness': _decode_witness,
    'eval': _decode_eval,
    'verdict': _decode_verdict,
}


def decode_payload(obj):
  """Inverse of `encode_payload`."""
  if obj is None or isinstance(obj, (bool, int, float, str)):
    return obj
  if not isinstance(obj, dict):
    raise DecodeError('malformed payload: {}'.format(obj))
  if 'record' in obj:
    record = RECORDS.get(obj['record'])
    if record is None:
      raise DecodeError('unknown record "{}"'.format(obj['record']))
    return record(**{name: decode_payload(item) for name, item in obj['fields'].items()})
  if len(obj) != 1:
    raise DecodeError('a payload value has exactly one tag, got {}'.format(sorted(obj)))
  (tag, inner), = obj.items()
  if tag in KINDS:
    return decode(tag, inner)
  if tag in ENUMS:
    return ENUMS[tag](inner)
  if tag == 'dict':
    return {key: decode_payload(item) for key, item in inner.items()}
  if tag == 'list':
    return [decode_payload(item) for item in inner]
  if tag == 'tuple':
    return tuple(decode_payload(item) for item in inner)
  raise DecodeError('unknown payload tag "{}"'.format(tag))


class DecodeError(Exception):
  def __init__(self, msg):
    super().__init__(msg)
    self.msg = msg
