"""Characters of the unit subgroup and the flat-bundle non-vanishing tests.

A character is a formal word in the embedding symbols s_i, t_j, conj(t_j)
(relative to a fixed ordered choice tau), evaluated as a product of certified
embedding values.  Equality of two characters on U is decided exactly:

* the ratio word is reduced; an empty word is equality;
* a single-embedding word descends to an exact identity in the field
  (sigma(u^e) = 1 iff u^e = 1, embeddings being injective);
* otherwise a precision-doubling interval comparison is run against a
  Liouville separation bound derived from a degree bound on the ratio value
  and height bounds on its factors, so both outcomes are certified.

The H^{1,0} membership test is the reliable core.  The general (p, q)
criterion is implemented under two explicit readings of an internally
inconsistent statement and is flagged experimental everywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import embeddings as emb
from .classify import OrderedChoice
from .errors import Inconclusive
from .intervals import Box, as_box
from .numberfield import (
    FieldElement,
    NumberField,
    element_height_log2,
    minimal_polynomial,
)
from .units import UnitSubgroup

Symbol = tuple  # ("s", i) | ("t", j) | ("tc", j)


@dataclass(frozen=True)
class Character:
    """Product of embedding-symbol powers, as a map on the unit subgroup."""

    word: tuple                 # sorted ((symbol, exponent), ...), exponents != 0
    domain: UnitSubgroup

    @staticmethod
    def make(factors, domain: UnitSubgroup) -> "Character":
        """factors: iterable of symbols or (symbol, exponent) pairs."""
        acc: dict = {}
        for item in factors:
            if isinstance(item[0], tuple):
                sym, e = item  # ((kind, index), exponent)
            else:
                sym, e = item, 1  # (kind, index) with exponent 1
            sym = (str(sym[0]), int(sym[1]))
            if sym[0] not in ("s", "t", "tc"):
                raise ValueError(f"unknown symbol kind {sym[0]!r}")
            acc[sym] = acc.get(sym, 0) + e
        word = tuple(sorted((s, e) for s, e in acc.items() if e != 0))
        return Character(word, domain)

    @staticmethod
    def trivial(domain: UnitSubgroup) -> "Character":
        return Character((), domain)

    @staticmethod
    def embedding(kind: str, index: int, domain: UnitSubgroup) -> "Character":
        return Character.make([(kind, index)], domain)

    def __mul__(self, other: "Character") -> "Character":
        if self.domain != other.domain:
            raise ValueError("characters on different subgroups")
        return Character.make(list(self.word) + list(other.word), self.domain)

    def inverse(self) -> "Character":
        return Character(tuple((s, -e) for s, e in self.word), self.domain)

    def symbol_indices(self, field: NumberField, tau: OrderedChoice) -> dict:
        """Map embedding index -> exponent, resolving t/tc through tau."""
        s, t = field.s, field.t
        out: dict = {}
        for (kind, k), e in self.word:
            if kind == "s":
                if not 1 <= k <= s:
                    raise ValueError(f"s{k} out of range")
                idx = k
            else:
                if not 1 <= k <= t:
                    raise ValueError(f"{kind}{k} out of range")
                idx = tau.indices[k - 1]
                if kind == "tc":
                    idx = idx + t if idx <= s + t else idx - t
            out[idx] = out.get(idx, 0) + e
        return {i: e for i, e in out.items() if e != 0}

    def evaluate(self, u: FieldElement, field: NumberField, tau: OrderedChoice,
                 precision: int) -> Box:
        return _eval_product(self.symbol_indices(field, tau), u, field, precision)


def _eval_product(exponents: dict, u: FieldElement, field: NumberField,
                  precision: int) -> Box:
    data = emb.embedding_data(field)
    acc = Box.point(1)
    for idx in sorted(exponents):
        e = exponents[idx]
        v = as_box(data.evaluate(idx, u, precision))
        p = precision
        while e < 0 and v.mag2().contains_zero():
            p *= 2
            v = as_box(data.evaluate(idx, u, p))
        acc = acc * v.pow_int(e)
    return acc


def characters_equal_on_U(theta1: Character, theta2: Character,
                          field: NumberField, tau: OrderedChoice,
                          precision_cap: int = emb.PRECISION_CAP) -> bool:
    """Exact equality of the two characters as maps on their domain."""
    if theta1.domain != theta2.domain:
        raise ValueError("characters must share a domain subgroup")
    if theta1.word == theta2.word:
        return True
    ratio = theta1 * theta2.inverse()
    exponents = ratio.symbol_indices(field, tau)
    if not exponents:
        return True
    for g in theta1.domain.generators:
        if not _ratio_is_one(exponents, g, field, precision_cap):
            return False
    return True


def _ratio_is_one(exponents: dict, u: FieldElement, field: NumberField,
                  cap: int) -> bool:
    if len(exponents) == 1:
        # single embedding: sigma(u^e) = 1 iff u^e = 1, exactly in K
        ((_, e),) = exponents.items()
        return (u ** e).is_one()
    # Liouville separation: the ratio R lies in a compositum of the fields
    # Q(sigma(u)), each of degree d = deg(u), so [Q(R):Q] <= min(d^m, d!),
    # and log2 H(R - 1) <= sum |e| h2(u) + 1; a nonzero R - 1 then satisfies
    # |R - 1| >= 2^-sep_bits, which decides equality at finite precision.
    d = minimal_polynomial(u).degree
    m = len(exponents)
    degree_bound = min(d ** m, factorial(d))
    h2 = element_height_log2(u)
    height_bits = sum(abs(e) for e in exponents.values()) * h2 + 1
    sep_bits = int(degree_bound * height_bits) + 8
    prec = max(128, sep_bits // 4)
    while prec <= cap:
        box = _eval_product(exponents, u, field, prec)
        if not box.contains(1, 0):
            return False
        dist2 = (box.re - 1).sq() + box.im.sq()
        if dist2.hi * (1 << (2 * sep_bits)) < 1:
            return True
        prec *= 2
    raise Inconclusive(
        f"character comparison needs more than {cap} bits "
        f"(separation bound 2^-{sep_bits})")


def h10_nonvanishing(theta: Character, field: NumberField, tau: OrderedChoice,
                     precision_cap: int = emb.PRECISION_CAP) -> bool:
    """Whether theta agrees on U with one of sigma_1..sigma_s, tau_1..tau_t.

    This is the reliable membership criterion for nonzero holomorphic
    1-forms with values in the flat line bundle of theta.
    """
    U = theta.domain
    for i in range(1, field.s + 1):
        if characters_equal_on_U(theta, Character.embedding("s", i, U),
                                 field, tau, precision_cap):
            return True
    for j in range(1, field.t + 1):
        if characters_equal_on_U(theta, Character.embedding("t", j, U),
                                 field, tau, precision_cap):
            return True
    return False


@dataclass(frozen=True)
class HpqResult:
    value: bool
    reading: str
    witness: tuple | None     # (I, J, K) index sets when value is True
    experimental: bool = True


def hpq_nonvanishing(theta: Character, p: int, q: int, field: NumberField,
                     tau: OrderedChoice, reading: str = "as-printed",
                     precision_cap: int = emb.PRECISION_CAP) -> HpqResult:
    """General (p, q) non-vanishing test under an explicit reading.

    The printed criterion is internally inconsistent (an undefined product
    index set and an unused cardinality constraint), so both supported
    readings are guesses and the result is always labeled experimental:

    * "as-printed": sets I <= {1..s}, K, L <= {1..t} with |I|+|K| = p and
      |L| <= q, product over I, an unconstrained J <= {1..t}, and conj
      factors over K.  L never enters the product, so q is vacuous.
    * "strict-ijk": |I|+|J| = p and |K| <= q, no L.
    """
    if reading not in ("as-printed", "strict-ijk"):
        raise ValueError(f"unknown reading {reading!r}")
    s, t = field.s, field.t
    if not 0 <= p <= s + t or not 0 <= q <= s + t:
        raise ValueError("p, q out of range")
    U = theta.domain

    def word_char(I, J, Kset):
        factors = ([("s", i) for i in I] + [("t", j) for j in J]
                   + [("tc", k) for k in Kset])
        return Character.make(factors, U)

    subsets_s = list(_subsets(range(1, s + 1)))
    subsets_t = list(_subsets(range(1, t + 1)))
    for I in subsets_s:
        for J in subsets_t:
            for Kset in subsets_t:
                if reading == "as-printed":
                    if len(I) + len(Kset) != p:
                        continue
                else:
                    if len(I) + len(J) != p or len(Kset) > q:
                        continue
                cand = word_char(I, J, Kset)
                if characters_equal_on_U(theta, cand, field, tau, precision_cap):
                    return HpqResult(True, reading, (I, J, Kset))
    return HpqResult(False, reading, None)


def _subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from (tuple(c) for c in itertools.combinations(items, r))
