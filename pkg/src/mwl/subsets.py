"""Deduplicated finite subsets of a group or shift module.

A subset stores canonical item representations (plain nested tuples), so
set arithmetic runs on hashable data at native speed; rich elements are
materialized only on iteration.  The ambient object supplies the item
algebra through the _zero_item/_add_items/_neg_item/_element_of_item
protocol, which both FinAbGroup and ShiftModule implement.

Minkowski sums grow multiplicatively, so every constructor enforces a
hard cap and fails loudly instead of thrashing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, SetSizeLimitError

SET_CAP = 10**6


@dataclass(frozen=True)
class FiniteSubset:
    ambient: object
    items: frozenset

    @staticmethod
    def of(ambient, elements) -> "FiniteSubset":
        items = set()
        for e in elements:
            parent = getattr(e, "group", None) or getattr(e, "module", None)
            if parent != ambient:
                raise DomainError("element does not belong to the ambient object")
            items.add(_item_of(e))
        if not items:
            raise DomainError("finite subsets must be nonempty")
        return FiniteSubset(ambient, frozenset(items))

    @staticmethod
    def from_items(ambient, items) -> "FiniteSubset":
        items = frozenset(items)
        if not items:
            raise DomainError("finite subsets must be nonempty")
        if len(items) > SET_CAP:
            raise SetSizeLimitError(SET_CAP)
        return FiniteSubset(ambient, items)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        for item in self.items:
            yield self.ambient._element_of_item(item)

    def sorted_elements(self):
        return [self.ambient._element_of_item(i) for i in sorted(self.items)]

    def contains_zero(self) -> bool:
        return self.ambient._zero_item() in self.items

    def with_zero(self) -> "FiniteSubset":
        return FiniteSubset(self.ambient, self.items | {self.ambient._zero_item()})

    def is_symmetric(self) -> bool:
        neg = self.ambient._neg_item
        return all(neg(i) in self.items for i in self.items)


def _item_of(element):
    coords = getattr(element, "coords", None)
    if coords is not None:
        return coords
    return element.items_key()


def minkowski_sum(a: FiniteSubset, b: FiniteSubset) -> FiniteSubset:
    """Sum set {x + y}; result size is capped."""
    if a.ambient != b.ambient:
        raise DomainError("minkowski sum of subsets of different ambients")
    add = a.ambient._add_items
    out = set()
    for x in a.items:
        for y in b.items:
            out.add(add(x, y))
            if len(out) > SET_CAP:
                raise SetSizeLimitError(SET_CAP)
    return FiniteSubset(a.ambient, frozenset(out))


def negate(a: FiniteSubset) -> FiniteSubset:
    neg = a.ambient._neg_item
    return FiniteSubset(a.ambient, frozenset(neg(x) for x in a.items))


def difference_set(a: FiniteSubset, b: FiniteSubset) -> FiniteSubset:
    """The set a - b = {x - y : x in a, y in b}."""
    return minkowski_sum(a, negate(b))


def union(a: FiniteSubset, b: FiniteSubset) -> FiniteSubset:
    if a.ambient != b.ambient:
        raise DomainError("union of subsets of different ambients")
    return FiniteSubset(a.ambient, a.items | b.items)


def product_subset(a: FiniteSubset, emb_a, b: FiniteSubset, emb_b) -> FiniteSubset:
    """Image of a x b inside a direct sum, given the two embeddings."""
    total = emb_a.target
    elems = []
    for x in a:
        ex = emb_a(x)
        for y in b:
            elems.append(ex + emb_b(y))
    return FiniteSubset.of(total, elems)


def map_subset(phi, a: FiniteSubset) -> FiniteSubset:
    """Image of a subset under a homomorphism (deduplicated)."""
    return FiniteSubset.of(phi.target, [phi(x) for x in a])
