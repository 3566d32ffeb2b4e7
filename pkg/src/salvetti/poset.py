"""Finite posets stored as down-set bitmasks.

Element ``j`` is below element ``i`` (``j <= i``) when bit ``j`` is set in
``down[i]``.  Every operation in the package that scans order relations works
on these integers, which keeps Plim and chain enumeration cheap.
"""

from __future__ import annotations

import json
from functools import cached_property


class PosetError(ValueError):
    pass


def bits(mask):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """A finite partial order on labelled elements."""

    def __init__(self, elements, down, check=True):
        self.elements = list(elements)
        self.down = list(down)
        if len(self.down) != len(self.elements):
            raise PosetError("one down-set per element required")
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise PosetError("duplicate element labels")
        if check:
            self.validate()

    @classmethod
    def from_relation(cls, elements, pairs):
        """Order generated by ``(upper, lower)`` index pairs."""
        n = len(elements)
        down = [1 << i for i in range(n)]
        for u, l in pairs:
            down[u] |= 1 << l
        # transitive closure by repeated propagation in topological order
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = down[i]
                for j in bits(down[i] & ~(1 << i)):
                    acc |= down[j]
                if acc != down[i]:
                    down[i] = acc
                    changed = True
        return cls(elements, down)

    @classmethod
    def from_leq(cls, elements, leq):
        """Order given by a predicate ``leq(a, b)`` on labels."""
        elements = list(elements)
        down = []
        for b in elements:
            m = 0
            for i, a in enumerate(elements):
                if leq(a, b):
                    m |= 1 << i
            down.append(m)
        return cls(elements, down)

    @classmethod
    def antichain(cls, elements):
        elements = list(elements)
        return cls(elements, [1 << i for i in range(len(elements))], check=False)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FinitePoset({len(self)} elements, {len(self.covers)} covers)"

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise PosetError(f"{label!r} is not an element") from None

    def leq(self, i, j):
        return bool(self.down[j] >> i & 1)

    def geq(self, i, j):
        return bool(self.down[i] >> j & 1)

    @cached_property
    def up(self):
        up = [0] * len(self)
        for i, m in enumerate(self.down):
            for j in bits(m):
                up[j] |= 1 << i
        return up

    def validate(self):
        for i, m in enumerate(self.down):
            if not m >> i & 1:
                raise PosetError(f"element {i} is not below itself")
            for j in bits(m):
                if j != i and self.down[j] >> i & 1:
                    raise PosetError(f"elements {i} and {j} violate antisymmetry")
                if self.down[j] & ~m:
                    raise PosetError(f"order is not transitive at {i} > {j}")

    @cached_property
    def covers(self):
        """Cover relations as ``(upper, lower)`` index pairs."""
        out = []
        for u, m in enumerate(self.down):
            strict = m & ~(1 << u)
            below = 0
            for k in bits(strict):
                below |= self.down[k] & ~(1 << k)
            for l in bits(strict & ~below):
                out.append((u, l))
        return out

    @cached_property
    def lower_covers(self):
        low = [[] for _ in self.elements]
        for u, l in self.covers:
            low[u].append(l)
        return low

    @cached_property
    def maximal(self):
        return [i for i in range(len(self)) if self.up[i] == 1 << i]

    @cached_property
    def minimal(self):
        return [i for i in range(len(self)) if self.down[i] == 1 << i]

    def maximal_chains(self):
        """All maximal chains, each listed from top to bottom."""
        out = []

        def walk(chain):
            low = self.lower_covers[chain[-1]]
            if not low:
                out.append(tuple(chain))
                return
            for l in low:
                chain.append(l)
                walk(chain)
                chain.pop()

        for top in self.maximal:
            walk([top])
        return out

    def chains(self):
        """All nonempty chains as tuples listed from top to bottom."""
        out = []

        def walk(chain, below):
            out.append(tuple(chain))
            for l in bits(below):
                chain.append(l)
                walk(chain, below & self.down[l] & ~(1 << l))
                chain.pop()

        for i in range(len(self)):
            walk([i], self.down[i] & ~(1 << i))
        return out

    def subposet(self, indices):
        """Induced order on the given element indices, in the given order."""
        indices = list(indices)
        pos = {old: new for new, old in enumerate(indices)}
        down = []
        for old in indices:
            m = 0
            for j in bits(self.down[old]):
                if j in pos:
                    m |= 1 << pos[j]
            down.append(m)
        return FinitePoset([self.elements[i] for i in indices], down, check=False)

    def ideal(self, i):
        """Indices of the principal down-set of ``i``."""
        return list(bits(self.down[i]))

    def dual(self):
        return FinitePoset(self.elements, list(self.up), check=False)

    def to_dict(self, label=str):
        return {
            "elements": [label(e) for e in self.elements],
            "cover_relations": [[u, l] for u, l in self.covers],
        }

    def to_json(self, label=str):
        return json.dumps(self.to_dict(label))

    @classmethod
    def from_dict(cls, data):
        return cls.from_relation(data["elements"], [tuple(p) for p in data["cover_relations"]])

    def to_dot(self, label=str):
        lines = ["digraph poset {", "  rankdir=BT;"]
        for i, e in enumerate(self.elements):
            lines.append(f'  n{i} [label="{label(e)}"];')
        for u, l in self.covers:
            lines.append(f"  n{l} -> n{u};")
        lines.append("}")
        return "\n".join(lines)
