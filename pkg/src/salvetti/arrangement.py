"""Real affine hyperplane arrangements and their face posets.

Faces are encoded as sign vectors: ``sign_i(x) = sign(a_i . x - b_i)`` with
hyperplanes in file order.  Realizability of a sign vector is decided exactly
by :func:`salvetti.linear.find_point`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd, lcm

from .kernels import integer_rank
from .linear import find_point
from .poset import FinitePoset, bits

SIGN_CHAR = {0: "0", -1: "-", 1: "+"}
CHAR_SIGN = {"0": 0, "-": -1, "+": 1}
# enumeration order on sign strings: 0 < - < +
_SIGN_RANK = {0: 0, -1: 1, 1: 2}


class ArrangementError(ValueError):
    pass


def signs_to_str(signs):
    return "".join(SIGN_CHAR[s] for s in signs)


def str_to_signs(text):
    try:
        return tuple(CHAR_SIGN[c] for c in text)
    except KeyError:
        raise ArrangementError(f"bad sign string {text!r}") from None


def parse_rational(token):
    try:
        if "/" in token:
            num, den = token.split("/")
            if int(den) <= 0:
                raise ValueError
            return Fraction(int(num), int(den))
        return Fraction(int(token))
    except ValueError:
        raise ArrangementError(f"malformed rational {token!r}") from None


@dataclass(frozen=True)
class Hyperplane:
    """The hyperplane ``normal . x = offset`` in canonical form."""

    normal: tuple[int, ...]
    offset: Fraction

    @classmethod
    def make(cls, normal, offset):
        normal = [Fraction(a) for a in normal]
        offset = Fraction(offset)
        if not any(normal):
            raise ArrangementError("zero normal vector")
        den = lcm(*(a.denominator for a in normal))
        ints = [int(a * den) for a in normal]
        g = 0
        for a in ints:
            g = gcd(g, a)
        lead = next(a for a in ints if a)
        if lead < 0:
            g = -g
        return cls(tuple(a // g for a in ints), offset * den / g)

    def value(self, x):
        return sum(a * xi for a, xi in zip(self.normal, x)) - self.offset

    def side(self, x):
        v = self.value(x)
        return (v > 0) - (v < 0)

    def to_text(self):
        return "H " + " ".join(str(a) for a in self.normal) + f" {self.offset}"


@dataclass(frozen=True)
class Arrangement:
    dim: int
    hyperplanes: tuple[Hyperplane, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ArrangementError("dimension must be positive")
        seen = set()
        for h in self.hyperplanes:
            if len(h.normal) != self.dim:
                raise ArrangementError(f"hyperplane {h.to_text()!r} has wrong length")
            if h in seen:
                raise ArrangementError(f"duplicate hyperplane {h.to_text()!r}")
            seen.add(h)

    @classmethod
    def from_rows(cls, dim, rows):
        """Build from ``(a_1, ..., a_d, b)`` rows meaning ``a . x = b``."""
        return cls(dim, tuple(Hyperplane.make(r[:-1], r[-1]) for r in rows))

    def __len__(self):
        return len(self.hyperplanes)

    def signs_at(self, x):
        return tuple(h.side(x) for h in self.hyperplanes)

    def to_text(self):
        return "\n".join([f"dim {self.dim}"] + [h.to_text() for h in self.hyperplanes]) + "\n"


def parse_arrangement(text):
    dim = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if dim is None:
            if parts[0] != "dim" or len(parts) != 2:
                raise ArrangementError(f"line {lineno}: expected 'dim <d>' header")
            try:
                dim = int(parts[1])
            except ValueError:
                raise ArrangementError(f"line {lineno}: bad dimension {parts[1]!r}") from None
            continue
        if parts[0] != "H":
            raise ArrangementError(f"line {lineno}: expected 'H' line")
        if len(parts) != dim + 2:
            raise ArrangementError(f"line {lineno}: expected {dim + 1} numbers")
        rows.append([parse_rational(t) for t in parts[1:]])
    if dim is None:
        raise ArrangementError("missing dimension header")
    return Arrangement.from_rows(dim, rows)


def load_arrangement(path):
    with open(path, encoding="utf-8") as fh:
        return parse_arrangement(fh.read())


def _rational_rows(vectors):
    # scale rational vectors to integer rows for the elimination kernel
    out = []
    for v in vectors:
        den = lcm(*(Fraction(a).denominator for a in v)) if v else 1
        out.append([int(Fraction(a) * den) for a in v])
    return out


def _rank(vectors, width):
    return integer_rank(_rational_rows(vectors), width) if vectors else 0


@dataclass(frozen=True)
class Face:
    signs: tuple[int, ...]
    codim: int = field(compare=False)

    def __str__(self):
        return signs_to_str(self.signs)

    @property
    def is_chamber(self):
        return all(self.signs)

    @property
    def zero_set(self):
        return frozenset(i for i, s in enumerate(self.signs) if s == 0)


def _face_system(A, signs):
    # zip truncates, so a prefix of a sign vector constrains the first hyperplanes only
    eqs, strict = [], []
    for h, s in zip(A.hyperplanes, signs):
        row = [Fraction(a) for a in h.normal] + [-h.offset]
        if s == 0:
            eqs.append(row)
        else:
            strict.append([s * v for v in row])
    return eqs, strict


def realize(A, signs):
    """A rational point with the given sign vector, or None."""
    eqs, strict = _face_system(A, signs)
    return find_point(eqs, strict, A.dim)


def sign_leq(lower, upper):
    """Sign-vector order: ``upper >= lower`` iff each sign of upper is 0 or agrees."""
    return all(u == 0 or u == l for u, l in zip(upper, lower))


def compose_signs(f, p):
    return tuple(a if a else b for a, b in zip(f, p))


def enumerate_faces(A):
    """All faces of ``A`` with exact codimensions and the face order."""
    found = {}

    def extend(prefix):
        k = len(prefix)
        if k == len(A):
            found[tuple(prefix)] = None
            return
        for s in (0, -1, 1):
            prefix.append(s)
            eqs, strict = _face_system(A, prefix)
            if find_point(eqs, strict, A.dim) is not None:
                extend(prefix)
            prefix.pop()

    extend([])
    sign_list = sorted(found, key=lambda s: tuple(_SIGN_RANK[x] for x in s))
    faces, points = [], []
    for signs in sign_list:
        zero_normals = [A.hyperplanes[i].normal for i, s in enumerate(signs) if s == 0]
        faces.append(Face(signs, _rank(zero_normals, A.dim)))
        points.append(realize(A, signs))
    return FacePoset(A, faces, points)


def enumerate_faces_bruteforce(A):
    """Sign vectors realized by ``A``, checking all 3^n candidates (test oracle)."""
    out = []
    for signs in product((0, -1, 1), repeat=len(A)):
        if realize(A, signs) is not None:
            out.append(signs)
    return sorted(out, key=lambda s: tuple(_SIGN_RANK[x] for x in s))


class FacePoset:
    """The face poset of an arrangement; lower-dimensional faces are larger."""

    def __init__(self, arrangement, faces, points):
        self.arrangement = arrangement
        self.faces = list(faces)
        self.points = list(points)
        self._index = {f.signs: i for i, f in enumerate(self.faces)}
        down = []
        for upper in self.faces:
            m = 0
            for i, lower in enumerate(self.faces):
                if sign_leq(lower.signs, upper.signs):
                    m |= 1 << i
            down.append(m)
        self.order = FinitePoset([str(f) for f in self.faces], down, check=False)

    def __len__(self):
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def __repr__(self):
        return f"FacePoset({len(self.arrangement)} hyperplanes, {len(self)} faces)"

    @property
    def n(self):
        return len(self.arrangement)

    def idx(self, face):
        """Index of a face given as Face, index, sign tuple or sign string."""
        if isinstance(face, int):
            if not 0 <= face < len(self.faces):
                raise ArrangementError(f"face index {face} out of range")
            return face
        if isinstance(face, Face):
            signs = face.signs
        elif isinstance(face, str):
            signs = str_to_signs(face)
        else:
            signs = tuple(face)
        if len(signs) != self.n:
            raise ArrangementError(f"sign vector of length {len(signs)}, expected {self.n}")
        try:
            return self._index[signs]
        except KeyError:
            raise ArrangementError(f"{signs_to_str(signs)!r} is not a face") from None

    def face(self, face):
        return self.faces[self.idx(face)]

    def geq(self, f1, f2):
        return self.order.geq(self.idx(f1), self.idx(f2))

    @cached_property
    def chamber_indices(self):
        return [i for i, f in enumerate(self.faces) if f.is_chamber]

    @property
    def chambers(self):
        return [self.faces[i] for i in self.chamber_indices]

    @cached_property
    def chamber_mask(self):
        m = 0
        for i in self.chamber_indices:
            m |= 1 << i
        return m

    def chambers_below(self, face):
        """Indices of chambers ``C <= face``."""
        return list(bits(self.order.down[self.idx(face)] & self.chamber_mask))

    def compose(self, f, p):
        """``F o P``: signs of F where nonzero, of P elsewhere."""
        f, p = self.face(f), self.face(p)
        return self.face(compose_signs(f.signs, p.signs))

    def compose_idx(self, i, j):
        return self._index[compose_signs(self.faces[i].signs, self.faces[j].signs)]

    def _chamber(self, c):
        c = self.face(c)
        if not c.is_chamber:
            raise ArrangementError(f"{c} is not a chamber")
        return c

    def separating_set(self, c1, c2):
        c1, c2 = self._chamber(c1), self._chamber(c2)
        return frozenset(i for i, (a, b) in enumerate(zip(c1.signs, c2.signs)) if a == -b != 0)

    def opposite_chamber(self, f, c):
        f, c = self.face(f), self._chamber(c)
        if not sign_leq(c.signs, f.signs):
            raise ArrangementError(f"chamber {c} is not below {f}")
        signs = tuple(-s if a == 0 else s for a, s in zip(f.signs, c.signs))
        return self.face(signs)

    def localize(self, f):
        """Support ``{i : sign_i(F) = 0}`` and the ideal of faces below F."""
        i = self.idx(f)
        ideal = self.order.subposet(self.order.ideal(i))
        return self.faces[i].zero_set, ideal

    def to_dict(self):
        d = self.order.to_dict()
        d["codim"] = [f.codim for f in self.faces]
        return d


@dataclass(frozen=True)
class Flat:
    hyperplanes: frozenset
    codim: int


class IntersectionPoset:
    """Nonempty intersections ordered by reverse inclusion, with Moebius values.

    Used only as an external cross-check: the Whitney numbers ``sum |mu(X)|``
    by codimension equal the Betti numbers of the complexified complement.
    """

    def __init__(self, arrangement):
        A = arrangement
        aug = [list(h.normal) + [h.offset] for h in A.hyperplanes]
        normals = [list(h.normal) for h in A.hyperplanes]

        def closure(idx):
            rows = [aug[i] for i in idx]
            r = _rank(rows, A.dim + 1)
            if r != _rank([normals[i] for i in idx], A.dim):
                return None
            return frozenset(i for i in range(len(A)) if _rank(rows + [aug[i]], A.dim + 1) == r)

        top = closure(())
        flats = {top: None}
        frontier = [top]
        while frontier:
            nxt = []
            for X in frontier:
                for i in range(len(A)):
                    if i in X:
                        continue
                    Y = closure(sorted(X | {i}))
                    if Y is not None and Y not in flats:
                        flats[Y] = None
                        nxt.append(Y)
            frontier = nxt
        items = sorted(flats, key=lambda s: (len(s), sorted(s)))
        self.flats = [Flat(s, _rank([normals[i] for i in s], A.dim)) for s in items]
        self.flats.sort(key=lambda f: (f.codim, sorted(f.hyperplanes)))
        # X >= Y iff X is contained in Y iff X lies on every hyperplane through Y
        self.order = FinitePoset.from_leq(
            [tuple(sorted(f.hyperplanes)) for f in self.flats],
            lambda lo, hi: set(lo) <= set(hi),
        )
        mu = []
        for i in range(len(self.flats)):
            strict_below = self.order.down[i] & ~(1 << i)
            mu.append(1 if not strict_below else -sum(mu[j] for j in bits(strict_below)))
        self.mobius = mu

    def whitney_numbers(self):
        top = max((f.codim for f in self.flats), default=0)
        w = [0] * (top + 1)
        for f, m in zip(self.flats, self.mobius):
            w[f.codim] += abs(m)
        return w


def intersection_poset(A):
    return IntersectionPoset(A)
