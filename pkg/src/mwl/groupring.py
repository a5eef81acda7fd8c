"""Group-ring modules: finitely supported coefficient functions with shift.

A ShiftModule realizes C-valued finitely supported functions on a
finitely generated abelian group, acted on by an abelian acting group:

  * plain modules give CG' (e.g. (Z/2)G, ZG for C = Z),
  * an action homomorphism lets the acting group work through a quotient
    (modules like C(G/H)),
  * a principal submodule presentation over a prime field with infinite
    cyclic support turns element normalization into one-variable
    staircase reduction, realizing quotient modules exactly.

Elements are stored as sorted tuples of (support coords, coefficient
coords) with no zero coefficients, so equality, hashing and set
deduplication are tuple operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct

from .errors import ConfigurationError, DomainError
from .finabelian import INFINITE, FinAbGroup, direct_sum_many, quotient_group
from .laurent import StaircaseBasis, laurent_normal_form
from .subsets import FiniteSubset, minkowski_sum

__all__ = [
    "GroupPresentation",
    "GroupElem",
    "GRElement",
    "ShiftModule",
    "SubmodulePresentation",
    "FiniteSubset",
    "gr_translate",
    "minkowski_sum",
    "orbit_sum",
    "submodule_normal_form",
    "coeff_quotient",
    "embed_subset",
]


@dataclass(frozen=True)
class GroupPresentation:
    """Z^free_rank + torsion part; free coordinates first, torsion reduced."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0 or any(t < 2 for t in self.torsion):
            raise DomainError("invalid group presentation")

    @property
    def dim(self) -> int:
        return self.free_rank + len(self.torsion)

    def reduce(self, coords) -> tuple[int, ...]:
        coords = tuple(coords)
        if len(coords) != self.dim:
            raise DomainError("coordinate length mismatch")
        d = self.free_rank
        return coords[:d] + tuple(c % t for c, t in zip(coords[d:], self.torsion))

    def element(self, coords) -> "GroupElem":
        return GroupElem(self, self.reduce(coords))

    def identity(self) -> "GroupElem":
        return GroupElem(self, (0,) * self.dim)

    def add_coords(self, a, b):
        return self.reduce(tuple(x + y for x, y in zip(a, b)))

    def neg_coords(self, a):
        return self.reduce(tuple(-x for x in a))

    def torsion_part(self):
        for tail in iproduct(*(range(t) for t in self.torsion)):
            yield tail

    def cardinality(self) -> int | float:
        if self.free_rank:
            return INFINITE
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @staticmethod
    def from_json(data) -> "GroupPresentation":
        return GroupPresentation(data["free_rank"], tuple(data.get("torsion", ())))


@dataclass(frozen=True)
class GroupElem:
    group: GroupPresentation
    coords: tuple[int, ...]

    def __add__(self, other):
        if self.group != other.group:
            raise DomainError("elements of different groups")
        return GroupElem(self.group, self.group.add_coords(self.coords, other.coords))

    def __neg__(self):
        return GroupElem(self.group, self.group.neg_coords(self.coords))

    def is_identity(self):
        return not any(self.coords)


@dataclass(frozen=True)
class SubmodulePresentation:
    """Generators of a submodule together with its closure rule.

    coeff_subgroup: the submodule of functions valued in D = <coeff
    generators> <= C, for any acting group.  principal_z: the submodule
    the generators span over the group ring, supported on infinite
    cyclic support groups with prime-field coefficients.
    """

    closure: str
    coeff_generators: tuple[tuple[int, ...], ...] = ()
    element_generators: tuple = ()

    def __post_init__(self):
        if self.closure not in ("coeff_subgroup", "principal_z"):
            raise DomainError(f"unknown submodule closure {self.closure!r}")

    @staticmethod
    def coeff_subgroup(generators) -> "SubmodulePresentation":
        return SubmodulePresentation(
            "coeff_subgroup", tuple(tuple(g) for g in generators))

    @staticmethod
    def principal(elements) -> "SubmodulePresentation":
        items = tuple(x.items if isinstance(x, GRElement) else tuple(x)
                      for x in elements)
        return SubmodulePresentation("principal_z", (), items)


@dataclass(frozen=True)
class ShiftModule:
    group: GroupPresentation                 # the acting group
    coeff: FinAbGroup
    action_target: GroupPresentation | None = None
    action_matrix: tuple[tuple[int, ...], ...] | None = None
    quotient: SubmodulePresentation | None = None

    def __post_init__(self):
        if (self.action_target is None) != (self.action_matrix is None):
            raise ConfigurationError("action homomorphism needs target and matrix")
        if self.action_matrix is not None:
            if len(self.action_matrix) != self.group.dim:
                raise ConfigurationError("action matrix has wrong number of rows")
            target = self.action_target
            for row in self.action_matrix:
                if len(row) != target.dim:
                    raise ConfigurationError("action matrix row length mismatch")
            d = self.group.dim - len(self.group.torsion)
            for i, t in enumerate(self.group.torsion):
                scaled = tuple(t * x for x in self.action_matrix[d + i])
                if any(target.reduce(scaled)):
                    raise ConfigurationError("action matrix is not a homomorphism")
        if self.quotient is not None and self.quotient.closure == "principal_z":
            support = self.support_group
            if support.free_rank != 1 or support.torsion:
                raise ConfigurationError(
                    "principal submodule reduction needs infinite cyclic support")
            if self.coeff.free_rank or len(set(self.coeff.torsion)) > 1:
                raise ConfigurationError(
                    "principal submodule reduction needs prime-field coefficients")
            self._staircase  # force validation (prime modulus, generators)

    @property
    def support_group(self) -> GroupPresentation:
        return self.action_target if self.action_target is not None else self.group

    @cached_property
    def _staircase(self) -> StaircaseBasis:
        p = self.coeff.torsion[0] if self.coeff.torsion else 0
        k = len(self.coeff.torsion)
        vectors = []
        for items in self.quotient.element_generators:
            support = {}
            for gcoords, ccoords in items:
                for pos in range(k):
                    if ccoords[pos]:
                        support[(pos, gcoords[0])] = ccoords[pos]
            if not support:
                continue
            min_deg = min(d for (_, d) in support)
            width = max(d for (_, d) in support) - min_deg + 1
            vec = [[0] * width for _ in range(k)]
            for (pos, d), c in support.items():
                vec[pos][d - min_deg] = c
            vectors.append(tuple(tuple(c) for c in vec))
        return StaircaseBasis(p, k, vectors)

    # -- elements -------------------------------------------------------

    def element(self, pairs) -> "GRElement":
        support = {}
        for gcoords, ccoords in pairs:
            g = self.support_group.reduce(tuple(gcoords))
            c = self.coeff.reduce(tuple(ccoords))
            if g in support:
                support[g] = self.coeff._add_items(support[g], c)
            else:
                support[g] = c
        items = tuple(sorted((g, c) for g, c in support.items() if any(c)))
        return GRElement(self, self._canonical(items))

    def zero(self) -> "GRElement":
        return GRElement(self, ())

    def delta(self, ccoords, at=None) -> "GRElement":
        """The function with one coefficient at one point (default identity)."""
        if at is None:
            at = (0,) * self.support_group.dim
        return self.element([(at, ccoords)])

    def _canonical(self, items):
        if self.quotient is None or self.quotient.closure != "principal_z":
            return items
        k = len(self.coeff.torsion)
        support = {}
        for gcoords, ccoords in items:
            for pos in range(k):
                if ccoords[pos]:
                    support[(pos, gcoords[0])] = ccoords[pos]
        reduced = laurent_normal_form(self._staircase, support, k)
        by_point: dict[tuple, list] = {}
        for (pos, d), coeff in reduced.items():
            by_point.setdefault((d,), [0] * k)[pos] = coeff
        return tuple(sorted((g, tuple(c)) for g, c in by_point.items()))

    # -- item protocol for FiniteSubset ----------------------------------

    def _zero_item(self):
        return ()

    def _add_items(self, x, y):
        if not x:
            return y
        if not y:
            return x
        coeff = self.coeff
        merged = []
        i = j = 0
        while i < len(x) and j < len(y):
            gx, cx = x[i]
            gy, cy = y[j]
            if gx < gy:
                merged.append(x[i])
                i += 1
            elif gy < gx:
                merged.append(y[j])
                j += 1
            else:
                s = coeff._add_items(cx, cy)
                if any(s):
                    merged.append((gx, s))
                i += 1
                j += 1
        merged.extend(x[i:])
        merged.extend(y[j:])
        return self._canonical(tuple(merged))

    def _neg_item(self, x):
        neg = self.coeff._neg_item
        return self._canonical(tuple((g, neg(c)) for g, c in x))

    def _scale_item(self, k, x):
        coeff = self.coeff
        out = []
        for g, c in x:
            scaled = coeff.reduce(tuple(k * v for v in c))
            if any(scaled):
                out.append((g, scaled))
        return self._canonical(tuple(out))

    def _translate_item(self, shift_coords, x):
        add = self.support_group.add_coords
        return self._canonical(
            tuple(sorted((add(g, shift_coords), c) for g, c in x)))

    def _element_of_item(self, item) -> "GRElement":
        return GRElement(self, item)

    def action_shift(self, s: GroupElem) -> tuple[int, ...]:
        """Support translation realized by an acting group element."""
        if s.group != self.group:
            raise DomainError("element not in the acting group")
        if self.action_matrix is None:
            return s.coords
        target = self.support_group
        vec = [sum(s.coords[i] * self.action_matrix[i][j]
                   for i in range(self.group.dim))
               for j in range(target.dim)]
        return target.reduce(vec)

    # -- global structure -------------------------------------------------

    def cardinality(self) -> int | float:
        if self.quotient is not None and self.quotient.closure == "principal_z":
            if self._staircase.is_finite_quotient:
                return self._staircase.residue_count()
            return INFINITE
        support_card = self.support_group.cardinality()
        coeff_card = self.coeff.cardinality()
        if support_card == INFINITE or coeff_card == INFINITE:
            return INFINITE if coeff_card != 1 else 1
        return coeff_card ** support_card

    def to_json(self):
        out = {"group": self.group.to_json(),
               "coeff": {"free_rank": self.coeff.free_rank,
                         "torsion": list(self.coeff.torsion)}}
        if self.action_matrix is not None:
            out["action_target"] = self.action_target.to_json()
            out["action_hom"] = [list(r) for r in self.action_matrix]
        if self.quotient is not None:
            if self.quotient.closure == "coeff_subgroup":
                out["quotient"] = {
                    "closure": "coeff_subgroup",
                    "generators": [list(g) for g in self.quotient.coeff_generators],
                }
            else:
                out["quotient"] = {
                    "closure": "principal_z",
                    "p": self.coeff.torsion[0],
                    "generators": [
                        [[list(g), list(c)] for g, c in items]
                        for items in self.quotient.element_generators
                    ],
                }
        return out

    @staticmethod
    def from_json(data) -> "ShiftModule":
        group = GroupPresentation.from_json(data["group"])
        coeff = FinAbGroup(tuple(data["coeff"].get("torsion", ())),
                           data["coeff"].get("free_rank", 0))
        target = matrix = None
        if "action_hom" in data:
            target = GroupPresentation.from_json(data["action_target"])
            matrix = tuple(tuple(r) for r in data["action_hom"])
        quotient = None
        qdata = data.get("quotient")
        if qdata is not None:
            if qdata["closure"] == "coeff_subgroup":
                quotient = SubmodulePresentation.coeff_subgroup(qdata["generators"])
            elif qdata["closure"] == "principal_z":
                if coeff.torsion and qdata.get("p") not in (None, coeff.torsion[0]):
                    raise ConfigurationError("modulus does not match the coefficients")
                gens = [tuple((tuple(g), tuple(c)) for g, c in items)
                        for items in qdata["generators"]]
                quotient = SubmodulePresentation("principal_z", (), tuple(gens))
            else:
                raise ConfigurationError(f"unknown closure {qdata['closure']!r}")
        return ShiftModule(group, coeff, target, matrix, quotient)

    def elements(self):
        """Enumerate a finite module."""
        if self.quotient is not None and self.quotient.closure == "principal_z":
            k = len(self.coeff.torsion)
            for residue in self._staircase.enumerate_residues():
                by_point: dict[tuple, list] = {}
                for pos, poly in enumerate(residue):
                    for d, c in enumerate(poly):
                        if c:
                            by_point.setdefault((d,), [0] * k)[pos] = c
                yield GRElement(self, tuple(sorted(
                    (g, tuple(c)) for g, c in by_point.items())))
            return
        if self.cardinality() == INFINITE:
            raise DomainError("cannot enumerate an infinite module")
        if self.coeff.cardinality() == 1:
            yield self.zero()
            return
        points = list(iproduct(*[range(t) for t in self.support_group.torsion]))
        coeffs = [tuple(x.coords) for x in self.coeff.elements()]
        for assignment in iproduct(coeffs, repeat=len(points)):
            items = tuple(sorted(
                (pt, c) for pt, c in zip(points, assignment) if any(c)))
            yield GRElement(self, items)


@dataclass(frozen=True)
class GRElement:
    module: ShiftModule
    items: tuple

    def items_key(self):
        return self.items

    def __add__(self, other):
        if self.module != other.module:
            raise DomainError("elements of different modules")
        return GRElement(self.module, self.module._add_items(self.items, other.items))

    def __neg__(self):
        return GRElement(self.module, self.module._neg_item(self.items))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return GRElement(self.module, self.module._scale_item(k, self.items))

    def is_zero(self):
        return not self.items

    def translate(self, s: GroupElem) -> "GRElement":
        shift = self.module.action_shift(s)
        return GRElement(self.module, self.module._translate_item(shift, self.items))

    def support(self):
        return tuple(g for g, _ in self.items)


def gr_translate(s: GroupElem, a: FiniteSubset) -> FiniteSubset:
    """The translated set {s.x : x in a}; same size as a."""
    module = a.ambient
    shift = module.action_shift(s)
    return FiniteSubset.from_items(
        module, {module._translate_item(shift, x) for x in a.items})


def orbit_sum(a: FiniteSubset, folner_set) -> FiniteSubset:
    """Minkowski sum of the translates of a by the inverses of the set."""
    folner_set = list(folner_set)
    if not folner_set:
        raise DomainError("orbit sums need a nonempty translate set")
    module = a.ambient
    total = None
    for s in folner_set:
        translated = gr_translate(-s, a)
        total = translated if total is None else minkowski_sum(total, translated)
    return total


def submodule_normal_form(m: ShiftModule, x: GRElement) -> GRElement:
    """Canonical representative of x modulo the presented submodule."""
    if m.quotient is None or m.quotient.closure != "principal_z":
        raise ConfigurationError("module carries no principal submodule presentation")
    if x.module == m:
        return x
    plain = ShiftModule(m.group, m.coeff, m.action_target, m.action_matrix)
    if x.module != plain:
        raise DomainError("element does not live over the same group and coefficients")
    return m.element([(g, c) for g, c in x.items])


def coeff_quotient(m: ShiftModule, d_generators):
    """Quotient by the coefficient subgroup D = <generators>.

    Returns the shift module over C/D and the coefficient-wise
    projection on elements; the projection commutes with the action.
    """
    if m.quotient is not None:
        raise ConfigurationError("module already carries a quotient structure")
    gens = [m.coeff.element(c) for c in d_generators]
    quot, proj = quotient_group(m.coeff, gens)
    target = ShiftModule(m.group, quot, m.action_target, m.action_matrix)

    def project(x: GRElement) -> GRElement:
        if x.module != m:
            raise DomainError("element not in the source module")
        return target.element(
            [(g, proj(m.coeff._element_of_item(c)).coords) for g, c in x.items])

    return target, project


def project_subset(project, a: FiniteSubset) -> FiniteSubset:
    elems = [project(x) for x in a]
    return FiniteSubset.of(elems[0].module, elems)


def embed_subset(a: FiniteSubset):
    """Embed a finite set of module elements into one abelian group.

    Returns (ambient FinAbGroup, FiniteSubset of its elements).  The
    embedding is coefficient-wise over the union of supports (or over
    the residue window for a principal quotient module), is injective
    and additive, so spans, ranks and torsion counts agree with the
    module-side set.
    """
    module = a.ambient
    if module.quotient is not None and module.quotient.closure == "principal_z":
        stair = module._staircase
        if not stair.is_finite_quotient:
            raise ConfigurationError("embedding needs a finite quotient")
        p = module.coeff.torsion[0]
        k = len(module.coeff.torsion)
        degs = {}
        for row in stair.rows:
            pos = stair._pivot(row)
            degs[pos] = len(row[pos]) - 1
        slots = [(pos, d) for pos in range(k) for d in range(degs[pos])]
        index = {s: i for i, s in enumerate(slots)}
        ambient = FinAbGroup((p,) * len(slots), 0)
        elems = []
        for x in a:
            coords = [0] * len(slots)
            for g, c in x.items:
                for pos in range(k):
                    if c[pos]:
                        coords[index[(pos, g[0])]] = c[pos]
            elems.append(ambient.element(coords))
        return ambient, FiniteSubset.of(ambient, elems)

    points = sorted({g for x in a for g, _ in x.items})
    if not points:
        points = [(0,) * module.support_group.dim]
    ambient, embeddings = direct_sum_many([module.coeff] * len(points))
    index = {pt: i for i, pt in enumerate(points)}
    elems = []
    for x in a:
        total = ambient.zero()
        for g, c in x.items:
            total = total + embeddings[index[g]](module.coeff._element_of_item(c))
        elems.append(total)
    return ambient, FiniteSubset.of(ambient, elems)
