"""Folner boxes, ratio tables, limit certificates and addition reports.

The net limit over increasingly invariant sets is evaluated along box
sequences [0,n)^d times the full finite part.  Ratios l(A^[F_n])/|F_n|
are exact, and a limit value is only claimed exactly when a structural
certificate proves it for every finite translate set, not just the
computed prefix:

  product-structure  the witness is supported at a single point, or
                     consists of scalar multiples of one nonzero element
                     over domain coefficients (Z or a prime field with
                     torsion-free support): distinct translates are then
                     independent, l(A^[F]) = |F| * l(A) for every finite
                     F, and the net ratio is constant;
  finite-module      a finite module under an infinite acting group has
                     bounded values, so the limit is zero;
  constant           every computed ratio is the same exact value; this
                     is evidence about a prefix, reported without an
                     exactness claim (a finite quotient looks constant
                     before it saturates).

Computed rows are always checked against an applicable structural rule,
so a disagreement raises instead of misreporting.  Orbit sets that would
overflow the subset cap truncate the table and mark it, unless a
certified counting rule covers the missing rows (the structural rule
above, or the per-row integer-rank rule of certified_scalar_counter).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigurationError, DomainError, SetSizeLimitError
from .finabelian import INFINITE
from .groupring import (
    GRElement,
    GroupElem,
    GroupPresentation,
    ShiftModule,
    SubmodulePresentation,
    coeff_quotient,
    embed_subset,
    gr_translate,
    orbit_sum,
    submodule_normal_form,
)
from .intmat import row_basis
from .subsets import FiniteSubset, union
from .values import (
    LengthValue,
    MeanRatio,
    ratio_add,
    ratio_cmp,
    ratio_eq,
    ratio_le,
    ratio_min,
    value_add,
    value_cmp,
    value_le,
)
from .weaklength import WeakLengthSpec, eval_weak_length

DEFAULT_N_MAX_BUDGET = 4096  # coefficient_card ** n_max stays near this


@dataclass(frozen=True)
class InvarianceParams:
    k_set: tuple[GroupElem, ...]
    delta: Fraction

    def __post_init__(self):
        if not (0 < self.delta <= 1):
            raise DomainError("delta must lie in (0, 1]")


@dataclass(frozen=True)
class InvarianceCheck:
    invariant: bool
    interior_count: int
    size: int


def is_invariant(folner_set, params: InvarianceParams) -> InvarianceCheck:
    """Exact (K, delta)-invariance check with the interior count."""
    members = set(x.coords for x in folner_set)
    if not members:
        raise DomainError("invariance is defined for nonempty sets")
    count = 0
    for s in folner_set:
        if all((k + s).coords in members for k in params.k_set):
            count += 1
    ok = count >= (1 - params.delta) * len(members)
    return InvarianceCheck(bool(ok), count, len(members))


@dataclass(frozen=True)
class FolnerBoxes:
    """Boxes [0,n)^d times the full finite part of the acting group."""

    group: GroupPresentation
    n_max: int

    def __post_init__(self):
        if self.n_max < 1:
            raise DomainError("n_max must be at least 1")

    def box(self, n: int) -> list[GroupElem]:
        from itertools import product as iproduct

        d = self.group.free_rank
        out = []
        for free in iproduct(range(n), repeat=d):
            for tail in self.group.torsion_part():
                out.append(self.group.element(free + tail))
        return out

    def size(self, n: int) -> int:
        card = 1
        for t in self.group.torsion:
            card *= t
        return n ** self.group.free_rank * card

    def to_json(self):
        return {"kind": "boxes", "n_max": self.n_max}

    @staticmethod
    def from_json(group: GroupPresentation, data) -> "FolnerBoxes":
        if data.get("kind", "boxes") != "boxes":
            raise ConfigurationError(f"unknown Folner kind {data.get('kind')!r}")
        return FolnerBoxes(group, data["n_max"])


def default_n_max(module: ShiftModule) -> int:
    card = module.coeff.cardinality()
    if card == INFINITE or card <= 2:
        return 12
    n = 1
    while card ** (n + 1) <= DEFAULT_N_MAX_BUDGET:
        n += 1
    return max(1, n)


@dataclass(frozen=True)
class RatioRow:
    n: int
    folner_size: int
    value: LengthValue
    ratio: MeanRatio
    method: str  # enumerated | certified

    def to_json(self):
        out = {"n": self.n, "folner_size": self.folner_size,
               "count_or_value": self.value.to_json(), "method": self.method}
        out.update(self.ratio.to_json())
        return out


@dataclass(frozen=True)
class CertificateInfo:
    kind: str | None            # constant | finite-module | constant-box | None
    ratio: MeanRatio | None
    exact: bool


@dataclass(frozen=True)
class MeanEstimate:
    spec: WeakLengthSpec
    rows: tuple[RatioRow, ...]
    running_inf: MeanRatio
    zero_in_a: bool
    symmetric_a: bool
    length_induced: bool
    constant_exact: bool
    strongly_subadditive: bool
    truncated_at: int | None
    fekete_checked: bool
    fekete_ok: bool | None
    doubling_ok: bool | None
    limit: CertificateInfo

    def to_json(self):
        return {
            "spec": self.spec.to_json(),
            "rows": [r.to_json() for r in self.rows],
            "running_inf": self.running_inf.to_json(),
            "flags": {
                "zero_in_A": self.zero_in_a,
                "symmetric_A": self.symmetric_a,
                "length_induced": self.length_induced,
                "constant_exact": self.constant_exact,
                "strongly_subadditive": self.strongly_subadditive,
            },
            "truncated_at": self.truncated_at,
            "fekete": {"checked": self.fekete_checked, "ok": self.fekete_ok},
            "doubling_ok": self.doubling_ok,
            "limit": {
                "certificate": self.limit.kind,
                "ratio": None if self.limit.ratio is None else self.limit.ratio.to_json(),
                "exact": self.limit.exact,
            },
        }


def product_structure_value(module: ShiftModule, a: FiniteSubset,
                            spec: WeakLengthSpec) -> LengthValue | None:
    """Per-translate value v with l(A^[F]) = |F| * v for every finite F.

    Two witness shapes admit the a-priori argument (plain modules only;
    an action through a quotient or a submodule reduction breaks the
    independence of translates):

      * every element supported at one common point: translates occupy
        disjoint points and values over disjoint points multiply;
      * all elements scalar multiples of one nonzero element, over Z or
        a prime field with torsion-free support: the group ring is then
        a domain and distinct scalar combinations stay distinct.
    """
    if module.action_matrix is not None or module.quotient is not None:
        return None
    if _single_point_witness(a) or _scalar_multiples_witness(module, a):
        return eval_module_subset(spec, a)
    return None


def _single_point_witness(a: FiniteSubset) -> bool:
    points = {g for item in a.items for g, _ in item}
    return len(points) <= 1


def _scalar_multiples_witness(module: ShiftModule, a: FiniteSubset) -> bool:
    coeff = module.coeff
    if coeff.ambient_dim != 1:
        return False
    if coeff.torsion:
        p = coeff.torsion[0]
        if any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            return False
    elif coeff.free_rank != 1:
        return False
    if module.support_group.torsion:
        return False
    modulus = coeff.torsion[0] if coeff.torsion else 0
    points = sorted({g for item in a.items for g, _ in item})
    index = {g: i for i, g in enumerate(points)}
    vectors = []
    for item in a.items:
        vec = [0] * len(points)
        for g, c in item:
            vec[index[g]] = c[0]
        vectors.append(vec)
    # rank <= 1: all 2x2 minors vanish (mod p when coefficients are Z/p)
    for x in vectors:
        for y in vectors:
            for i in range(len(points)):
                for j in range(i + 1, len(points)):
                    minor = x[i] * y[j] - x[j] * y[i]
                    if (minor % modulus) if modulus else minor:
                        return False
    return True


def _scaled_value(v: LengthValue, size: int) -> LengthValue:
    if v.is_infinite():
        return v
    if v.kind == "log":
        return LengthValue.log_count(v.count ** size)
    return LengthValue.rational(v.q * size)


def eval_module_subset(spec: WeakLengthSpec, subset: FiniteSubset) -> LengthValue:
    """Evaluate a weak length on a finite set of module elements."""
    if spec.kind == "log_card":
        return LengthValue.log_count(len(subset))
    if spec.kind == "tors_log":
        # coefficient-wise test on raw items; scaling keeps canonical
        # residues canonical, so no renormalization is needed
        coeff = subset.ambient.coeff
        torsion, width = coeff.torsion, coeff.ambient_dim
        k = spec.k
        count = 0
        for item in subset.items:
            for _, c in item:
                for i in range(width):
                    v = k * c[i]
                    if (v % torsion[i]) if i < len(torsion) else v:
                        break
                else:
                    continue
                break
            else:
                count += 1
        if count == 0:
            raise DomainError("set meets no k-torsion")
        return LengthValue.log_count(count)
    ambient, embedded = embed_subset(subset)
    return eval_weak_length(spec, ambient, embedded)


def _span_value(spec: WeakLengthSpec, a: FiniteSubset, box) -> LengthValue:
    # For 0 in A and a length-induced spec, the submodule generated by
    # the orbit sum equals the one generated by the union of translates,
    # so the value comes from |F| * |A| generators instead of the full sum.
    gens = None
    for s in box:
        t = gr_translate(-s, a)
        gens = t if gens is None else union(gens, t)
    return eval_module_subset(spec, gens)


def ratio_sequence(module: ShiftModule, a: FiniteSubset, spec: WeakLengthSpec,
                   seq: FolnerBoxes, count_certifier=None) -> MeanEstimate:
    """Exact ratio table l(A^[F_n]) / |F_n| for n = 1..n_max."""
    if a.ambient != module:
        raise DomainError("witness does not live in the module")
    zero_in_a = a.contains_zero()
    symmetric_a = a.is_symmetric()
    use_span = spec.length_induced and zero_in_a
    structural = product_structure_value(module, a, spec)

    from .subsets import SET_CAP

    rows = []
    values = {}
    truncated_at = None
    for n in range(1, seq.n_max + 1):
        box = seq.box(n)
        size = seq.size(n)
        expected = None if structural is None else _scaled_value(structural, size)
        certified = None
        if count_certifier is not None and spec.kind == "log_card":
            certified = count_certifier(n)
        if certified is not None and certified > SET_CAP:
            # provably beyond the enumeration cap; use the certified count
            value = LengthValue.log_count(certified)
            method = "certified"
        else:
            try:
                if use_span:
                    value = _span_value(spec, a, box)
                else:
                    value = eval_module_subset(spec, orbit_sum(a, box))
                method = "enumerated"
            except SetSizeLimitError:
                if certified is not None:
                    value = LengthValue.log_count(certified)
                elif expected is not None:
                    value = expected
                else:
                    truncated_at = n
                    break
                method = "certified"
            if method == "enumerated" and certified is not None and certified != value.count:
                raise ConfigurationError(
                    f"certified count {certified} disagrees with enumeration "
                    f"{value.count} at n={n}")
        if expected is not None and value_cmp(value, expected) != 0:
            raise ConfigurationError(
                f"structural value {expected} disagrees with the computed "
                f"value {value} at n={n}")
        values[n] = value
        rows.append(RatioRow(n, size, value, MeanRatio(value, size), method))
    if not rows:
        raise ConfigurationError("no Folner box could be evaluated under the cap")

    ratios = [r.ratio for r in rows]
    finite_ratios = [r for r in ratios if not r.value.is_infinite()]
    running_inf = ratio_min(finite_ratios) if finite_ratios else ratios[0]
    constant_exact = all(ratio_eq(r, ratios[0]) for r in ratios[1:])
    strongly_subadditive = spec.length_induced and symmetric_a and zero_in_a

    fekete_checked = zero_in_a and module.group.free_rank == 1
    fekete_ok = None
    if fekete_checked:
        fekete_ok = True
        for n in values:
            for m in values:
                if n + m in values:
                    bound = value_add(values[n], values[m])
                    if not value_le(values[n + m], bound):
                        fekete_ok = False
    doubling_ok = None
    if strongly_subadditive:
        doubling_ok = all(
            ratio_le(values_ratio(rows, 2 * n), values_ratio(rows, n))
            for n in values if 2 * n in values)

    limit = _limit_certificate(module, structural, ratios[0], constant_exact)
    return MeanEstimate(
        spec=spec, rows=tuple(rows), running_inf=running_inf,
        zero_in_a=zero_in_a, symmetric_a=symmetric_a,
        length_induced=spec.length_induced, constant_exact=constant_exact,
        strongly_subadditive=strongly_subadditive, truncated_at=truncated_at,
        fekete_checked=fekete_checked, fekete_ok=fekete_ok,
        doubling_ok=doubling_ok, limit=limit)


def values_ratio(rows, n):
    for r in rows:
        if r.n == n:
            return r.ratio
    raise KeyError(n)


def _limit_certificate(module, structural, first_ratio, constant_exact) -> CertificateInfo:
    if structural is not None:
        return CertificateInfo("product-structure", MeanRatio(structural, 1), True)
    if module.cardinality() != INFINITE and module.group.cardinality() == INFINITE:
        return CertificateInfo("finite-module", MeanRatio(LengthValue.log_count(1), 1), True)
    if constant_exact:
        # prefix evidence only: a finite quotient looks constant early on
        return CertificateInfo("constant", first_ratio, False)
    return CertificateInfo(None, None, False)


def certified_scalar_counter(module: ShiftModule, f: GRElement, scalar_count: int,
                             seq: FolnerBoxes):
    """Counting rule for witnesses {j*f : 0 <= j < N} over Z coefficients.

    |A^[F_n]| = N^n holds whenever the translates of f over the box are
    linearly independent over Z; that rank is computed exactly per n, so
    the returned count is certified, not assumed.  Returns a callable
    n -> count or None.
    """
    if module.coeff.torsion or module.coeff.free_rank != 1:
        raise ConfigurationError("scalar counting rule needs integer coefficients")
    if f.module != module or f.is_zero():
        raise ConfigurationError("scalar counting rule needs a nonzero module element")

    def counter(n: int):
        box = seq.box(n)
        translates = [next(iter(gr_translate(-s, FiniteSubset.of(module, [f]))))
                      for s in box]
        points = sorted({g for x in translates for g, _ in x.items})
        index = {p: i for i, p in enumerate(points)}
        matrix = []
        for x in translates:
            row = [0] * len(points)
            for g, c in x.items:
                row[index[g]] = c[0]
            matrix.append(row)
        if len(row_basis(matrix)) != len(box):
            return None
        return scalar_count ** len(box)

    return counter


@dataclass(frozen=True)
class LowerBoundReport:
    estimates: tuple[MeanEstimate, ...]
    bound: MeanRatio | None
    best_witness: int | None

    def to_json(self):
        return {
            "witnesses": [e.to_json() for e in self.estimates],
            "bound": None if self.bound is None else self.bound.to_json(),
            "best_witness": self.best_witness,
        }


def mean_lower_bound(module: ShiftModule, witnesses, spec: WeakLengthSpec,
                     seq: FolnerBoxes) -> LowerBoundReport:
    """Best certified witness value; a lower bound for the module mean.

    Only witnesses containing 0 contribute to the bound channel (the
    mean is a sup over base-pointed sets); per-witness running infima
    are reported alongside as upper bounds for those witnesses' limits.
    """
    estimates = []
    bound = None
    best = None
    for i, w in enumerate(witnesses):
        est = ratio_sequence(module, w, spec, seq)
        estimates.append(est)
        if est.zero_in_a and est.limit.exact and est.limit.ratio is not None:
            if bound is None or ratio_cmp(est.limit.ratio, bound) > 0:
                bound = est.limit.ratio
                best = i
    return LowerBoundReport(tuple(estimates), bound, best)


@dataclass(frozen=True)
class AdditionReport:
    total: MeanEstimate
    submodule: MeanEstimate
    quotient: MeanEstimate
    verdict: str                      # EXACT-EQUAL | VALUES-DIFFER | BOUNDS-ONLY
    easy_direction_ok: bool
    easy_rows: tuple

    def to_json(self):
        return {
            "total": self.total.to_json(),
            "submodule": self.submodule.to_json(),
            "quotient": self.quotient.to_json(),
            "verdict": self.verdict,
            "easy_direction_ok": self.easy_direction_ok,
            "easy_rows": [
                {"n": n, "total": t.to_json(), "parts": p.to_json()}
                for (n, t, p) in self.easy_rows
            ],
        }


def quotient_module_of(m2: ShiftModule, n1: SubmodulePresentation):
    """The quotient module of m2 by the presented submodule, with projection."""
    if m2.quotient is not None:
        raise ConfigurationError("total module must be a plain shift module")
    if n1.closure == "coeff_subgroup":
        return coeff_quotient(m2, [list(g) for g in n1.coeff_generators])
    quot = ShiftModule(m2.group, m2.coeff, m2.action_target, m2.action_matrix,
                       quotient=n1)
    return quot, lambda x: submodule_normal_form(quot, x)


def submodule_contains(m2: ShiftModule, n1: SubmodulePresentation, x: GRElement) -> bool:
    _, project = quotient_module_of(m2, n1)
    return project(x).is_zero()


def addition_report(m2: ShiftModule, n1: SubmodulePresentation,
                    witness_submodule: FiniteSubset, witness_total: FiniteSubset,
                    witness_quotient_lift: FiniteSubset, spec: WeakLengthSpec,
                    seq: FolnerBoxes) -> AdditionReport:
    """Three ratio tables and the exact addition-formula verdict.

    The submodule witness must lie inside the presented submodule; its
    orbit sums then stay there, so its table is the submodule's own mean
    data computed inside the ambient module.  The quotient witness is
    given as a lift in the total module and pushed through the
    projection.  The easy direction l((B+B1)^[F]) >= l(B^[F]) + l(C^[F])
    is checked exactly row by row.
    """
    quot, project = quotient_module_of(m2, n1)
    for x in witness_submodule:
        if not project(x).is_zero():
            raise DomainError("submodule witness leaves the submodule")

    pushed = FiniteSubset.of(quot, [project(x) for x in witness_quotient_lift])

    est_total = ratio_sequence(m2, witness_total, spec, seq)
    est_sub = ratio_sequence(m2, witness_submodule, spec, seq)
    est_quot = ratio_sequence(quot, pushed, spec, seq)

    # easy direction on the combined witness A = B + B1
    from .subsets import minkowski_sum

    combined = minkowski_sum(witness_submodule, witness_quotient_lift)
    easy_rows = []
    easy_ok = True
    for n in range(1, seq.n_max + 1):
        box = seq.box(n)
        try:
            a_val = eval_module_subset(spec, orbit_sum(combined, box))
            b_val = eval_module_subset(spec, orbit_sum(witness_submodule, box))
            c_val = eval_module_subset(spec, orbit_sum(pushed, box))
        except SetSizeLimitError:
            break
        parts = value_add(b_val, c_val)
        easy_rows.append((n, a_val, parts))
        if not value_le(parts, a_val):
            easy_ok = False

    limits = (est_total.limit, est_sub.limit, est_quot.limit)
    if all(l.exact and l.ratio is not None for l in limits):
        total_l, sub_l, quot_l = (l.ratio for l in limits)
        if ratio_eq(total_l, ratio_add(sub_l, quot_l)):
            verdict = "EXACT-EQUAL"
        else:
            verdict = "VALUES-DIFFER"
    else:
        verdict = "BOUNDS-ONLY"
    return AdditionReport(est_total, est_sub, est_quot, verdict, easy_ok,
                          tuple(easy_rows))
