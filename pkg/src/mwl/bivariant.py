"""Bivariant upgradings of weak lengths and their kernel witnesses.

Two upgradings are implemented:

  cover_log        l(A, B) = min log|C| over covers A <= C + B, paired
                   with log-cardinality.  The minimum is found by an
                   exact branch-and-bound set-cover search over the
                   candidate translates C <= A - B (any useful c lies
                   there), with a greedy upper bound and a deterministic
                   lexicographically-least minimizing cover.

  quotient_length  l(A, B) = L(<image of A in M/<B>>) for a base length
                   L in {rank, nu}.

kernel_witness builds, for a homomorphism phi, a finite B inside ker phi
that realizes l(A, B) = l(phi(A)) exactly: the difference-set witness
(A - A) meet ker phi for the cover upgrading, and a generating set of
<A> meet ker phi for the quotient upgrading (exact over Z, so no
epsilon slack is needed).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigurationError, DomainError
from .finabelian import (
    AbHom,
    FinAbGroup,
    direct_sum,
    intersect_subgroups,
    quotient_group,
)
from .sampling import (
    XorShift64Star,
    random_automorphism,
    random_finite_group,
    random_hom,
    random_subset,
)
from .subsets import (
    FiniteSubset,
    difference_set,
    map_subset,
    minkowski_sum,
    product_subset,
)
from .values import LengthValue, value_add, value_cmp
from .weaklength import NU, RANK, WeakLengthSpec, eval_weak_length

MAX_COVER_CANDIDATES = 24


@dataclass(frozen=True)
class BivariantSpec:
    kind: str                          # cover_log | quotient_length
    base: WeakLengthSpec | None = None

    def __post_init__(self):
        if self.kind == "cover_log":
            if self.base is not None:
                raise DomainError("cover_log takes no base length")
        elif self.kind == "quotient_length":
            if self.base not in (RANK, NU):
                raise DomainError("quotient_length pairs with rank or nu")
        else:
            raise DomainError(f"unknown bivariant kind {self.kind!r}")

    def to_json(self):
        if self.kind == "cover_log":
            return {"kind": "cover_log"}
        return {"kind": "quotient_length", "base": self.base.kind}

    @staticmethod
    def from_json(data) -> "BivariantSpec":
        if data["kind"] == "cover_log":
            return BivariantSpec("cover_log")
        return BivariantSpec("quotient_length", WeakLengthSpec(data["base"]))

    def __str__(self):
        return self.kind if self.kind == "cover_log" else f"quotient_length[{self.base}]"


COVER_LOG = BivariantSpec("cover_log")


def cover_bivariant(g: FinAbGroup, a: FiniteSubset, b: FiniteSubset,
                    max_candidates: int = MAX_COVER_CANDIDATES):
    """Exact min-cover value with a deterministic minimizing cover.

    Returns (LengthValue log of the minimum cover size, witness cover).
    Ties among minimum covers break toward the lexicographically least
    set of canonical coordinates.
    """
    if a.ambient != g or b.ambient != g:
        raise DomainError("sets must live in the given group")
    candidates_set = difference_set(a, b)
    if len(candidates_set) > max_candidates:
        raise ConfigurationError(
            f"cover search over {len(candidates_set)} candidates exceeds the "
            f"cap of {max_candidates}")

    targets = sorted(a.items)
    index = {item: i for i, item in enumerate(targets)}
    full = (1 << len(targets)) - 1
    add = g._add_items

    candidates = []
    for c in sorted(candidates_set.items):
        mask = 0
        for y in b.items:
            hit = index.get(add(c, y))
            if hit is not None:
                mask |= 1 << hit
        if mask:
            candidates.append((c, mask))

    cover_all = 0
    for _, mask in candidates:
        cover_all |= mask
    assert cover_all == full  # every a = a - y + y with y in b is coverable

    # Greedy seed for the upper bound.
    best_size = 0
    covered = 0
    while covered != full:
        _, gain_mask = max(candidates, key=lambda cm: bin(cm[1] & ~covered).count("1"))
        covered |= gain_mask
        best_size += 1

    suffix_union = [0] * (len(candidates) + 1)
    for i in range(len(candidates) - 1, -1, -1):
        suffix_union[i] = suffix_union[i + 1] | candidates[i][1]

    best = best_size

    def search(pos, covered, chosen, bound):
        # returns a minimal cover of size <= bound extending `chosen`, or None
        if covered == full:
            return list(chosen)
        if bound == 0 or (covered | suffix_union[pos]) != full:
            return None
        for i in range(pos, len(candidates)):
            c, mask = candidates[i]
            if mask & ~covered == 0:
                continue
            chosen.append(c)
            found = search(i + 1, covered | mask, chosen, bound - 1)
            chosen.pop()
            if found is not None:
                # first hit at the current bound is lexicographically least
                return found
        return None

    # Shrink the bound until no smaller cover exists; the final DFS runs
    # at the optimum, so its first hit is the lex-least minimum cover.
    witness = None
    while True:
        found = search(0, 0, [], best)
        if found is None:
            break
        witness = found
        best = len(witness) - 1

    assert witness is not None
    return LengthValue.log_count(len(witness)), FiniteSubset.from_items(g, witness)


def quotient_bivariant(spec: BivariantSpec, g: FinAbGroup,
                       a: FiniteSubset, b: FiniteSubset) -> LengthValue:
    """Base length of the image of a in g/<b>."""
    if spec.kind != "quotient_length":
        raise DomainError("quotient_bivariant needs a quotient_length spec")
    if a.ambient != g or b.ambient != g:
        raise DomainError("sets must live in the given group")
    quot, proj = quotient_group(g, list(b))
    return eval_weak_length(spec.base, quot, map_subset(proj, a))


def bivariant_eval(spec: BivariantSpec, g, a, b, max_candidates=MAX_COVER_CANDIDATES) -> LengthValue:
    if spec.kind == "cover_log":
        value, _ = cover_bivariant(g, a, b, max_candidates)
        return value
    return quotient_bivariant(spec, g, a, b)


def unary_value(spec: BivariantSpec, g, a) -> LengthValue:
    """The weak length the bivariant spec upgrades, evaluated on a."""
    if spec.kind == "cover_log":
        return LengthValue.log_count(len(a))
    return eval_weak_length(spec.base, g, a)


def kernel_witness(spec: BivariantSpec, phi: AbHom, a: FiniteSubset,
                   epsilon=None) -> FiniteSubset:
    """Finite B <= ker phi with l(A, B) = l(phi(A)).

    For cover_log this is (A - A) meet ker phi together with 0.  For
    quotient_length it is a generating set of <A> meet ker phi, which
    attains the bound exactly (epsilon, accepted for interface parity,
    must be >= 0 and is otherwise unused).
    """
    if epsilon is not None and epsilon < 0:
        raise DomainError("epsilon must be non-negative")
    g = phi.source
    if a.ambient != g:
        raise DomainError("set must live in the source of the homomorphism")

    if spec.kind == "cover_log":
        diffs = difference_set(a, a)
        members = [x for x in diffs if phi(x).is_zero()]
        return FiniteSubset.of(g, members + [g.zero()])

    span_gens = list(a)
    ker_rows = _kernel_generators(phi)
    gens = intersect_subgroups(g, span_gens, ker_rows) if ker_rows else []
    return FiniteSubset.of(g, gens + [g.zero()])


def _kernel_generators(phi: AbHom):
    from .finabelian import hom_kernel

    ker, incl = hom_kernel(phi)
    n = ker.ambient_dim
    gens = []
    for i in range(n):
        gens.append(incl(ker.element([1 if j == i else 0 for j in range(n)])))
    return gens


@dataclass(frozen=True)
class UpgradingReport:
    spec: BivariantSpec
    passed: bool
    checked: int
    counterexample: dict | None = None

    def to_json(self):
        out = {"spec": self.spec.to_json(), "passed": self.passed, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _upgrading_instances(seed: int, max_order: int, max_set: int):
    rng = XorShift64Star(seed)
    while True:
        g = random_finite_group(rng, max_order)
        h = random_finite_group(rng, max_order)
        gs = random_finite_group(rng, 9)
        inst = {
            "group": g,
            "a": random_subset(rng, g, max_set),
            "b": random_subset(rng, g, max_set),
            "c": random_subset(rng, g, max_set),
            "phi": random_hom(rng, g, h),
            "iso": random_automorphism(rng, g),
            # small zero-adjoined pairs for the sum and product identities
            "a2": random_subset(rng, g, 2, adjoin_zero=True),
            "b2": random_subset(rng, g, 2, adjoin_zero=True),
            "a3": random_subset(rng, g, 2, adjoin_zero=True),
            "b3": random_subset(rng, g, 2, adjoin_zero=True),
            "g_small": gs,
            "sa": random_subset(rng, gs, 2, adjoin_zero=True),
            "sb": random_subset(rng, gs, 2, adjoin_zero=True),
        }
        yield inst


def check_upgrading_proper(spec: BivariantSpec, seed: int, budget: int,
                           max_order: int = 36, max_set: int = 6) -> UpgradingReport:
    """Verify the proper-upgrading inequalities on seeded instances.

    Per instance: regularity, the triangle inequality, the derived bound
    l(A) <= l(A,B) + l(B), the sum bound, quotient monotonicity, the
    direct-product identity, invariance, and the kernel-witness
    postcondition.  The sum and product identities are checked on small
    base-pointed pairs; without a common base point the generated
    submodule of a product set is smaller than the product of the
    generated submodules and the identities are simply false.
    """
    if budget < 1:
        raise DomainError("budget must be at least 1")
    stream = _upgrading_instances(seed, max_order, max_set)
    for index in range(budget):
        witness = _check_upgrading_instance(spec, next(stream))
        if witness is not None:
            witness["sample_index"] = index
            return UpgradingReport(spec, False, index + 1, witness)
    return UpgradingReport(spec, True, budget)


def _check_upgrading_instance(spec: BivariantSpec, inst) -> dict | None:
    g = inst["group"]
    a, b, c = inst["a"], inst["b"], inst["c"]
    phi, iso = inst["phi"], inst["iso"]

    ev = lambda G, x, y: bivariant_eval(spec, G, x, y, max_candidates=72)

    # regularity
    zero_set = FiniteSubset.of(g, [g.zero()])
    if not ev(g, zero_set, zero_set).is_zero():
        return {"law": "regularity"}

    # triangle and the derived unary bound
    lab, lbc, lac = ev(g, a, b), ev(g, b, c), ev(g, a, c)
    if value_cmp(lac, value_add(lab, lbc)) > 0:
        return {"law": "triangle", "l_ac": str(lac), "l_ab": str(lab), "l_bc": str(lbc)}
    la = unary_value(spec, g, a)
    lb = unary_value(spec, g, b)
    if value_cmp(la, value_add(lab, lb)) > 0:
        return {"law": "unary_bound", "l_a": str(la), "l_ab": str(lab), "l_b": str(lb)}

    # sum bound on small base-pointed pairs
    a2, b2, a3, b3 = inst["a2"], inst["b2"], inst["a3"], inst["b3"]
    lhs = ev(g, minkowski_sum(a2, a3), minkowski_sum(b2, b3))
    rhs = value_add(ev(g, a2, b2), ev(g, a3, b3))
    if value_cmp(lhs, rhs) > 0:
        return {"law": "sum_bound", "lhs": str(lhs), "rhs": str(rhs)}

    # quotient monotonicity and invariance
    img = ev(phi.target, map_subset(phi, a), map_subset(phi, b))
    if value_cmp(img, lab) > 0:
        return {"law": "quotient", "image": str(img), "value": str(lab)}
    moved = ev(iso.target, map_subset(iso, a), map_subset(iso, b))
    if value_cmp(moved, lab) != 0:
        return {"law": "invariance", "image": str(moved), "value": str(lab)}

    # direct product on small base-pointed factors
    gs, sa, sb = inst["g_small"], inst["sa"], inst["sb"]
    total, e1, e2 = direct_sum(g, gs)
    pa = product_subset(a2, e1, sa, e2)
    pb = product_subset(b2, e1, sb, e2)
    prod_val = ev(total, pa, pb)
    split = value_add(ev(g, a2, b2), ev(gs, sa, sb))
    if value_cmp(prod_val, split) != 0:
        return {"law": "direct_product", "product": str(prod_val), "split": str(split)}

    # kernel witness postcondition
    witness = kernel_witness(spec, phi, a)
    achieved = ev(g, a, witness)
    target = unary_value(spec, phi.target, map_subset(phi, a))
    if value_cmp(achieved, target) != 0:
        return {"law": "kernel_witness", "achieved": str(achieved), "target": str(target)}
    return None
