"""Reweighting paradoxes on discrete count tables.

Each "domain expert" only sees the rows of a count table whose label lies in
their restricted label set. Reweighting those rows to a covariate target
(covariate shift), or adjusting for a confounder (backdoor or inverse
propensity weighting), yields pairwise conclusions that can form a cycle
across experts.

All quantities are exact rationals. Counts may be fractional.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .errors import DegenerateStratumError, InputError, UnknownLabelError, ZeroPropensityError
from .graph import HALF, Cycle, LabelSet, PairwiseGraph, as_labelset, majority_cycle
from .rational import as_fraction

TABLE_LABELS = ("Cancer", "Virus", "Allergies")
COVARIATES = ("x1", "x2", "x3")


@dataclass(frozen=True)
class CountTable:
    """Counts over (treatment, covariate, label) cells.

    Tables without a treatment column use an empty ``treatments`` tuple and
    ``None`` as the treatment key.
    """

    treatments: tuple[str, ...]
    covariates: tuple[str, ...]
    labels: LabelSet
    counts: Mapping[tuple[str | None, str, str], Fraction]

    def __post_init__(self):
        treatments = tuple(str(t) for t in self.treatments)
        covariates = tuple(str(x) for x in self.covariates)
        labels = as_labelset(self.labels)
        if len(set(treatments)) != len(treatments) or len(set(covariates)) != len(covariates):
            raise InputError("treatment and covariate values must be distinct")
        if not covariates:
            raise InputError("a count table needs at least one covariate value")
        t_keys = treatments if treatments else (None,)
        clean = {}
        for key, v in self.counts.items():
            t, x, y = key
            if t not in t_keys or x not in covariates or y not in labels:
                raise InputError(f"count key {key} does not match the table's axes")
            v = as_fraction(v)
            if v < 0:
                raise InputError(f"negative count {v} at {key}")
            clean[(t, x, y)] = v
        full = {(t, x, y): clean.get((t, x, y), Fraction(0)) for t, x, y in product(t_keys, covariates, labels)}
        object.__setattr__(self, "treatments", treatments)
        object.__setattr__(self, "covariates", covariates)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "counts", full)

    @classmethod
    def from_rows(cls, labels, rows: Sequence[tuple], treatments: Sequence[str] | None = None):
        """Rows are ``(x, counts)`` or ``(t, x, counts)`` with counts aligned to ``labels``."""
        labels = as_labelset(labels)
        counts = {}
        ts, xs = [], []
        for row in rows:
            if len(row) == 2:
                t, (x, vals) = None, row
            else:
                t, x, vals = row
            if len(vals) != len(labels):
                raise InputError(f"row {row} has {len(vals)} counts for {len(labels)} labels")
            if t is not None and t not in ts:
                ts.append(t)
            if x not in xs:
                xs.append(x)
            for y, v in zip(labels, vals):
                counts[(t, x, y)] = v
        if treatments is not None:
            ts = list(treatments)
        return cls(tuple(ts), tuple(xs), labels, counts)

    @property
    def treatment_keys(self) -> tuple:
        return self.treatments if self.treatments else (None,)

    def count(self, t, x, y) -> Fraction:
        return self.counts[(t, x, y)]

    def total(self) -> Fraction:
        return sum(self.counts.values(), Fraction(0))


@dataclass(frozen=True)
class DomainRestriction:
    kept_labels: tuple[str, ...]

    def __post_init__(self):
        kept = tuple(self.kept_labels)
        if len(kept) < 2 or len(set(kept)) != len(kept):
            raise InputError(f"a domain restriction keeps at least two distinct labels, got {kept}")
        object.__setattr__(self, "kept_labels", kept)

    def validate(self, c: CountTable) -> None:
        for y in self.kept_labels:
            if y not in c.labels:
                raise UnknownLabelError(f"restriction keeps unknown label {y!r}")


def _restriction(c: CountTable, restrict) -> DomainRestriction:
    if restrict is None:
        r = DomainRestriction(c.labels.labels)
    elif isinstance(restrict, DomainRestriction):
        r = restrict
    else:
        r = DomainRestriction(tuple(restrict))
    r.validate(c)
    return r


def _check_label(r: DomainRestriction, y: str) -> None:
    if y not in r.kept_labels:
        raise InputError(f"label {y!r} is outside the restriction {r.kept_labels}")


def _cell(c: CountTable, r: DomainRestriction, t, x) -> Fraction:
    return sum((c.counts[(t, x, y)] for y in r.kept_labels), Fraction(0))


def _stratum(c: CountTable, r: DomainRestriction, x) -> Fraction:
    return sum((_cell(c, r, t, x) for t in c.treatment_keys), Fraction(0))


def uniform_target(c: CountTable) -> dict[str, Fraction]:
    return {x: Fraction(1, len(c.covariates)) for x in c.covariates}


def observed_target(c: CountTable, restrict=None) -> dict[str, Fraction]:
    """Covariate distribution of the rows the restricted expert actually sees."""
    r = _restriction(c, restrict)
    mass = {x: _stratum(c, r, x) for x in c.covariates}
    total = sum(mass.values(), Fraction(0))
    if total == 0:
        raise DegenerateStratumError("restricted table is empty")
    return {x: v / total for x, v in mass.items()}


def _target(c: CountTable, r: DomainRestriction, target_x) -> dict[str, Fraction]:
    if isinstance(target_x, str):
        if target_x == "uniform":
            return uniform_target(c)
        if target_x == "observed":
            return observed_target(c, r)
        raise InputError(f"unknown target {target_x!r}; use 'uniform', 'observed' or explicit weights")
    weights = {str(x): as_fraction(w) for x, w in dict(target_x).items()}
    for x, w in weights.items():
        if x not in c.covariates:
            raise InputError(f"target weight for unknown covariate {x!r}")
        if w < 0:
            raise InputError(f"negative target weight for {x!r}")
    total = sum(weights.values(), Fraction(0))
    if total <= 0:
        raise InputError("target weights must have positive total")
    return {x: weights.get(x, Fraction(0)) / total for x in c.covariates}


def reweighted_prevalence(c: CountTable, restrict, target_x, y: str) -> Fraction:
    """Prevalence of ``y`` among kept labels after reweighting strata to ``target_x``.

    ``target_x`` is a mapping of covariate weights (normalized here), or one of
    ``"uniform"`` / ``"observed"``. Treatments, if any, are summed out.
    """
    r = _restriction(c, restrict)
    _check_label(r, y)
    weights = _target(c, r, target_x)
    total = Fraction(0)
    for x, wx in weights.items():
        if not wx:
            continue
        denom = _stratum(c, r, x)
        if denom == 0:
            raise DegenerateStratumError(f"covariate stratum {x!r} is empty under restriction {r.kept_labels}")
        num = sum((c.counts[(t, x, y)] for t in c.treatment_keys), Fraction(0))
        total += wx * num / denom
    return total


def _require_treatment(c: CountTable, t) -> None:
    if not c.treatments:
        raise InputError("this table has no treatment column")
    if t not in c.treatments:
        raise InputError(f"unknown treatment {t!r}")


def backdoor_do(c: CountTable, restrict, t: str, y: str) -> Fraction:
    """``sum_x Pr(x) Pr(y | x, t)`` on the restricted table."""
    r = _restriction(c, restrict)
    _check_label(r, y)
    _require_treatment(c, t)
    strata = {x: _stratum(c, r, x) for x in c.covariates}
    n = sum(strata.values(), Fraction(0))
    if n == 0:
        raise DegenerateStratumError("restricted table is empty")
    total = Fraction(0)
    for x, nx in strata.items():
        if not nx:
            continue
        cell = _cell(c, r, t, x)
        if cell == 0:
            raise DegenerateStratumError(f"cell (t={t!r}, x={x!r}) is empty under restriction {r.kept_labels}")
        total += (nx / n) * (c.counts[(t, x, y)] / cell)
    return total


def ate(c: CountTable, restrict, t1: str, t0: str, y: str) -> Fraction:
    return backdoor_do(c, restrict, t1, y) - backdoor_do(c, restrict, t0, y)


def _pseudo_population_mean(c: CountTable, r: DomainRestriction, t, y) -> Fraction:
    weighted_hits = Fraction(0)
    weighted_total = Fraction(0)
    for x in c.covariates:
        nx = _stratum(c, r, x)
        if not nx:
            continue
        propensity = _cell(c, r, t, x) / nx
        if propensity == 0:
            raise ZeroPropensityError(f"Pr(t={t!r} | x={x!r}) is zero under restriction {r.kept_labels}")
        for yy in r.kept_labels:
            count = c.counts[(t, x, yy)]
            if count:
                w = count / propensity
                weighted_total += w
                if yy == y:
                    weighted_hits += w
    return weighted_hits / weighted_total


def ipw_ate(c: CountTable, restrict, t1: str, t0: str, y: str) -> Fraction:
    """Effect of ``t0 -> t1`` on ``y`` with each datapoint weighted by ``1 / Pr(t | x)``."""
    r = _restriction(c, restrict)
    _check_label(r, y)
    _require_treatment(c, t1)
    _require_treatment(c, t0)
    return _pseudo_population_mean(c, r, t1, y) - _pseudo_population_mean(c, r, t0, y)


# -- expert panels ---------------------------------------------------------------

METHODS = ("reweight-uniform", "reweight-observed", "backdoor", "ipw")


@dataclass(frozen=True)
class PairConclusion:
    pair: tuple[str, str]
    # prevalence of pair[0] (reweight methods) or the effect on pair[0] (causal)
    value: Fraction
    preferred: str | None
    margin: Fraction


@dataclass(frozen=True)
class PanelReport:
    method: str
    conclusions: tuple[PairConclusion, ...]
    graph: PairwiseGraph
    cycle: Cycle | None

    @property
    def pairwise_conclusions(self) -> dict[tuple[str, str], tuple[str | None, Fraction]]:
        return {pc.pair: (pc.preferred, pc.margin) for pc in self.conclusions}


def run_panel(
    c: CountTable,
    pairs: Sequence[tuple[str, str]] | None = None,
    method: str = "reweight-uniform",
    t1: str | None = None,
    t0: str | None = None,
) -> PanelReport:
    """Ask one restricted expert per label pair and look for a preference cycle.

    Reweighting experts prefer ``a`` over ``b`` when the reweighted prevalence of
    ``a`` exceeds 1/2; causal experts prefer the label whose share the switch
    ``t0 -> t1`` increases. The panel graph stores ``value`` (reweighting) or
    ``(1 + effect) / 2`` (causal) so that its majority orientation matches.
    """
    if method not in METHODS:
        raise InputError(f"unknown panel method {method!r}; choose from {METHODS}")
    if pairs is None:
        pairs = c.labels.all_pairs()
    causal = method in ("backdoor", "ipw")
    if causal:
        if len(c.treatments) < 2:
            raise InputError("causal panels need a table with at least two treatments")
        t1 = c.treatments[0] if t1 is None else t1
        t0 = c.treatments[1] if t0 is None else t0
    conclusions = []
    edges = {}
    for a, b in pairs:
        r = DomainRestriction((a, b))
        if method == "reweight-uniform":
            value = reweighted_prevalence(c, r, "uniform", a)
        elif method == "reweight-observed":
            value = reweighted_prevalence(c, r, "observed", a)
        elif method == "backdoor":
            value = ate(c, r, t1, t0, a)
        else:
            value = ipw_ate(c, r, t1, t0, a)
        centre = Fraction(0) if causal else HALF
        if value > centre:
            preferred = a
        elif value < centre:
            preferred = b
        else:
            preferred = None
        conclusions.append(PairConclusion((a, b), value, preferred, abs(value - centre)))
        edges[(a, b)] = (1 + value) / 2 if causal else value
    graph = PairwiseGraph.from_edges(c.labels, edges)
    return PanelReport(method, tuple(conclusions), graph, majority_cycle(graph))


# -- the confounded example and its faithfulness ---------------------------------------


def greek_table(alpha1, beta1, gamma1, alpha2, beta2, gamma2) -> CountTable:
    """Confounded count table scaled per (treatment, covariate) row.

    With every coefficient equal to one this is the plain causal paradox table.
    """
    coeffs = [as_fraction(v) for v in (alpha1, beta1, gamma1, alpha2, beta2, gamma2)]
    if any(v <= 0 for v in coeffs):
        raise InputError(f"coefficients must be positive, got {[str(v) for v in coeffs]}")
    a1, b1, g1, a2, b2, g2 = coeffs
    rows = [
        ("t1", "x1", [2 * a1, a1, 0]),
        ("t1", "x2", [0, 2 * b1, b1]),
        ("t1", "x3", [g1, 0, 2 * g1]),
        ("t0", "x1", [0, a2, 2 * a2]),
        ("t0", "x2", [2 * b2, 0, b2]),
        ("t0", "x3", [g2, 2 * g2, 0]),
    ]
    return CountTable.from_rows(TABLE_LABELS, rows)


def covariate_shift_table() -> CountTable:
    """Cancer/Virus/Allergies counts over three covariate strata, no treatment."""
    rows = [("x1", [2, 1, 0]), ("x2", [0, 2, 1]), ("x3", [1, 0, 2])]
    return CountTable.from_rows(TABLE_LABELS, rows)


def causal_table() -> CountTable:
    return greek_table(1, 1, 1, 1, 1, 1)


# (first variable, second variable, conditioning variable or None)
CONDITIONS = {
    "T-Y": ("T", "Y", None),
    "X-Y": ("X", "Y", None),
    "T-X": ("T", "X", None),
    "T-Y|X": ("T", "Y", "X"),
    "X-Y|T": ("X", "Y", "T"),
    "T-X|Y": ("T", "X", "Y"),
}


@dataclass(frozen=True)
class DependenceResult:
    """``dependent`` is True when the condition (a dependence) holds."""

    dependent: bool
    skipped_strata: tuple[str, ...] = ()

    @property
    def verdict(self) -> str:
        return "holds" if self.dependent else "violated"


def joint_distribution(c: CountTable, restrict=None) -> dict[tuple, Fraction]:
    r = _restriction(c, restrict)
    cells = {(t, x, y): c.counts[(t, x, y)] for t, x, y in c.counts if y in r.kept_labels}
    total = sum(cells.values(), Fraction(0))
    if total == 0:
        raise DegenerateStratumError("table has no mass to normalize")
    return {k: v / total for k, v in cells.items()}


def _marginal(joint: dict[tuple, Fraction], axes: tuple[int, ...]) -> dict[tuple, Fraction]:
    out: dict[tuple, Fraction] = {}
    for key, p in joint.items():
        sub = tuple(key[a] for a in axes)
        out[sub] = out.get(sub, Fraction(0)) + p
    return out


def _dependence(joint, a: int, b: int, given: int | None) -> DependenceResult:
    if given is None:
        pab = _marginal(joint, (a, b))
        pa = _marginal(joint, (a,))
        pb = _marginal(joint, (b,))
        dep = any(pab.get((va, vb), 0) != pa[(va,)] * pb[(vb,)] for (va,), (vb,) in product(pa, pb))
        return DependenceResult(dep)
    pabc = _marginal(joint, (a, b, given))
    pac = _marginal(joint, (a, given))
    pbc = _marginal(joint, (b, given))
    pc = _marginal(joint, (given,))
    va_all = {k[0] for k in pac}
    vb_all = {k[0] for k in pbc}
    skipped = []
    dep = False
    for (vc,), mass in pc.items():
        if mass == 0:
            skipped.append(str(vc))
            continue
        for va, vb in product(va_all, vb_all):
            if pabc.get((va, vb, vc), 0) * mass != pac.get((va, vc), 0) * pbc.get((vb, vc), 0):
                dep = True
    return DependenceResult(dep, tuple(skipped))


def faithfulness_check(c: CountTable, restrict=None) -> dict[str, DependenceResult]:
    """Decide the six (conditional) dependences of T, X, Y exactly.

    Each entry holds when the named variables are dependent. Conditioning strata
    with zero probability are skipped and listed.
    """
    if not c.treatments:
        raise InputError("faithfulness needs a treatment column")
    joint = joint_distribution(c, restrict)
    axis = {"T": 0, "X": 1, "Y": 2}
    out = {}
    for name, (a, b, given) in CONDITIONS.items():
        out[name] = _dependence(joint, axis[a], axis[b], None if given is None else axis[given])
    return out
