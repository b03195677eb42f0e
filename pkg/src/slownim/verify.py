"""Cross-check closed forms against the exhaustive solver.

A *formula* pairs a prediction computed from the position alone with the
matching observation read off the solver's tables. ``check_formula`` runs
one formula over a whole box; ``SUITES`` bundles the standard checks.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Optional

from slownim import closed_forms as cf
from slownim import exact32
from slownim.engine import (
    PositionClass,
    ResourceError,
    Tables,
    classify_game,
    sg_value,
)
from slownim.rules import Family, GameSpec, Position, Version

MAX_MISMATCHES = 100
TETRIS_BRUTEFORCE_BOUND = 40


@dataclass(frozen=True)
class Mismatch:
    position: Position
    formula_value: Any
    solver_value: Any

    def __str__(self) -> str:
        shown = [_jsonable(v) for v in (self.formula_value, self.solver_value)]
        return f"{self.position}: formula {shown[0]}, solver {shown[1]}"


@dataclass
class VerifyReport:
    formula: str
    spec: Optional[GameSpec]
    cap: int
    version: Version
    positions_checked: int = 0
    mismatch_count: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.mismatch_count == 0

    def add_mismatch(self, m: Mismatch) -> None:
        self.mismatch_count += 1
        if len(self.mismatches) < MAX_MISMATCHES:
            self.mismatches.append(m)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        where = str(self.spec) if self.spec else "-"
        return (
            f"{status} {self.formula} {where} cap={self.cap} {self.version.value}:"
            f" {self.positions_checked} positions, {self.mismatch_count} mismatches"
        )

    def to_dict(self) -> dict:
        return {
            "formula": self.formula,
            "spec": str(self.spec) if self.spec else None,
            "cap": self.cap,
            "version": self.version.value,
            "positions_checked": self.positions_checked,
            "mismatch_count": self.mismatch_count,
            "mismatches": [
                {"pos": list(m.position.piles), "x0": m.position.distinguished,
                 "formula": _jsonable(m.formula_value), "solver": _jsonable(m.solver_value)}
                for m in self.mismatches
            ],
            "passed": self.passed,
        }


def _jsonable(v):
    if isinstance(v, (cf.SwapKind, exact32.SetTag)):
        return v.value
    if isinstance(v, PositionClass):
        return [v.g, v.g_minus]
    return v


@lru_cache(maxsize=64)
def solver_tables(spec: GameSpec, cap: int) -> Tables:
    return Tables(spec, cap)


def _observed_swap(c: PositionClass) -> Optional[cf.SwapKind]:
    if (c.g, c.g_minus) == (0, 1):
        return cf.SwapKind.ZERO_ONE
    if (c.g, c.g_minus) == (1, 0):
        return cf.SwapKind.ONE_ZERO
    return None


def _observed_wild(c: PositionClass) -> Optional[PositionClass]:
    return None if (c.is_swap or c.is_tame_value) else c


Predict = Callable[[Position, GameSpec, Version], Any]
Observe = Callable[[PositionClass, Version], Any]


def _value(c: PositionClass, version: Version) -> int:
    return c.g if version is Version.NORMAL else c.g_minus


@dataclass(frozen=True)
class Formula:
    name: str
    predict: Predict
    observe: Observe
    applies: Callable[[GameSpec, Version], bool]
    description: str = ""


def _fam(*families: Family):
    return lambda spec: spec.family in families


def _normal_only(test):
    return lambda spec, version: version is Version.NORMAL and test(spec)


def _any_version(test):
    return lambda spec, version: test(spec)


FORMULAS: dict[str, Formula] = {}


def _register(f: Formula) -> None:
    FORMULAS[f.name] = f


_register(Formula(
    "nim-sum",
    lambda p, s, v: cf.nim_sum(p),
    _value,
    _normal_only(_fam(Family.CLASSIC)),
    "g equals the XOR of the piles",
))
_register(Formula(
    "moore-m01",
    # values >= 2 are collapsed: only M in {0, 1} is claimed to match
    lambda p, s, v: min(cf.moore_function(p, s.k), 2),
    lambda c, v: min(c.g, 2),
    _normal_only(lambda s: s.family is Family.MOORE and 2 <= s.k < s.n),
    "M(x) = t iff g = t, for t in {0, 1}",
))
_register(Formula(
    "jm",
    lambda p, s, v: cf.jm_formula(p, s),
    _value,
    _normal_only(lambda s: (s.family is Family.EXCO and s.n >= 3)
                 or (s.family is Family.MOORE and s.n == s.k + 1 >= 3)),
    "Jenkyns-Mayberry formula for n = k + 1 and Exco-Nim",
))
_register(Formula(
    "exact-sg",
    lambda p, s, v: cf.exact_sg_formula(p, s),
    _value,
    _normal_only(lambda s: s.family is Family.EXACT
                 and (2 * s.k > s.n or (s.n == 2 * s.k >= 4))),
    "tetris value (2k > n) or tetris-based JM formula (n = 2k)",
))
_register(Formula(
    "trivial",
    lambda p, s, v: cf.trivial_case_sg(p, s, v),
    _value,
    _any_version(lambda s: s.is_slow and (s.k == 1 or (s.family is Family.SLOW_EXACT and s.k == s.n))),
    "parity of token total (k = 1) or of the smallest pile (slow exact, k = n)",
))
_register(Formula(
    "swap-moore",
    lambda p, s, v: cf.swap_class_moore(p, s),
    lambda c, v: _observed_swap(c),
    _any_version(lambda s: s.family is Family.MOORE and 2 <= s.k < s.n),
    "swap positions of Moore's Nim: all piles <= 1, l mod (k+1) in {0, 1}",
))
_register(Formula(
    "swap-exact2k",
    lambda p, s, v: cf.swap_class_exact2k(p, s.k),
    lambda c, v: _observed_swap(c),
    _any_version(lambda s: s.family is Family.EXACT and s.n == 2 * s.k),
    "swap positions of Exact k-Nim with 2k piles",
))
_register(Formula(
    "slow-moore-sg",
    lambda p, s, v: cf.slow_moore_sg_small(p, s),
    _value,
    _normal_only(lambda s: s.family is Family.SLOW_MOORE and (s.n, s.k) in ((2, 2), (3, 2))),
    "parity-vector table for slow Moore's Nim, (n, k) in {(2,2), (3,2)}",
))


def _slow_moore_p_domain(s: GameSpec) -> bool:
    if s.family is not Family.SLOW_MOORE:
        return False
    n, k = s.n, s.k
    return n in (k, k + 1) or (n == k + 2 and k >= 2) or (n, k) in ((5, 2), (6, 3))


_register(Formula(
    "slow-moore-p",
    lambda p, s, v: cf.slow_moore_is_p(p, s),
    lambda c, v: c.g == 0,
    _normal_only(_slow_moore_p_domain),
    "P-positions of slow Moore's Nim by parity vector",
))
_register(Formula(
    "slow-moore-misere-swap",
    lambda p, s, v: cf.slow_moore_misere_swap(p, s),
    lambda c, v: _observed_swap(c),
    _any_version(lambda s: s.family is Family.SLOW_MOORE and s.k >= s.n - 1),
    "swap sets of slow Moore's Nim for k >= n - 1",
))


def _exact32_domain(s: GameSpec) -> bool:
    return s.family is Family.SLOW_EXACT and (s.n, s.k) == (3, 2)


_register(Formula(
    "exact32",
    lambda p, s, v: exact32.slow_exact32_sg(p, v),
    _value,
    _any_version(_exact32_domain),
    "set algebra for slow exact 2-Nim on three piles (corrected)",
))
_register(Formula(
    "exact32-literal",
    lambda p, s, v: exact32.slow_exact32_sg(p, v, literal=True),
    _value,
    _any_version(_exact32_domain),
    "set algebra for slow exact 2-Nim on three piles, uncorrected",
))
_register(Formula(
    "swap32",
    lambda p, s, v: exact32.swap_class_32(p),
    lambda c, v: _observed_swap(c),
    _any_version(_exact32_domain),
    "three-pile swap positions, kind from the parity of b + ceil(i/2)",
))
_register(Formula(
    "swap32-membership",
    lambda p, s, v: exact32.swap_class_32(p) is not None,
    lambda c, v: c.is_swap,
    _any_version(_exact32_domain),
    "three-pile swap positions, membership only",
))
_register(Formula(
    "swap32-fitted",
    lambda p, s, v: exact32.swap_class_32(p, kind_rule="fitted"),
    lambda c, v: _observed_swap(c),
    _any_version(_exact32_domain),
    "three-pile swap positions, kind from the parity of b + floor(i/2) + floor(a/2)",
))
_register(Formula(
    "nontame32",
    lambda p, s, v: exact32.nontame_class_32(p),
    lambda c, v: _observed_wild(c),
    _any_version(_exact32_domain),
    "three-pile positions that are neither swap nor tame",
))


def check_formula(
    formula: str | Formula, spec: GameSpec, cap: int, version: Version = Version.NORMAL
) -> VerifyReport:
    f = FORMULAS[formula] if isinstance(formula, str) else formula
    if not f.applies(spec, version):
        raise cf.DomainError(f"formula {f.name} does not cover {spec} ({version.value})")
    start = time.perf_counter()
    tables = solver_tables(spec, cap)
    report = VerifyReport(f.name, spec, cap, version)
    for pos in tables.positions():
        report.positions_checked += 1
        predicted = f.predict(pos, spec, version)
        observed = f.observe(tables.cls(pos), version)
        if predicted != observed:
            report.add_mismatch(Mismatch(pos, predicted, observed))
    report.elapsed = time.perf_counter() - start
    return report


def tetris_bruteforce(pos: Position, k: int, bound: int = TETRIS_BRUTEFORCE_BOUND) -> int:
    """Tetris value by exhaustive search over rounds of k-subsets."""
    piles = pos.piles
    if not 1 <= k <= len(piles):
        raise cf.DomainError(f"need 1 <= k <= n, got k={k}, n={len(piles)}")
    if sum(piles) > bound:
        raise ResourceError(f"token total {sum(piles)} exceeds search bound {bound}")

    @lru_cache(maxsize=None)
    def best(budget: tuple[int, ...]) -> int:
        top = 0
        for chosen in itertools.combinations(range(len(budget)), k):
            if all(budget[j] > 0 for j in chosen):
                rest = list(budget)
                for j in chosen:
                    rest[j] -= 1
                top = max(top, 1 + best(tuple(sorted(rest))))
        return top

    return best(tuple(sorted(piles)))


def check_tetris(max_n: int = 5, max_entry: int = 5) -> VerifyReport:
    """Closed-form tetris against brute force on every small position."""
    start = time.perf_counter()
    report = VerifyReport("tetris", None, max_entry, Version.NORMAL)
    for n in range(1, max_n + 1):
        for piles in itertools.combinations_with_replacement(range(max_entry + 1), n):
            pos = Position(piles)
            for k in range(1, n + 1):
                report.positions_checked += 1
                fast, slow = cf.tetris(pos, k), tetris_bruteforce(pos, k)
                if fast != slow:
                    report.add_mismatch(Mismatch(pos, fast, slow))
    report.elapsed = time.perf_counter() - start
    return report


@dataclass
class PetReport:
    spec: GameSpec
    cap: int
    flags: dict[str, bool]
    witnesses: dict[str, str]

    @property
    def passed(self) -> bool:
        return all(self.flags[f] for f in ("pet", "no_00", "no_11", "zero_moves_to_one"))

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        shown = " ".join(f"{k}={v}" for k, v in self.flags.items())
        return f"{status} pet {self.spec} cap={self.cap}: {shown}"


def check_pet(spec: GameSpec, cap: int) -> PetReport:
    r = classify_game(spec, cap)
    return PetReport(spec, cap, r.flags(), {k: str(w) for k, w in r.witnesses.items()})


# ---------------------------------------------------------------------------
# regression claims: literal computational statements, checked point-wise


@dataclass(frozen=True)
class Claim:
    claim_id: str
    spec: GameSpec
    piles: tuple[int, ...]
    g: Optional[int] = None
    g_minus: Optional[int] = None


@dataclass
class ClaimResult:
    claim_id: str
    passed: bool
    witness: str


def _claims() -> list[Claim]:
    exact52 = GameSpec(Family.EXACT, 5, 2)
    sm62 = GameSpec(Family.SLOW_MOORE, 6, 2)
    sm42 = GameSpec(Family.SLOW_MOORE, 4, 2)
    se54 = GameSpec(Family.SLOW_EXACT, 5, 4)
    out = [Claim("exact52-12333-is-02", exact52, (1, 2, 3, 3, 3), 0, 2)]
    for piles, g in [
        ((3, 3, 3, 4, 4, 4), 0),
        ((1, 1, 1, 2, 2, 4), 2),
        ((1, 3, 3, 3, 3, 3), 0),
        ((1, 3, 3, 3, 5, 5), 0),
        ((1, 3, 5, 5, 5, 5), 0),
        ((1, 1, 1, 1, 1, 3), 2),
        ((1, 1, 1, 1, 1, 5), 2),
        ((1, 1, 3, 3, 5, 5), 3),
    ]:
        out.append(Claim(f"slowmoore62-{''.join(map(str, piles))}-g{g}", sm62, piles, g))
    out.append(Claim("slowmoore42-1123-is-40", sm42, (1, 1, 2, 3), 4, 0))
    for c in range(3, 8):
        out.append(Claim(f"slowexact54-1233{c}-g5", se54, (1, 2, 3, 3, c), 5))
    return out


CLAIMS = _claims()


def regression_suite() -> list[ClaimResult]:
    results = []
    for claim in CLAIMS:
        pos = Position(claim.piles)
        got_g = sg_value(claim.spec, pos, Version.NORMAL)
        ok = claim.g is None or got_g == claim.g
        shown = f"g={got_g}"
        if claim.g_minus is not None:
            got_m = sg_value(claim.spec, pos, Version.MISERE)
            ok = ok and got_m == claim.g_minus
            shown += f" g-={got_m}"
        results.append(ClaimResult(claim.claim_id, ok, f"{claim.spec} {pos} {shown}"))

    # the two six-pile positions with equal parity vectors but different status
    a, b = Position((3, 3, 3, 4, 4, 4)), Position((1, 1, 1, 2, 2, 4))
    sm62 = GameSpec(Family.SLOW_MOORE, 6, 2)
    same = cf.parity_vector(a) == cf.parity_vector(b)
    differ = sg_value(sm62, a) != sg_value(sm62, b)
    results.append(ClaimResult(
        "slowmoore62-parity-not-determining",
        same and differ,
        f"p={cf.parity_vector(a)}/{cf.parity_vector(b)}, g={sg_value(sm62, a)}/{sg_value(sm62, b)}",
    ))

    # four-pile slow exact 3-Nim only takes values 0..3 on the box
    se43 = GameSpec(Family.SLOW_EXACT, 4, 3)
    t = solver_tables(se43, 8)
    top = max(t.normal[p] for p in t.positions())
    results.append(ClaimResult("slowexact43-values-0-3", top <= 3, f"{se43} cap=8 max g={top}"))
    return results


# ---------------------------------------------------------------------------
# named suites, shared by the CLI and the acceptance tests


@dataclass
class SuiteResult:
    name: str
    reports: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def lines(self) -> list[str]:
        out = []
        for r in self.reports:
            if isinstance(r, ClaimResult):
                out.append(f"{'PASS' if r.passed else 'FAIL'} {r.claim_id}: {r.witness}")
            else:
                out.append(r.summary())
                if isinstance(r, VerifyReport):
                    out.extend(f"    {m}" for m in r.mismatches[:10])
        return out


Job = tuple[str, GameSpec, int, Version]


def _S(family: Family, n: int, k: int = 1) -> GameSpec:
    return GameSpec(family, n, k)


N, M = Version.NORMAL, Version.MISERE

SUITE_JOBS: dict[str, list[Job]] = {
    "nimsum": [("nim-sum", _S(Family.CLASSIC, n), 7, N) for n in (2, 3, 4)],
    "prop1": [("moore-m01", _S(Family.MOORE, n, k), 6, N) for n, k in ((3, 2), (4, 2), (4, 3))],
    "thm1": [
        ("jm", _S(Family.MOORE, 3, 2), 12, N),
        ("jm", _S(Family.MOORE, 4, 3), 8, N),
        ("jm", _S(Family.EXCO, 3), 6, N),
    ],
    "thm2": [
        ("exact-sg", _S(Family.EXACT, 3, 2), 10, N),
        ("exact-sg", _S(Family.EXACT, 5, 3), 5, N),
        ("exact-sg", _S(Family.EXACT, 4, 2), 8, N),
    ],
    "swap45": [
        ("swap-moore", _S(Family.MOORE, 4, 2), 5, N),
        ("swap-exact2k", _S(Family.EXACT, 4, 2), 5, N),
    ],
    "trivial": [
        (f, _S(fam, n, k), 8, v)
        for f, fam, n, k in (
            ("trivial", Family.SLOW_MOORE, 3, 1),
            ("trivial", Family.SLOW_EXACT, 3, 1),
            ("trivial", Family.SLOW_EXACT, 3, 3),
            ("trivial", Family.SLOW_EXACT, 4, 4),
        )
        for v in (N, M)
    ],
    "prop7": [
        ("slow-moore-sg", _S(Family.SLOW_MOORE, 2, 2), 30, N),
        ("slow-moore-sg", _S(Family.SLOW_MOORE, 3, 2), 15, N),
    ],
    "prop8": (
        [("slow-moore-p", _S(Family.SLOW_MOORE, n, n), 6, N) for n in range(1, 5)]
        + [("slow-moore-p", _S(Family.SLOW_MOORE, n, n - 1), 6, N) for n in range(2, 5)]
        + [("slow-moore-p", _S(Family.SLOW_MOORE, n, n - 2), 5, N) for n in (4, 5)]
        + [("slow-moore-p", _S(Family.SLOW_MOORE, 5, 2), 5, N),
           ("slow-moore-p", _S(Family.SLOW_MOORE, 6, 3), 4, N)]
    ),
    "prop9": [
        ("slow-moore-misere-swap", _S(Family.SLOW_MOORE, 3, 2), 12, M),
        ("slow-moore-misere-swap", _S(Family.SLOW_MOORE, 3, 3), 12, M),
    ],
    "exact32": [
        ("exact32", _S(Family.SLOW_EXACT, 3, 2), 25, N),
        ("exact32", _S(Family.SLOW_EXACT, 3, 2), 25, M),
        ("swap32-membership", _S(Family.SLOW_EXACT, 3, 2), 25, N),
        ("swap32", _S(Family.SLOW_EXACT, 3, 2), 25, N),
        ("nontame32", _S(Family.SLOW_EXACT, 3, 2), 25, N),
    ],
}
PET_JOBS = [(_S(Family.EXACT, 3, 2), 8), (_S(Family.EXACT, 5, 3), 4)]
SUITE_NAMES = ["nimsum", "prop1", "thm1", "tetris", "thm2", "pet", "swap45",
               "trivial", "prop7", "prop8", "prop9", "exact32", "regression"]


def _select(jobs, n, k, cap):
    out = []
    for f, spec, c, v in jobs:
        if n is not None and spec.n != n:
            continue
        if k is not None and spec.k != k:
            continue
        out.append((f, spec, c if cap is None else cap, v))
    return out


def run_suite(
    name: str, cap: Optional[int] = None, n: Optional[int] = None, k: Optional[int] = None
) -> SuiteResult:
    if name not in SUITE_NAMES:
        raise KeyError(name)
    result = SuiteResult(name)
    if name == "tetris":
        result.reports.append(check_tetris(max_entry=5 if cap is None else cap))
    elif name == "pet":
        for spec, c in PET_JOBS:
            if (n is None or spec.n == n) and (k is None or spec.k == k):
                result.reports.append(check_pet(spec, c if cap is None else cap))
    elif name == "regression":
        result.reports.extend(regression_suite())
    else:
        jobs = _select(SUITE_JOBS[name], n, k, cap)
        if not jobs:
            # an explicit (n, k) outside the defaults: reuse the suite's formula
            f, spec, c, v = SUITE_JOBS[name][0]
            if n is None:
                raise KeyError(f"no {name} job matches k={k}")
            spec = GameSpec(spec.family, n, spec.k if k is None else k)
            jobs = [(f, spec, c if cap is None else cap, v)]
        for f, spec, c, v in jobs:
            result.reports.append(check_formula(f, spec, c, v))
    return result
