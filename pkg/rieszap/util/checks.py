from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy.special import zeta

from rieszap.util.block_union import BlockSchedule, assemble_lambda
from rieszap.util.circle_set import (
    TWO_PI,
    ArcSet,
    SAlphaSpec,
    build_component,
    build_S_alpha,
    dilate_mod,
    normalize,
    symmetric_difference_measure,
)
from rieszap.util.config import Settings
from rieszap.util.diophantine import (
    admissible_ells,
    check_pairwise_disjoint,
    count_table,
    counting_grid,
    covering_bound,
    covering_multiplicity,
    dilated_component_arcs,
    eta_ladder,
    first_primes,
    fit_counting_constant,
    hits_by_denominator,
    is_prime,
    ladder_window,
    next_prime_above,
    overlap_counts,
    overlap_depth,
    prime_threshold,
    shell_counts,
    window_violations,
)
from rieszap.util.errors import InvalidInputError, SearchExhaustedError
from rieszap.util.multiplicity import comb_with_notch, lattice_riesz_check, theorem4_check
from rieszap.util.riesz_bounds import (
    LEMMA1_CONSTANT,
    block,
    block_length,
    extremal_eigs,
    gram,
    lemma1_witness_energy,
    loglog_slope,
    lowest_eigvec,
    rayleigh,
    rayleigh_min,
)
from rieszap.util.trig_poly import IndicatorSpectrum, TrigPoly, dilate, dirichlet, energy, random_unit

log = logging.getLogger(__name__)

SCENARIOS = (
    "lemma1",
    "lemma4",
    "lemma5",
    "lemma6",
    "lemma7",
    "lemma8",
    "corollary-pdivides",
    "theorem4",
    "lemma9",
    "uniting-blocks",
)
REPORT_SCHEMA = 1
EQUALITY_TOL = 1e-10
ORACLE_TOL = 1e-9
ENERGY_TOL = 1e-12


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: Optional[float] = None
    bound: Optional[float] = None
    tolerance: Optional[float] = None
    informational: bool = False
    detail: Optional[str] = None

    def __post_init__(self) -> None:
        self.passed = bool(self.passed)
        self.informational = bool(self.informational)
        if self.value is not None:
            self.value = float(self.value)
        if self.bound is not None:
            self.bound = float(self.bound)
        if self.tolerance is not None:
            self.tolerance = float(self.tolerance)

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "value": self.value,
            "bound": self.bound,
            "tolerance": self.tolerance,
            "informational": self.informational,
            "detail": self.detail,
        }


@dataclass
class ScenarioReport:
    scenario: str
    parameters: Dict[str, Any]
    checks: List[CheckResult] = field(default_factory=list)
    payload: Dict[str, Any] = field(default_factory=dict)
    disclosures: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    wall_time: float = 0.0
    reduced_scale: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.informational)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.informational and not c.passed]

    def add(self, check: CheckResult) -> None:
        self.checks.append(check)

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "schema": REPORT_SCHEMA,
            "scenario": self.scenario,
            "passed": self.passed,
            "reduced_scale": self.reduced_scale,
            "seed": self.seed,
            "wall_time": self.wall_time,
            "parameters": self.parameters,
            "disclosures": self.disclosures,
            "checks": [c.to_json_dict() for c in self.checks],
            "payload": self.payload,
        }


def fit_truncation(needed: int, arc_cap: int) -> Tuple[int, bool]:
    """Largest truncation level <= needed whose L(L+1)/2 arcs stay within arc_cap."""
    limit = (math.isqrt(8 * arc_cap + 1) - 1) // 2
    if needed <= limit:
        return needed, False
    return limit, True


def _upper_check(name: str, value: float, bound: float, tol: float = ENERGY_TOL, **kwargs: Any) -> CheckResult:
    return CheckResult(name, bool(value <= bound + tol), float(value), float(bound), tol, **kwargs)


class EstimateChecker:
    """
    Runs one named scenario at a time and collects the numbers behind
    each lemma into a ScenarioReport.
    """

    def __init__(self, settings: Settings) -> None:
        self.settings = settings
        self._sets: Dict[Tuple[SAlphaSpec, str], ArcSet] = {}

    def spec(self, alpha: Optional[float] = None, L: Optional[int] = None) -> SAlphaSpec:
        s = self.settings
        level = s.trunc_L if L is None else L
        if alpha is None or alpha == s.alpha:
            return SAlphaSpec.create(s.alpha, s.eps, level, s.c0)
        # secondary exponents always take the automatic c0
        return SAlphaSpec.create(alpha, s.eps, level)

    def s_alpha(self, spec: SAlphaSpec, variant: str = "full") -> ArcSet:
        key = (spec, variant)
        if key not in self._sets:
            self._sets[key] = build_S_alpha(spec, self.settings.arc_cap, variant)
        return self._sets[key]

    def run(self, scenario: str) -> ScenarioReport:
        runners: Dict[str, Callable[[ScenarioReport], None]] = {
            "lemma1": self.check_lemma1,
            "lemma4": self.check_lemma4,
            "lemma5": self.check_lemma5,
            "lemma6": self.check_lemma6,
            "lemma7": self.check_lemma7,
            "lemma8": self.check_lemma8,
            "corollary-pdivides": self.check_corollary_pdivides,
            "theorem4": self.check_theorem4,
            "lemma9": self.check_lemma9,
            "uniting-blocks": self.check_uniting_blocks,
        }
        if scenario not in runners:
            raise InvalidInputError("Unknown scenario: %s" % scenario)
        parameters = self.settings.to_json_dict()
        parameters["c0_resolved"] = self.spec().c0
        report = ScenarioReport(scenario, parameters, seed=self.settings.seed)
        start = time.perf_counter()
        runners[scenario](report)
        report.wall_time = time.perf_counter() - start
        log.info(
            "Scenario %s: %d checks, %d failed, %.2fs",
            scenario,
            len(report.checks),
            len(report.failures()),
            report.wall_time,
        )
        return report

    def check_lemma1(self, report: ScenarioReport) -> None:
        s = self.settings
        spec = self.spec()
        S = self.s_alpha(spec)
        rows: List[Dict[str, Any]] = []
        for N in s.lemma1_sizes:
            w = lemma1_witness_energy(spec, s.beta, N, S, s.gram_cap, s.arc_cap)
            rows.append(w._asdict())
            report.add(_upper_check("N=%d energy within energy off I[%d]" % (N, w.ell), w.energy, w.energy_outside))
            report.add(_upper_check("N=%d energy off I[%d] within 2cot(delta/2)/(pi N)" % (N, w.ell), w.energy_outside, w.rigorous_bound))
            report.add(_upper_check("N=%d energy within C/(delta N)" % N, w.energy, w.bound))
        energies = [float(r["energy"]) for r in rows]
        decreasing = all(b < a for a, b in zip(energies, energies[1:]))
        report.add(CheckResult("energy strictly decreasing in N", decreasing, energies[-1]))
        report.add(_upper_check("energy at N=%d within regression guard" % s.lemma1_sizes[-1], energies[-1], s.lemma1_guard, 0.0))
        slope = loglog_slope(s.lemma1_sizes, energies) if len(energies) > 1 else None
        report.add(CheckResult("log-log slope of energy in N", True, slope, informational=True))
        report.payload = {"rows": rows, "constant": LEMMA1_CONSTANT, "slope": slope}
        report.disclosures = {"L": spec.L, "tail_bound": spec.tail_bound()}

    def check_lemma4(self, report: ScenarioReport) -> None:
        s = self.settings
        lengths = {p: block_length(p, s.alpha) for p in s.primes}
        needed = max([s.trunc_L] + [p * n for p, n in lengths.items()])
        L, reduced = fit_truncation(needed, s.arc_cap)
        report.reduced_scale = reduced
        spec = self.spec(L=L)
        S = self.s_alpha(spec)
        spectrum = IndicatorSpectrum(S)
        rows: List[Dict[str, Any]] = []
        for p in s.primes:
            G = gram(block(p, s.alpha), S, s.gram_cap, spectrum)
            A, B = extremal_eigs(G)
            oracle = rayleigh_min(G, s.samples, s.seed)
            rows.append({"p": p, "N_p": lengths[p], "A": A, "B": B, "dim": G.dim, "mu_S": G.mu, "oracle_min": oracle})
            report.add(CheckResult("p=%d lower bound positive" % p, A > 0, A, 0.0))
            report.add(CheckResult("p=%d Rayleigh oracle above A" % p, oracle >= A - ORACLE_TOL, oracle, A, ORACLE_TOL))
            at_min = rayleigh(G, lowest_eigvec(G))
            report.add(_upper_check("p=%d Rayleigh quotient at the lowest eigenvector" % p, abs(at_min - A), 0.0, 1e-8))
        lowers = [r["A"] for r in rows]
        gamma = min(lowers)
        if len(lowers) > 1:
            report.add(CheckResult("min A at least half of max A", gamma >= 0.5 * max(lowers), gamma, 0.5 * max(lowers)))

        threshold: Optional[float] = None
        first_prime: Optional[int] = None
        if s.alpha < 0.5:
            threshold = prime_threshold(spec, eta_ladder(s.alpha))
            first_prime = next_prime_above(threshold)
        report.add(CheckResult("prime threshold", True, threshold, informational=True, detail="first prime %s" % first_prime))
        report.payload = {"rows": rows, "gamma": gamma, "prime_threshold": threshold, "first_prime": first_prime}
        report.disclosures = {"L": L, "needed_L": needed, "tail_bound": spec.tail_bound()}

    def check_lemma5(self, report: ScenarioReport) -> None:
        s = self.settings
        spec = self.spec()
        rng = np.random.default_rng(s.seed)
        rows: List[Dict[str, Any]] = []
        for p in s.lemma5_primes:
            if not is_prime(p):
                raise InvalidInputError("%s is not a prime" % p)
            N_p = block_length(p, s.alpha)
            top = int(math.floor(spec.c0 * p))
            ells = list(range(1, top + 1))
            if not ells:
                report.add(CheckResult("p=%d has no ell <= c0 p" % p, True, spec.c0 * p, informational=True))
                continue
            polys: List[Tuple[str, TrigPoly]] = [("dirichlet", dirichlet(N_p))]
            freqs = np.arange(1, N_p + 1)
            polys += [("random %d" % i, random_unit(freqs, rng)) for i in range(s.lemma5_random)]
            parts: List[Tuple[int, ArcSet, IndicatorSpectrum, ArcSet, IndicatorSpectrum]] = []
            for ell in ells:
                coprime = build_component(spec, ell, "coprime")
                full = build_component(spec, ell)
                parts.append((ell, coprime, IndicatorSpectrum(coprime), full, IndicatorSpectrum(full)))
            mults = {ell: covering_multiplicity(p, ell, spec) for ell in ells}
            # each ell contributes at most mu(I[ell]) + 2/p
            rhs_measure = math.fsum(full.mu for _, _, _, full, _ in parts) + 2.0 * top / p
            rhs_covering = math.fsum(mults.values()) / p
            for name, Q in polys:
                dilated = dilate(Q, p)
                total: List[float] = []
                worst = -math.inf
                for ell, coprime, coprime_spectrum, full, full_spectrum in parts:
                    on_j = energy(dilated, coprime, coprime_spectrum)
                    on_i = energy(dilated, full, full_spectrum)
                    worst = max(worst, on_i - mults[ell] / p * Q.norm_sq, on_j - on_i)
                    total.append(on_j)
                value = math.fsum(total)
                rows.append(
                    {"p": p, "poly": name, "sum": value, "bound": rhs_measure * Q.norm_sq, "covering_bound": rhs_covering * Q.norm_sq}
                )
                report.add(_upper_check("p=%d %s per-ell energy within covering/p" % (p, name), worst, 0.0))
                report.add(_upper_check("p=%d %s summed energy within covering sum" % (p, name), value, rhs_covering * Q.norm_sq))
                report.add(_upper_check("p=%d %s summed energy" % (p, name), value, rhs_measure * Q.norm_sq))

            # dilating I[ell] by p permutes the residues
            mismatch = 0.0
            for ell in range(1, 21):
                if ell % p == 0:
                    continue
                diff = symmetric_difference_measure(
                    dilate_mod(build_component(spec, ell), p), dilated_component_arcs(p, ell, spec)
                )
                mismatch = max(mismatch, diff)
            report.add(_upper_check("p=%d dilation matches residue permutation" % p, mismatch, 0.0, EQUALITY_TOL))

        covering: List[List[int]] = []
        for p in s.primes:
            for ell in range(1, 201):
                m = covering_multiplicity(p, ell, spec)
                if m > covering_bound(p, ell, spec):
                    covering.append([p, ell, m])
        report.add(CheckResult("covering multiplicity within floor(2 p delta) + 2", not covering, len(covering), 0.0))
        report.payload = {"rows": rows, "covering_violations": covering}

    def check_lemma6(self, report: ScenarioReport) -> None:
        s = self.settings
        alpha = s.lemma6_alpha
        spec = self.spec(alpha=alpha)
        ladder = eta_ladder(alpha)
        drift = max(abs(ladder.closed_form(i + 1) - eta) for i, eta in enumerate(ladder.etas))
        report.add(_upper_check("closed form matches recurrence", drift, 0.0, EQUALITY_TOL))
        eta1 = ladder.etas[0]
        primes = first_primes(s.lemma6_prime_count, lambda p: p**eta1 >= 2)
        rows: List[Dict[str, Any]] = []
        for p in primes:
            violations: List[Tuple[int, int]] = []
            sampled = True
            for eta, eta_next in ladder.windows():
                lo, hi = ladder_window(p, eta, eta_next)
                violations += window_violations(p, lo, hi, spec)
                ells = admissible_ells(p, lo, hi)
                if len(ells) > 1:
                    sampled = sampled and check_pairwise_disjoint(p, ells[0], ells[-1], spec)
            lo1 = int(math.ceil(p**eta1 - 1e-9))
            hi_d = int(math.floor(p ** ladder.etas[-1]))
            depth = overlap_depth(p, admissible_ells(p, lo1, hi_d), spec)
            outside = window_violations(p, 1, hi_d, spec)
            rows.append(
                {
                    "p": p,
                    "range": [lo1, hi_d],
                    "window_violations": [list(v) for v in violations],
                    "depth": depth,
                    "outside_pairs": len(outside),
                    "outside_examples": [list(v) for v in outside[:10]],
                }
            )
            report.add(CheckResult("p=%d window pairs disjoint" % p, not violations, len(violations), 0.0))
            report.add(CheckResult("p=%d window end pairs disjoint" % p, sampled))
            report.add(CheckResult("p=%d overlap depth at most d-1" % p, depth <= ladder.d - 1, depth, ladder.d - 1))
            report.add(CheckResult("p=%d overlapping pairs over all ell" % p, True, len(outside), informational=True))
        threshold = prime_threshold(spec, ladder)
        report.payload = {
            "alpha": alpha,
            "etas": list(ladder.etas),
            "d": ladder.d,
            "primes": primes,
            "rows": rows,
            "prime_threshold": threshold,
            "first_prime": next_prime_above(threshold),
        }

    def check_lemma7(self, report: ScenarioReport) -> None:
        s = self.settings
        rho = s.lemma7_rho
        sizes = list(s.lemma7_sizes)
        grid = counting_grid(s.lemma7_grid, s.lemma7_farey)
        fit = fit_counting_constant(sizes, rho, grid)
        report.add(
            CheckResult(
                "ratio stable across sizes",
                fit.stable,
                max(fit.growth),
                0.2,
                detail="per-size maxima %s" % [round(v, 6) for v in fit.per_size_max],
            )
        )

        N = max(sizes)
        hits = hits_by_denominator(grid, N, rho)
        shell_violations = 0
        sharp_violations = 0
        for i, x in enumerate(grid):
            for shell in shell_counts(float(x), N, rho, hits[i]):
                shell_violations += not shell.within_bound
                sharp_violations += not shell.within_sharp_bound
        report.add(CheckResult("dyadic shells within 8 2^(k(rho-1)) N^(1-rho) + 1", shell_violations == 0, shell_violations, 0.0))
        report.add(CheckResult("dyadic shells above the 2 2^(k(rho-1)) N^(1-rho) constant", True, sharp_violations, informational=True))

        counts = count_table(grid, sizes, rho)
        report.add(CheckResult("count nondecreasing in N", bool(np.all(np.diff(counts, axis=1) >= 0))))
        wider = count_table(grid, sizes, rho + (1.0 - rho) / 2.0)
        report.add(CheckResult("count nonincreasing in rho", bool(np.all(wider <= counts))))

        overlap_rows: List[Dict[str, Any]] = []
        alpha = s.lemma7_overlap_alpha
        if 0.5 < alpha < 1:
            spec = self.spec(alpha=alpha)
            rho_o = 1.0 / alpha - 1.0
            xs = grid[grid < 1.0]
            for p in s.primes:
                N_p = block_length(p, alpha)
                lo = max(2, int(math.ceil(spec.c0 * p)))
                ells = admissible_ells(p, lo, N_p)
                if not ells:
                    continue
                depth = overlap_counts(p, ells, spec, TWO_PI * xs)
                allowed = hits_by_denominator(xs, N_p, rho_o).sum(axis=1)
                excess = int((depth > allowed).sum())
                overlap_rows.append({"p": p, "N_p": N_p, "max_depth": int(depth.max()), "excess": excess})
                report.add(CheckResult("p=%d overlap count within M_rho(tau/2pi, N_p)" % p, excess == 0, excess, 0.0))
        report.payload = {
            "constant": fit.constant,
            "per_size_max": fit.per_size_max,
            "growth": fit.growth,
            "grid_size": int(grid.size),
            "shell_violations": shell_violations,
            "sharp_shell_violations": sharp_violations,
            "overlap": overlap_rows,
        }

    def counting_rows(self) -> List[Dict[str, Any]]:
        s = self.settings
        grid = counting_grid(s.lemma7_grid, s.lemma7_farey)
        counts = count_table(grid, s.lemma7_sizes, s.lemma7_rho)
        rows: List[Dict[str, Any]] = []
        for i, x in enumerate(grid):
            for j, N in enumerate(s.lemma7_sizes):
                count = int(counts[i, j])
                rows.append(
                    {"x": float(x), "N": N, "rho": s.lemma7_rho, "count": count, "ratio": count / N ** (1.0 - s.lemma7_rho)}
                )
        return rows

    def check_lemma8(self, report: ScenarioReport) -> None:
        s = self.settings
        spec = self.spec()
        rng = np.random.default_rng(s.seed)
        rows: List[Dict[str, Any]] = []
        for p in s.lemma8_primes:
            N_p = block_length(p, s.alpha)
            freqs = np.arange(1, N_p + 1)
            polys = [dirichlet(N_p)] + [random_unit(freqs, rng) for _ in range(s.lemma8_vectors)]
            dilated = [dilate(Q, p) for Q in polys]
            ranges = (
                ("coprime ell in (N_p, p N_p)", [ell for ell in range(N_p + 1, p * N_p) if ell % p]),
                ("ell >= p N_p", list(range(p * N_p, max(s.lemma8_ell_max, p * N_p) + 1))),
            )
            for label, ells in ranges:
                lhs = np.zeros((len(ells), len(polys)))
                rhs = np.zeros((len(ells), len(polys)))
                for i, ell in enumerate(ells):
                    component = build_component(spec, ell)
                    spectrum = IndicatorSpectrum(component)
                    for k, (Q, QP) in enumerate(zip(polys, dilated)):
                        lhs[i, k] = energy(QP, component, spectrum)
                        rhs[i, k] = component.mu * Q.norm_sq
                per_ell = float(np.abs(lhs - rhs).max()) if ells else 0.0
                summed = float(np.abs(lhs.sum(axis=0) - rhs.sum(axis=0)).max()) if ells else 0.0
                rows.append({"p": p, "range": label, "count": len(ells), "per_ell_residual": per_ell, "sum_residual": summed})
                report.add(_upper_check("p=%d %s per-ell identity" % (p, label), per_ell, 0.0, EQUALITY_TOL))
                report.add(_upper_check("p=%d %s summed identity" % (p, label), summed, 0.0, EQUALITY_TOL))

        # the spectrum of I[ell] lives on ell Z
        leak = 0.0
        for ell in range(2, 51):
            n = np.arange(-10 * ell, 10 * ell + 1, dtype=np.int64)
            n = n[n % ell != 0]
            leak = max(leak, float(np.abs(IndicatorSpectrum(build_component(spec, ell))(n)).max()))
        report.add(_upper_check("I[ell] coefficients vanish off ell Z", leak, 0.0, ENERGY_TOL))
        report.payload = {"rows": rows, "leak": leak}

    def check_corollary_pdivides(self, report: ScenarioReport) -> None:
        s = self.settings
        spec = self.spec()
        rng = np.random.default_rng(s.seed)
        zeta_value = float(zeta(1.0 / s.alpha))
        chain = spec.c0 / math.pi * zeta_value
        rows: List[Dict[str, Any]] = []
        for p in s.primes:
            N_p = block_length(p, s.alpha)
            freqs = np.arange(1, N_p + 1)
            polys: List[Tuple[str, TrigPoly]] = [("dirichlet", dirichlet(N_p))]
            polys += [("random %d" % i, random_unit(freqs, rng)) for i in range(s.lemma5_random)]
            components = [build_component(spec, j * p) for j in range(1, N_p + 1)]
            spectra = [IndicatorSpectrum(c) for c in components]
            cs_bound = N_p * math.fsum(c.mu for c in components)
            report.add(_upper_check("p=%d N_p sum mu(I[jp]) within c0 zeta(1/alpha)/pi" % p, cs_bound, chain))
            for name, Q in polys:
                dilated = dilate(Q, p)
                total = math.fsum(energy(dilated, c, sp) for c, sp in zip(components, spectra))
                rows.append({"p": p, "poly": name, "sum": total, "cs_bound": cs_bound})
                report.add(_upper_check("p=%d %s sum within N_p sum mu(I[jp])" % (p, name), total, cs_bound * Q.norm_sq))
                if zeta_value < math.pi:
                    report.add(CheckResult("p=%d %s sum below c0" % (p, name), total < spec.c0 * Q.norm_sq, total, spec.c0))
        report.payload = {"rows": rows, "chain_bound": chain, "zeta": zeta_value}

    def check_theorem4(self, report: ScenarioReport) -> None:
        s = self.settings
        c, delta = s.theorem4_c, s.theorem4_delta
        rows: List[Dict[str, Any]] = []
        for ell in s.theorem4_ells:
            S = comb_with_notch(ell, s.alpha, c)
            row = theorem4_check(S, s.alpha, c, delta, [ell], s.gram_cap, s.samples, s.seed)[0]
            rows.append(row.to_json_dict())
            report.add(CheckResult("ell=%d condition holds" % ell, row.applicable, row.sublevel, row.threshold))
            if not row.applicable or row.lower is None:
                continue
            report.add(CheckResult("ell=%d A >= delta(1 - N sublevel/2pi)" % ell, bool(row.passed), row.lower, row.bound, 1e-9))
            report.add(_upper_check("ell=%d change of variables" % ell, row.identity_residual or 0.0, 0.0, EQUALITY_TOL))
            if row.oracle_min is not None:
                report.add(CheckResult("ell=%d Rayleigh oracle above A" % ell, row.oracle_min >= row.lower - ORACLE_TOL, row.oracle_min, row.lower, ORACLE_TOL))

        full = theorem4_check(ArcSet.full(), s.alpha, c, 1.0, [3], s.gram_cap)[0]
        report.add(CheckResult("full circle gives A = 1", full.lower is not None and abs(full.lower - 1.0) <= ENERGY_TOL, full.lower, 1.0, ENERGY_TOL))
        half = theorem4_check(normalize([(0.0, math.pi)]), 1.0, 0.9, 0.5, [2, 3], s.gram_cap)
        report.add(CheckResult("half circle ell=2 applies and holds", bool(half[0].applicable and half[0].passed), half[0].lower, half[0].bound))
        report.add(CheckResult("half circle ell=3 not applicable", not half[1].applicable, half[1].sublevel, half[1].threshold))
        report.payload = {"rows": rows, "reference": [full.to_json_dict()] + [r.to_json_dict() for r in half]}

    def check_lemma9(self, report: ScenarioReport) -> None:
        s = self.settings
        half = normalize([(0.0, math.pi)], tag="[0,pi)")
        quarter = normalize([(0.0, math.pi / 2.0)], tag="[0,pi/2)")
        full = ArcSet.full()
        S = self.s_alpha(self.spec())
        rows: Dict[str, List[Dict[str, Any]]] = {"half": [], "quarter": [], "full": [], "s_alpha": []}
        for K in s.lemma9_ks:
            h = lattice_riesz_check(half, 2, K, s.gram_cap)
            q = lattice_riesz_check(quarter, 2, K, s.gram_cap)
            f = lattice_riesz_check(full, 3, K, s.gram_cap)
            a = lattice_riesz_check(S, 2, K, s.gram_cap)
            rows["half"].append(h.to_json_dict())
            rows["quarter"].append(q.to_json_dict())
            rows["full"].append(f.to_json_dict())
            rows["s_alpha"].append(a.to_json_dict())
            report.add(CheckResult("[0,pi) K=%d criterion and A = 1/2" % K, h.criterion and abs(h.lower - 0.5) <= ENERGY_TOL, h.lower, 0.5, ENERGY_TOL))
            report.add(CheckResult("[0,pi/2) K=%d criterion fails" % K, not q.criterion, q.zero_set))
            report.add(CheckResult("full circle K=%d criterion and A = 1" % K, f.criterion and abs(f.lower - 1.0) <= ENERGY_TOL, f.lower, 1.0, ENERGY_TOL))
            report.add(CheckResult("S_alpha K=%d" % K, a.criterion, a.lower, informational=True, detail="zero set %.3e" % a.zero_set))
        quarter_lowers = [r["A"] for r in rows["quarter"]]
        report.add(CheckResult("[0,pi/2) A nonincreasing in K", all(b <= a + ENERGY_TOL for a, b in zip(quarter_lowers, quarter_lowers[1:]))))
        report.add(_upper_check("[0,pi/2) A at K=%d" % s.lemma9_ks[-1], quarter_lowers[-1], 1e-3, 0.0))
        report.payload = rows

    def check_uniting_blocks(self, report: ScenarioReport) -> None:
        s = self.settings
        spec = self.spec()
        S = self.s_alpha(spec)
        spectrum = IndicatorSpectrum(S)
        blocks = [block(p, s.alpha) for p in s.uniting_primes]
        schedule = BlockSchedule.create(blocks, S, s.gram_cap, spectrum)
        report.disclosures = {"L": spec.L, "tail_bound": spec.tail_bound()}
        try:
            assembly = assemble_lambda(schedule, S, s.m_max, s.gram_cap, spectrum, s.search_mode)
        except SearchExhaustedError as e:
            report.add(CheckResult("translation search", False, detail=str(e)))
            report.payload = {"gamma": schedule.gamma, "lowers": schedule.lowers, "step": e.step}
            return
        report.add(CheckResult("assembled A meets gamma/2 (1 + 1/K)", assembly.verified, assembly.bound, assembly.target, 1e-9))
        report.add(_upper_check("assembled B at most 1", assembly.upper, 1.0, ORACLE_TOL))
        size = sum(len(b) for b in blocks)
        report.add(CheckResult("translated blocks are disjoint", len(assembly.frequencies) == size, len(assembly.frequencies), size))
        G = gram(assembly.frequencies, S, s.gram_cap, spectrum)
        oracle = rayleigh_min(G, s.samples, s.seed)
        report.add(CheckResult("Rayleigh oracle above A", oracle >= assembly.bound - ORACLE_TOL, oracle, assembly.bound, ORACLE_TOL))
        report.payload = assembly.to_json_dict()
        report.payload["lowers"] = schedule.lowers
