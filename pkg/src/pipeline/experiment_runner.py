#!/usr/bin/env python3
"""
Experiment Runner for muntzbasis

Maps each CLI command to the library calls behind it and shapes the result
into a JSON-ready document plus plot-ready table rows.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence

import numpy as np
from scipy.stats import linregress

from ..approx.experiments import asymptotic_check, rate_experiment
from ..approx.minimax import best_trig_approx
from ..basis.candidates import candidates_from_sequence
from ..basis.elimination import gaussian_exclusion, span_residual
from ..basis.validation import validate_basis_section
from ..config.settings import DEFAULT_CONFIG
from ..core.exponents import check_gap_condition, condition_verdict
from ..core.muntz import MuntzPolynomial
from ..fourier.summation import SummationMatrix, convergence_experiment, lebesgue_constant
from ..fourier.trig import FourierCoefficients, TrigPolynomial
from ..muntz_ops.derivative_check import derivative_weak_l1_check
from ..muntz_ops.remez import remez_eta_estimate
from ..muntz_ops.shift import ExponentShiftPlan, compose_shift_chain
from ..muntz_ops.weak import weak_norm
from ..utils.config_loader import ExperimentConfig
from ..utils.error_handler import ConfigurationError
from ..utils.file_handler import FileHandler
from ..utils.logger import LoggerMixin, log_configuration
from ..weil.derivative import weil_derivative, weil_nagy_norm, weil_reconstruct
from ..weil.psi import PsiWeight, validate_psi_class
from .function_catalog import resolve_function, sequence_from_params

# certified gap above which a best approximation is flagged
GAP_TOLERANCE = 1e-3
# span residual above which a built basis is flagged
SPAN_TOLERANCE = 1e-6
# leading CSV columns of the n-sweeps
SWEEP_COLUMNS = ["n", "value", "tol"]


@dataclass(frozen=True)
class RunOutcome:
    """What a command produced: the JSON result and its table form."""

    result: Any
    rows: List[Dict[str, Any]] = field(default_factory=list)
    columns: List[str] = field(default_factory=list)
    accuracy_flag: bool = False


class ExperimentRunner(LoggerMixin):
    """
    Runs one resolved experiment config.

    Numeric defaults (tolerances, grid factors, worker counts) come from the
    settings dict; per-command parameters come from the config.
    """

    def __init__(self, settings: Optional[Dict[str, Any]] = None):
        """
        Initialize the runner.

        Args:
            settings: Numeric settings, as returned by config.load_config
        """
        self.settings = {**DEFAULT_CONFIG, **(settings or {})}
        self.file_handler = FileHandler()
        self._handlers: Dict[str, Callable[[Mapping[str, Any], int], RunOutcome]] = {
            "check-lambda": self._check_lambda,
            "fourier-approx": self._fourier_approx,
            "lebesgue": self._lebesgue,
            "weil-deriv": self._weil_deriv,
            "best-approx": self._best_approx,
            "rate-experiment": self._rate_experiment,
            "asymptotic": self._asymptotic,
            "remez-eta": self._remez_eta,
            "theorem5": self._shift_chain,
            "weak-norm": self._weak_norm,
            "prop10": self._derivative_check,
            "basis-build": self._basis_build,
            "basis-validate": self._basis_validate,
        }

    @property
    def commands(self) -> List[str]:
        return list(self._handlers)

    def run(self, config: ExperimentConfig) -> RunOutcome:
        """
        Run the command named by config.

        Raises:
            ConfigurationError: unknown command
            MuntzError: whatever the library raises for these parameters
        """
        handler = self._handlers.get(config.command)
        if handler is None:
            raise ConfigurationError(f"unknown command '{config.command}'", context={'known': self.commands})
        log_configuration(config.to_dict())
        self.log_info(f"Running {config.command}")
        outcome = handler(config.params, config.seed)
        if outcome.accuracy_flag:
            self.log_warning(f"{config.command}: result is not certified to the requested accuracy")
        return outcome

    def _check_lambda(self, params: Mapping[str, Any], seed: int) -> RunOutcome:
        seq = sequence_from_params(params)
        gap_holds, alpha0 = check_gap_condition(seq) if len(seq) > 1 else (seq.gap_rule_holds, seq.alpha0)
        result = {
            "sequence": seq.to_dict(),
            "alpha0": alpha0,
            "gap_condition": gap_holds,
            "alpha1": seq.alpha1,
            "tail_bound": seq.tail_bound,
            "muntz_condition": seq.muntz_condition_holds,
            "verdict": condition_verdict(seq),
        }
        columns = ["rule", "N", "alpha0", "gap_condition", "alpha1", "tail_bound", "muntz_condition", "verdict"]
        row = {key: result[key] for key in columns if key in result}
        row.update({"rule": seq.rule, "N": seq.N})
        return RunOutcome(result, [row], columns)

    def _fourier_approx(self, params: Mapping[str, Any], seed: int) -> RunOutcome:
        entry = resolve_function(params["function"], params, seed)
        Q = SummationMatrix.from_name(params["method"])
        report = convergence_experiment(entry.f, Q, params["n"], K=params.get("K"), tol=params["tol"],
                                        coefficient_factor=self.settings['coefficient_factor'],
                                        breakpoints=entry.breakpoints)
        result = {"function": entry.description, **report.to_dict()}
        rows = [{"n": r.n, "value": r.error, "tol": params["tol"], "argmax": r.argmax} for r in report.rows]
        return RunOutcome(result, rows, SWEEP_COLUMNS + ["argmax"])

    def _lebesgue(self, params: Mapping[str, Any], seed: int) -> RunOutcome:
        Q = SummationMatrix.from_name(params["method"])
        ns = sorted(set(int(n) for n in params["n"]))
        rows = [{"n": n, "lebesgue": lebesgue_constant(Q, n, params["tol"])} for n in ns]
        result: Dict[str, Any] = {"method": Q.name, "rows": rows}

        positive = [r for r in rows if r["n"] > 0]
        if len(positive) >= 3:
            fit = linregress(np.log([r["n"] for r in positive]), [r["lebesgue"] for r in positive])
            result["log_fit"] = {"a": float(fit.intercept), "b": float(fit.slope),
                                 "r_squared": float(fit.rvalue ** 2)}
        table = [{"n": r["n"], "value": r["lebesgue"], "tol": params["tol"]} for r in rows]
        return RunOutcome(result, table, SWEEP_COLUMNS)

    def _weil_deriv(self, params: Mapping[str, Any], seed: int) -> RunOutcome:
        if "input" in params:
            p = self.file_handler.load_trig(params["input"])
        else:
            p = TrigPolynomial(0.0, ((1.0, 0.0), (0.0, 0.5)))
        if params["psi_rule"] == "log":
            psi = PsiWeight.log(params["beta"], params["K"])
        else:
            psi = PsiWeight.power(params["r"], params["beta"], params["K"])

        c = FourierCoefficients.from_trig(p)
        d = weil_derivative(c, psi)
        back = weil_reconstruct(d, psi, c.a0)
        round_trip = float(max(abs(back.a0 - c.a0), np.max(np.abs(back.a - c.a)), np.max(np.abs(back.b - c.b))))
        result = {
            "input": p.to_dict(),
            "psi": psi.to_dict(),
            "derivative": d.to_trig().to_dict(),
            "round_trip_error": round_trip,
            "nagy_norm": weil_nagy_norm(c, psi, params["tol"]),
            "psi_class": validate_psi_class(psi).to_dict(),
        }
        rows = [{"k": k, "a": a, "b": b, "da": da, "db": db}
                for k, ((a, b), (da, db)) in enumerate(zip(c.pairs, d.pairs), start=1)]
        return RunOutcome(result, rows, ["k", "a", "b", "da", "db"])

    def _best_approx(self, params: Mapping[str, Any], seed: int) -> RunOutcome:
        entry = resolve_function(params["function"], params, seed)
        grid_factor = params.get("grid_factor", self.settings['grid_factor'])
        results = [best_trig_approx(entry.f, int(n), tol=params["tol"], grid_factor=grid_factor,
                                    refinement_passes=params["refinement_passes"])
                   for n in sorted(set(params["n"]))]

        # E_n is nonincreasing in n up to the certified gaps
        monotone = all(b.lower <= a.upper + 1e-12 for a, b in zip(results, results[1:]))
        worst_gap = max(r.certified_gap for r in results)
        result = {"function": entry.description, "approximations": [r.to_dict() for r in results],
                  "monotone": monotone, "worst_gap": worst_gap}
        columns = ["n", "En", "lower", "upper", "certified_gap", "alternation_count"]
        rows = [{key: getattr(r, key) for key in columns} for r in results]
        return RunOutcome(result, rows, columns, accuracy_flag=worst_gap > GAP_TOLERANCE)

    def _rate_experiment(self, params: Mapping[str, Any], seed: int) -> RunOutcome:
        seq = sequence_from_params(params)
        config = {
            'seed': seed,
            'grid_factor': params.get("grid_factor", self.settings['grid_factor']),
            'refinement_passes': params["refinement_passes"],
            'sup_refine': self.settings['sup_refine'],
            'max_workers': self.settings['max_workers'],
        }
        report = rate_experiment(seq, params["gamma"], params["n"], config=config, samples=params["samples"],
                                 rho=params["rho"], terms=params["terms"])
        columns = ["n", "En", "lower", "upper", "statistic", "running_max"]
        return RunOutcome({"sequence": seq.to_dict(), **report.to_dict()},
                          [row.to_dict() for row in report.rows], columns)

    def _asymptotic(self, params: Mapping[str, Any], seed: int) -> RunOutcome:
        report = asymptotic_check(params["alpha"], params["x"], params["K"], params["certify_tol"])
        rows = [row.to_dict() for row in report.rows]
        columns = ["x", "partial_sum_sin", "partial_sum_cos", "asymptote_sin", "asymptote_cos",
                   "residual_sin", "residual_cos", "tail_bound"]
        return RunOutcome(report.to_dict(), rows, columns, accuracy_flag=report.accuracy_flag)

    def _remez_eta(self, params: Mapping[str, Any], seed: int) -> RunOutcome:
        seq = sequence_from_params(params)
        estimate = remez_eta_estimate(seq, params["delta"], params["samples"], seed, params["terms"],
                                      refine=self.settings['sup_refine'],
                                      max_workers=self.settings['max_workers'])
        rows = [{"sample": i, "running_max": value} for i, value in enumerate(estimate.running_max, start=1)]
        return RunOutcome({"sequence": seq.to_dict(), **estimate.to_dict()}, rows, ["sample", "running_max"])

    def _shift_chain(self, params: Mapping[str, Any], seed: int) -> RunOutcome:
        p = self.file_handler.load_muntz(params["from"])
        targets = self.file_handler.load_targets(params["to"])
        plans: List[ExponentShiftPlan] = []
        source: Sequence[float] = p.exponents.tolist()
        for target in targets:
            plans.append(ExponentShiftPlan(tuple(source), tuple(target)))
            source = target
        chain = compose_shift_chain(p, plans, delta=params.get("delta"), refine=self.settings['sup_refine'])

        columns = ["step", "m", "delta_m", "lambda_m", "norm", "bound", "actual", "admissible", "bound_ok"]
        rows = []
        for i, step in enumerate(chain.steps, start=1):
            rows.append({"step": i, "m": step.m, "delta_m": step.delta_m, "lambda_m": step.lambda_m,
                         "norm": step.norm, "bound": step.bound, "actual": step.actual,
                         "admissible": step.admissible, "bound_ok": step.bound_ok})
        return RunOutcome({"input": p.to_dict(), **chain.to_dict()}, rows, columns)

    def _weak_norm(self, params: Mapping[str, Any], seed: int) -> RunOutcome:
        entry = resolve_function(params["function"], params, seed)
        result = weak_norm(entry.f, params["s"], params["a"], params["b"],
                           scan_points=params.get("scan_points", self.settings['weak_scan_points']))
        columns = ["value", "level", "measure", "stable", "excluded_points", "s"]
        row = result.to_dict()
        return RunOutcome({"function": entry.description, "interval": [params["a"], params["b"]], **row},
                          [row], columns, accuracy_flag=not result.stable)

    def _derivative_check(self, params: Mapping[str, Any], seed: int) -> RunOutcome:
        if "input" in params:
            p = self.file_handler.load_muntz(params["input"])
        else:
            p = MuntzPolynomial.from_terms((float(lam), float(a)) for lam, a in params["polynomial"])
        report = derivative_weak_l1_check(p, scan_points=params.get("scan_points", self.settings['weak_scan_points']),
                                          disc_points=params.get("disc_points", self.settings['disc_points']))
        row = report.to_dict()
        row.pop("notes")
        return RunOutcome({"polynomial": p.to_dict(), **report.to_dict()}, [row], list(row),
                          accuracy_flag=not report.weak_norm_stable)

    def _basis_build(self, params: Mapping[str, Any], seed: int) -> RunOutcome:
        seq = sequence_from_params(params)
        Q = SummationMatrix.from_name(params["method"])
        candidate_set = candidates_from_sequence(seq, len(seq), Q, params["degrees"],
                                                 tol=self.settings['quad_tol'],
                                                 rank_tol=params.get("rank_tol", self.settings['rank_tol']),
                                                 coefficient_factor=self.settings['coefficient_factor'])
        system = gaussian_exclusion(candidate_set.candidates,
                                    pivot_tol=params.get("pivot_tol", self.settings['pivot_tol']),
                                    refine=self.settings['sup_refine'])
        invariants = system.check_invariants()
        residual = span_residual(system, candidate_set.candidates)
        if not all(invariants.values()):
            self.log_warning(f"step system invariants violated: {invariants}")

        result = {
            "sequence": seq.to_dict(),
            "method": Q.name,
            "sources": [list(s) for s in candidate_set.sources],
            "dropped": [list(s) for s in candidate_set.dropped],
            "system": system.to_dict(),
            "invariants": invariants,
            "span_residual": residual,
        }
        rows = [{"l": l, "lead": m, "high": n, "lead_column": col}
                for l, (m, n, col) in enumerate(zip(system.lead, system.high, system.lead_columns), start=1)]
        return RunOutcome(result, rows, ["l", "lead", "high", "lead_column"],
                          accuracy_flag=not math.isfinite(residual) or residual > SPAN_TOLERANCE)

    def _basis_validate(self, params: Mapping[str, Any], seed: int) -> RunOutcome:
        system = self.file_handler.load_step_system(params["input"])
        report = validate_basis_section(system, params["L"], probes=params["probes"], seed=seed,
                                        grid_m=params.get("grid_m"),
                                        directions=params.get("directions", self.settings['inclination_directions']),
                                        max_workers=self.settings['max_workers'])
        rows = []
        for j, norm in enumerate(report.projection_norms, start=1):
            rows.append({"j": j, "inclination": report.inclinations[j - 1],
                         "inclination_lower": report.inclination_lower[j - 1],
                         "projection_lower": norm.lower, "projection_upper": norm.upper})
        return RunOutcome(report.to_dict(), rows,
                          ["j", "inclination", "inclination_lower", "projection_lower", "projection_upper"])
