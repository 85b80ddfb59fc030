"""Command-line entry point: simulate, sweep, verify and analyze scenarios.

    python -m cli.main simulate --config presets/scenarios/cobb-douglas-2good.json --out out
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from economy.economies import Economy, random_price
from economy.repository import EconomyRepository
from utils.errors import ConfigError, DomainError, NotConverging, TatonnementError
from utils.float_utils import to_float_list
from utils.logging_setup import configure_logging
from analysis.cycles import annotate_cycle, cycle_angle_sweep, detect_period, detect_two_point_cycle
from analysis.reports import (
    cycle_report_to_dict,
    stability_report_to_dict,
    sweep_row_to_dict,
    write_json,
    write_sweep_csv,
)
from analysis.stability import eigen_analysis, fit_decay_rate
from cli.models import ScenarioConfig, SimulationSummary, load_scenario
from cli.verify import locate_equilibrium, run_property_battery
from dynamics.export import write_trajectory_csv
from dynamics.runner import run
from dynamics.shared import Mechanism, Trajectory

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_DOMAIN = 3

CONVERGED_ANGLE = 1e-6


def _initial_price(scenario: ScenarioConfig, economy: Economy, seed: int) -> np.ndarray:
    if scenario.initial_price is not None:
        if len(scenario.initial_price) != economy.n_commodities:
            raise ConfigError(
                f"initial_price has {len(scenario.initial_price)} entries, economy has {economy.n_commodities}"
            )
        if any(v <= 0 for v in scenario.initial_price):
            raise ConfigError("initial_price must be strictly positive")
        return np.array(scenario.initial_price, dtype=np.float64)
    return random_price(economy.n_commodities, np.random.default_rng(seed))


def _initial_velocity(scenario: ScenarioConfig, economy: Economy) -> Optional[np.ndarray]:
    if scenario.initial_velocity is None:
        return None
    if len(scenario.initial_velocity) != economy.n_commodities:
        raise ConfigError(
            f"initial_velocity has {len(scenario.initial_velocity)} entries, economy has {economy.n_commodities}"
        )
    return np.array(scenario.initial_velocity, dtype=np.float64)


def _stability_constants(scenario: ScenarioConfig):
    """(k, gamma) in continuous-time units for the decay-rate prediction."""
    dynamics = scenario.dynamics
    if dynamics.gamma is not None:
        return dynamics.k, dynamics.gamma
    if dynamics.gamma_hat is not None:
        return dynamics.k, dynamics.gamma_hat / dynamics.dt
    return dynamics.k, None


def _summary(scenario: ScenarioConfig, economy: Economy, seed: int, trajectory: Trajectory,
             p_star: Optional[np.ndarray]) -> SimulationSummary:
    dynamics = scenario.dynamics
    final_angle = trajectory.angle_eq[-1] if p_star is not None else None
    if final_angle is not None:
        converged = final_angle < CONVERGED_ANGLE
    else:
        converged = trajectory.xi_norm[-1] < CONVERGED_ANGLE
    return SimulationSummary(
        mechanism=dynamics.mechanism.value,
        economy=economy.name,
        constants=dynamics.model_dump(mode="json", exclude_none=True),
        seed=seed,
        steps=dynamics.n_steps,
        n_states=len(trajectory),
        status=trajectory.status.value,
        final_xi_norm=trajectory.xi_norm[-1],
        final_angle_eq=final_angle,
        converged=converged,
        equilibrium=to_float_list(p_star) if p_star is not None else None,
        flags=list(trajectory.flags),
    )


def run_simulate(scenario: ScenarioConfig, economy: Economy, out_dir: Path, seed: int) -> int:
    """Run one trajectory; writes trajectory.csv and summary.json."""
    p0 = _initial_price(scenario, economy, seed)
    v0 = _initial_velocity(scenario, economy)
    p_star = locate_equilibrium(economy, p0)
    if p_star is None:
        logger.warning(f"No equilibrium found for {economy.name}; angle_eq is left empty")

    try:
        trajectory = run(scenario.dynamics, economy, p0, p_star=p_star, v0=v0, seed=seed)
    except DomainError as e:
        logger.error(f"Run stopped: {e.message}")
        if e.trajectory is None or len(e.trajectory) == 0:
            return EXIT_DOMAIN
        write_trajectory_csv(e.trajectory, out_dir / "trajectory.csv")
        summary = _summary(scenario, economy, seed, e.trajectory, p_star)
        summary.error = e.to_dict()
        write_json(summary.model_dump(mode="json"), out_dir / "summary.json")
        print(f"❌ {e.message} (partial trajectory written to {out_dir})")
        return EXIT_DOMAIN

    write_trajectory_csv(trajectory, out_dir / "trajectory.csv")
    summary = _summary(scenario, economy, seed, trajectory, p_star)
    if scenario.analysis.cycles:
        report = detect_two_point_cycle(trajectory)
        if report is not None and scenario.dynamics.mechanism == Mechanism.SECOND_ORDER_DISCRETE:
            annotate_cycle(report, scenario.dynamics.k, scenario.dynamics.gamma_hat, scenario.dynamics.dt)
        summary.cycle = cycle_report_to_dict(report)
        summary.period = detect_period(trajectory, scenario.analysis.max_period)
    if scenario.analysis.stability and p_star is not None:
        k, gamma = _stability_constants(scenario)
        try:
            stability = eigen_analysis(economy, p_star, k=k, gamma=gamma)
        except TatonnementError as e:
            logger.warning(f"Stability analysis skipped: {e.message}")
        else:
            try:
                stability.fitted_rate = fit_decay_rate(trajectory, p_star)
            except NotConverging as e:
                logger.info(f"No decay rate fitted: {e.message}")
            summary.stability = stability_report_to_dict(stability)
    write_json(summary.model_dump(mode="json"), out_dir / "summary.json")

    status = "✅ converged" if summary.converged else "⚠️  not converged"
    print(f"{status}: {len(trajectory)} states, final |xi| = {summary.final_xi_norm:.3e}")
    return EXIT_OK


def run_sweep(scenario: ScenarioConfig, economy: Economy, out_dir: Path, seed: int) -> int:
    """Damping sweep over analysis.sweep; writes sweep.csv and sweep.json."""
    gamma_hats = scenario.analysis.sweep
    if not gamma_hats:
        raise ConfigError("The sweep command needs analysis.sweep with at least one gamma_hat")
    p0 = _initial_price(scenario, economy, seed)
    p_star = locate_equilibrium(economy, p0)
    dynamics = scenario.dynamics
    rows = cycle_angle_sweep(economy, dynamics.k, gamma_hats, p0, dt=dynamics.dt, steps=dynamics.n_steps,
                             p_star=p_star)
    write_sweep_csv(rows, out_dir / "sweep.csv")
    write_json({"seed": seed, "k": dynamics.k, "dt": dynamics.dt, "rows": [sweep_row_to_dict(r) for r in rows]},
               out_dir / "sweep.json")
    for row in rows:
        if row.error:
            print(f"  ❌ gamma_hat={row.gamma_hat}: {row.error}")
        elif row.converged:
            print(f"  ✅ gamma_hat={row.gamma_hat}: converged")
        else:
            print(f"  🔁 gamma_hat={row.gamma_hat}: alpha={row.alpha_measured:.6g}")
    return EXIT_OK


def run_verify(scenario: ScenarioConfig, economy: Economy, out_dir: Path, seed: int) -> int:
    """Property battery; exit 1 when any check fails."""
    print(f"🔍 Verifying economy '{economy.name}'")
    print("=" * 60)
    results = run_property_battery(economy, seed, scenario.verify_samples, scenario.verify_steps)
    for result in results:
        mark = "✅" if result.passed else "❌"
        print(f"  {mark} {result.name:<12} {result.detail}")
    write_json({"economy": economy.name, "seed": seed,
                "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]},
               out_dir / "verify.json")
    all_ok = all(r.passed for r in results)
    print("=" * 60)
    print("✅ All checks passed" if all_ok else "❌ Some checks failed")
    return EXIT_OK if all_ok else EXIT_FAILURE


def run_analyze(scenario: ScenarioConfig, economy: Economy, out_dir: Path, seed: int) -> int:
    """Stability report at the equilibrium; writes stability.json."""
    p_star = locate_equilibrium(economy, _initial_price(scenario, economy, seed))
    if p_star is None:
        print(f"❌ No equilibrium found for {economy.name}")
        return EXIT_FAILURE
    k, gamma = _stability_constants(scenario)
    try:
        report = eigen_analysis(economy, p_star, k=k, gamma=gamma)
    except TatonnementError as e:
        print(f"❌ {e.message}")
        return EXIT_FAILURE
    write_json({"economy": economy.name, "stability": stability_report_to_dict(report)}, out_dir / "stability.json")
    print(f"{'✅ stable' if report.stable else '⚠️  not stable'}: lambda_m = {report.lambda_m}")
    return EXIT_OK


COMMANDS = {
    "simulate": run_simulate,
    "sweep": run_sweep,
    "verify": run_verify,
    "analyze": run_analyze,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tatonnement", description="Classical and second-order tatonnement lab")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, handler in COMMANDS.items():
        sub = subparsers.add_parser(name, help=handler.__doc__.splitlines()[0])
        sub.add_argument("--config", required=True, help="scenario JSON file")
        sub.add_argument("--out", default=None, help="output directory (overrides the scenario)")
        sub.add_argument("--seed", type=int, default=None, help="seed for random initial prices")
        sub.add_argument("--quiet", action="store_true", help="only log warnings and errors")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.quiet)
    try:
        scenario, base_dir = load_scenario(args.config)
        economy = EconomyRepository.load(scenario.economy_path(base_dir))
        out_dir = Path(args.out if args.out is not None else scenario.output_dir)
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ConfigError(f"Cannot create output directory {out_dir}: {e}") from e
        seed = args.seed if args.seed is not None else scenario.seed
        if seed < 0:
            raise ConfigError(f"Seed must be non-negative, got {seed}")
        return COMMANDS[args.command](scenario, economy, out_dir, seed)
    except ConfigError as e:
        logger.error(e.message)
        print(f"❌ {e.message}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
