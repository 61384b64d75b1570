"""Build problem instances from files or from the built-in Fock-state examples."""
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from codec.models import load_matrix, load_perturbation_series
from oracle.crosscheck import fold_perturbation
from series.base import EntropySeries
from series.expansion import entropy_series
from series.multi import PerturbationSeries, entropy_series_multi
from settings.config import Settings
from spectral.decompose import matrix_entropy
from spectral.errors import InvalidArgument, MalformedInput
from spectral.matrices import DensityMatrix, validate_density, validate_perturbation
from states.fock import FockStateSpec, displaced_thermal_terms, onemode_perturbation, thermal_state, twomode_state_and_perturbation

logger = logging.getLogger(__name__)


class ExampleName(str, Enum):
    ONEMODE_THERMAL = "onemode-thermal"
    TWOMODE_THERMAL = "twomode-thermal"
    DISPLACED_THERMAL = "displaced-thermal"


@dataclass(frozen=True)
class Instance:
    """A base state with one or more perturbation orders."""
    rho0: DensityMatrix
    ps: PerturbationSeries

    @property
    def multi(self) -> bool:
        return self.ps.max_order > 1

    def series(
        self,
        K: int,
        rel_tol: float | None,
        settings: Settings,
        cluster_tol: float | None = None,
    ) -> EntropySeries:
        if self.multi:
            return entropy_series_multi(self.rho0, self.ps, K, rel_tol=rel_tol, settings=settings)
        return entropy_series(self.rho0, self.ps.terms[0], K, rel_tol=rel_tol, cluster_tol=cluster_tol, settings=settings)

    def exact(self, eps: float) -> float:
        return matrix_entropy(fold_perturbation(self.rho0, self.ps, eps))


def example_instance(name: ExampleName, fs: FockStateSpec, settings: Settings) -> Instance:
    fs = fs.resolve(settings)
    logger.info(f"example {name.value}: v={fs.v}, alpha={fs.alpha}, D={fs.D}")
    match name:
        case ExampleName.ONEMODE_THERMAL:
            rho0 = thermal_state(fs.v, fs.D, settings)
            return Instance(rho0=rho0, ps=PerturbationSeries(terms=[onemode_perturbation(fs, settings)]))
        case ExampleName.TWOMODE_THERMAL:
            rho0, h = twomode_state_and_perturbation(fs, settings)
            return Instance(rho0=rho0, ps=PerturbationSeries(terms=[h]))
        case ExampleName.DISPLACED_THERMAL:
            return Instance(rho0=thermal_state(fs.v, fs.D, settings), ps=displaced_thermal_terms(fs, settings))
    raise InvalidArgument(f"unknown example {name}")


def file_instance(
    rho0_path: Path,
    h_path: Path | None,
    higher_paths: list[Path] | None,
    terms_path: Path | None,
    settings: Settings,
    trace_deficit: float = 0.0,
) -> Instance:
    """rho_0 from ``rho0_path``; H^(1) from ``h_path``, H^(2).. from ``higher_paths``, or all from ``terms_path``."""
    rho0 = validate_density(load_matrix(rho0_path), trace_deficit, settings)
    if terms_path is not None:
        mats = load_perturbation_series(terms_path)
    elif h_path is not None:
        mats = [load_matrix(h_path)] + [load_matrix(p) for p in higher_paths or []]
    else:
        raise MalformedInput("series: give --H or --terms")
    terms = [validate_perturbation(m, settings) for m in mats]
    return Instance(rho0=rho0, ps=PerturbationSeries(terms=terms))


def resolve_instance(
    name: ExampleName | None,
    fs: FockStateSpec,
    rho0_path: Path | None,
    h_path: Path | None,
    settings: Settings,
) -> Instance:
    """Built-in example when ``name`` is given, otherwise the --rho0/--H pair."""
    if name is not None:
        return example_instance(name, fs, settings)
    if rho0_path is None or h_path is None:
        raise MalformedInput("give --name or both --rho0 and --H")
    return file_instance(rho0_path, h_path, None, None, settings)
