"""Quantum harmonic Otto engine and refrigerator under the maximum Omega criterion."""
from .cycle import (BathPair, CycleEnergies, CycleReport, FrequencyPair, Protocol, Regime,
                    adiabaticity, coth_half, corner_energies, cycle_report, heats, regime_approx)
from .engine import (EngineObjective, LoopCurve, Objective, emof_adiabatic_highT, emof_ss,
                     eta_max_ss, loop_curve, maximize_omega_lowT, maximize_work_highT,
                     maximize_work_lowT, maximize_work_ss, reference_efficiencies)
from .errors import DomainError, InfeasibleError, NumericFailure
from .fridge import (CoolingPeak, CoolingRegime, FridgeObjective, cooling_power_at_mof,
                     cop_max_ss, cop_mof_adiabatic_highT, cop_mof_adiabatic_lowT, cop_mof_ss,
                     cp_mof_peak)
from .oracle import (Maximum, ScalarProblem1D, ScalarProblem2D, fit_series, maximize_1d,
                     maximize_2d)
from .result import ANALYTIC, NUMERIC, OptResult
from .sweeps import SweepSpec, read_csv, run_sweep
from .verify import VerificationRecord, run_suite

__version__ = "0.1.0"
