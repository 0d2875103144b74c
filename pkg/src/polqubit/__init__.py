"""Gate operations and open-system dynamics for trap-confined condensate qubits.

Submodules:

* `linalg`       -- validated dense complex linear algebra (2x2 and 4x4);
* `hamiltonians` -- trap, pulse, and coupling Hamiltonians;
* `gates`        -- closed-form gate unitaries and golden matrices;
* `lindblad`     -- master-equation integration and the superoperator oracle;
* `metrics`      -- Bloch vector, fidelity, entropy, concurrence, purity;
* `experiments`  -- scenario runner with CSV/JSON output (CLI: `sim`);
* `plots`        -- PNG rendering of scenario results.
"""
from . import experiments, gates, hamiltonians, linalg, lindblad, metrics
from .experiments import ScenarioConfig, Scenario, run_scenario
from .lindblad import DecoherenceRates, IntegrationError, Trajectory, evolve
from .metrics import bloch_vector, concurrence, fidelity, purity, vn_entropy

__version__ = "0.1.0"

__all__ = [
    "experiments", "gates", "hamiltonians", "linalg", "lindblad", "metrics",
    "ScenarioConfig", "Scenario", "run_scenario",
    "DecoherenceRates", "IntegrationError", "Trajectory", "evolve",
    "bloch_vector", "concurrence", "fidelity", "purity", "vn_entropy",
    "__version__",
]
