# Python 3.10.11
# Creado: 15/10/2026
"""API principal

Se presenta como una clase "GrokLab" que hay que instanciar para poder
usarla.

"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Literal

from groklab.campaign import (
    CampaignConfig,
    ClaimsFile,
    analyze_campaign,
    emit_figures,
    run_campaign,
    simulate_bounds,
    verify,
)
from groklab.campaign.analyze import REPORTS_DIR

Result = dict[str, Any]


class GrokLab:
    """API principal

    Presenta los métodos:

    - run: Lanza las ejecuciones pendientes de una campaña.
    - analyze: Genera los informes de una campaña terminada.
    - simulate: Verifica las cotas de la recursión de la norma.
    - verify: Compara los informes con un archivo de afirmaciones.
    - emit_figures: Escribe los datos de figuras en texto de columnas.

    Todos los métodos trabajan sobre el directorio de una campaña y devuelven
    un reporte en forma de diccionario.

    El constructor no recibe argumentos.

    """

    def __init__(self) -> None:
        self.progress = True

    def run(self, config_path: Path, out_dir: Path | None = None, jobs: int | None = None) -> Result:
        campaign = CampaignConfig.from_toml(config_path)
        result = run_campaign(campaign, out_dir, jobs, progress=self.progress)
        return result.serialize()

    def analyze(
        self,
        runs_dir: Path,
        xlsx: Path | None = None,
        calibration_cell: str | None = None,
    ) -> Result:
        written = analyze_campaign(runs_dir, xlsx=xlsx, calibration_cell=calibration_cell)
        return {"reports": {name: str(path) for name, path in written.items()}}

    def simulate(self, grid_path: Path | None, runs_dir: Path) -> Result:
        """Escribe 'bounds.toml' en el directorio de informes de la campaña"""
        reports_dir = Path(runs_dir) / REPORTS_DIR
        document = simulate_bounds(grid_path, reports_dir)
        grid = document["grid"]
        return {
            "path": str(reports_dir / "bounds.toml"),
            "n_points": grid["n_points"],
            "K_fit": grid["K_fit"],
            "K_max": grid["K_max"],
            "passed": grid["passed"],
            "inverse_spread_c0": grid["inverse_spread_c0"],
            "runtime_s": grid["runtime_s"],
            "kosson_rel_error": document["kosson"]["rel_error_exact"],
            "rate_K": document["rate"]["K"],
        }

    def verify(
        self,
        runs_dir: Path,
        claims_path: Path | None = None,
        scope: Literal["desk", "full"] = "desk",
    ) -> Result:
        claims = ClaimsFile.from_toml(claims_path) if claims_path else ClaimsFile.packaged(scope)
        return verify(Path(runs_dir) / REPORTS_DIR, claims, scope).serialize()

    def emit_figures(self, runs_dir: Path, out_dir: Path | None = None) -> Result:
        written = emit_figures(runs_dir, out_dir)
        return {"figures": {name: str(path) for name, path in written.items()}}
