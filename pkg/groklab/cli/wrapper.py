# Python 3.10.11
# Creado: 15/10/2026
"""Wrapper para los métodos de la API de groklab"""

from __future__ import annotations

from pathlib import Path

from groklab.api import GrokLab
from groklab.cli.userconfig import UserConfig
from groklab.cli.util import fmt, validate_path
from groklab.reporting import Table


class GrokLabAPIWrapper:
    """Adapta la API de groklab para su uso en la interfaz de usuario

    Resuelve las rutas por defecto a partir de la configuración de usuario,
    imprime los resultados y convierte los resultados negativos (ejecuciones
    fallidas, afirmaciones incumplidas) en excepciones, para que la línea de
    comandos termine con código de error.

    El constructor recibe únicamente un controlador de la configuración de
    usuario.

    """

    def __init__(self, userconfig: UserConfig) -> None:
        self.lab = GrokLab()
        self.userconfig = userconfig

    def runs_dir(self, out: str | Path | None) -> Path:
        """Directorio de campaña indicado, o el de la configuración de usuario"""
        if out:
            return Path(out)
        path = self.userconfig.get("runs_dir", safe=False)
        if path is None:
            raise ValueError("Indique el directorio de campaña con '--out' o con 'runs_dir'")
        return path

    def run(self, config: str | Path, out: str | Path | None = None, jobs: int | None = None) -> None:
        """Lanzar las ejecuciones pendientes de una campaña"""
        config = validate_path(config)
        jobs = jobs or self.userconfig.get("jobs", safe=False)
        result = self.lab.run(config, Path(out) if out else None, jobs)
        print(f"Campaña '{result['campaign_id']}' en '{result['out_dir']}'")
        print(f"  completadas: {len(result['completed'])}")
        print(f"  omitidas (ya completas): {len(result['skipped'])}")
        for run in result["completed"]:
            print(
                f"  {run['name']}: T_mem={fmt(run['T_mem'])} "
                f"T_grok={fmt(run['T_grok_99'])} grokked={fmt(run['grokked'])}"
            )
        if result["failed"]:
            for name, reason in result["failed"].items():
                print(f"  FALLIDA {name}: {reason}")
            raise ValueError(f"{len(result['failed'])} ejecuciones fallidas; los resultados parciales se conservan")

    def analyze(
        self,
        out: str | Path | None = None,
        xlsx: str | Path | None = None,
        calibration_cell: str | None = None,
    ) -> None:
        """Generar los informes de una campaña"""
        runs_dir = validate_path(self.runs_dir(out))
        result = self.lab.analyze(runs_dir, Path(xlsx) if xlsx else None, calibration_cell)
        for name, path in result["reports"].items():
            print(f"  {name}: {path}")

    def simulate(self, config: str | Path | None = None, out: str | Path | None = None) -> None:
        """Verificar las cotas de la recursión"""
        grid = config or self.userconfig.get("grid_path", safe=False)
        grid = validate_path(grid) if grid else None
        result = self.lab.simulate(grid, self.runs_dir(out))
        print(f"Cotas: {result['n_points']} puntos, K = {fmt(result['K_fit'])} (máximo {fmt(result['K_max'])})")
        print(f"  dispersión de T·ηλ con c1 = 0: {fmt(result['inverse_spread_c0'])}")
        print(f"  error relativo del punto fijo: {fmt(result['kosson_rel_error'])}")
        print(f"  tiempo: {result['runtime_s']:.2f} s")
        print(f"Se ha guardado el informe en '{result['path']}'")
        if not result["passed"]:
            raise ValueError(f"Cotas incumplidas: K = {result['K_fit']:.3g} > {result['K_max']:.3g}")

    def verify(
        self,
        out: str | Path | None = None,
        claims: str | Path | None = None,
        scope: str = "desk",
    ) -> None:
        """Comprobar los informes contra un archivo de afirmaciones"""
        claims = claims or self.userconfig.get("claims_path", safe=False)
        claims = validate_path(claims) if claims else None
        result = self.lab.verify(self.runs_dir(out), claims, scope)  # type: ignore[arg-type]
        for warning in result["warnings"]:
            print(f"[AVISO] {warning}")
        table = Table("claims", ["id", "status", "value", "target", "relation", "tolerance", "detail"])
        for claim in result["claims"]:
            table.append(**{h: claim[h] for h in table.headers})
        if len(table):
            print(table.show())
        print(
            f"Correctas: {result['n_pass']}, fallidas: {result['n_fail']}, omitidas: {result['n_skipped']}"
        )
        if not result["passed"]:
            raise ValueError(f"{result['n_fail']} afirmaciones incumplidas")

    def emit_figures(self, out: str | Path | None = None, figures_dir: str | Path | None = None) -> None:
        """Escribir los datos de figuras"""
        runs_dir = validate_path(self.runs_dir(out))
        result = self.lab.emit_figures(runs_dir, Path(figures_dir) if figures_dir else None)
        for name, path in result["figures"].items():
            print(f"  {name}: {path}")
