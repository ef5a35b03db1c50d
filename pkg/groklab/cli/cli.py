# Python 3.10.11
# Creado: 15/10/2026
"""Cliente por defecto para groklab

Presenta la clase 'GrokLabCLI', que se instancia para interactuar con la API
de groklab desde la línea de comandos. Los usuarios son operadores de lotes:
no hay modo interactivo.

"""

from __future__ import annotations

import argparse
import logging
import os
from pathlib import Path

from groklab.cli.userconfig import UserConfig
from groklab.cli.wrapper import GrokLabAPIWrapper

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def error(message: str) -> None:
    """Imprime un mensaje de error"""
    print(f"[ERROR] {message}")


class GrokLabCLI:
    """Cliente de groklab por línea de comandos

    La configuración de usuario es opcional. Si no se proporciona una ruta,
    se tratará de cargar de la variable de entorno 'GROKLAB_USERCONFIG'; sin
    ella, todas las rutas deben indicarse como argumentos.

    """

    def __init__(self, userconfig_path: str | Path | None = None) -> None:
        userconfig_path = userconfig_path or os.getenv("GROKLAB_USERCONFIG")
        self.userconfig = UserConfig(Path(userconfig_path) if userconfig_path else None)
        self.lab = GrokLabAPIWrapper(self.userconfig)

    def parse(self, args: list[str]) -> int:
        """Procesa los argumentos de la línea de comandos

        Devuelve el código de salida: 0 si el comando termina bien, 1 si no.

        """
        self.setup()
        args = self.parser.parse_args(args)
        level = logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING
        logging.basicConfig(level=level, format=LOG_FORMAT)
        try:
            args.func(args)
        except (KeyError, ValueError, FileNotFoundError) as e:
            error(str(e.args[0]) if isinstance(e, KeyError) and e.args else str(e))
            return 1
        return 0

    def setup(self) -> None:
        """Configura los comandos y opciones de la interfaz de usuario"""
        self.parser = argparse.ArgumentParser(
            prog="groklab",
            description="Laboratorio para la predicción del retraso de grokking",
        )
        self.parser.add_argument(
            "-v", "--verbose", action="count", default=0, help="Más detalle en el registro (-vv: depuración)"
        )
        subparsers = self.parser.add_subparsers(required=True)

        # Comando 'run'
        run_parser = subparsers.add_parser("run", help="Lanzar las ejecuciones de una campaña")
        run_parser.add_argument("-c", "--config", required=True, help="Archivo TOML de la campaña")
        run_parser.add_argument("-o", "--out", default=None, help="Directorio de la campaña")
        run_parser.add_argument("-j", "--jobs", type=int, default=None, help="Número de procesos")
        run_parser.set_defaults(func=lambda args: self.lab.run(args.config, args.out, args.jobs))

        # Comando 'analyze'
        analyze_parser = subparsers.add_parser("analyze", help="Generar los informes de una campaña")
        analyze_parser.add_argument("-o", "--out", default=None, help="Directorio de la campaña")
        analyze_parser.add_argument("--xlsx", default=None, help="Exportar también a un libro Excel")
        analyze_parser.add_argument(
            "--calibration-cell", default=None, help="Celda de calibración (por defecto, la de la campaña)"
        )
        analyze_parser.set_defaults(
            func=lambda args: self.lab.analyze(args.out, args.xlsx, args.calibration_cell)
        )

        # Comando 'simulate'
        simulate_parser = subparsers.add_parser("simulate", help="Verificar las cotas de la recursión")
        simulate_parser.add_argument("-c", "--config", default=None, help="Archivo TOML de la rejilla")
        simulate_parser.add_argument("-o", "--out", default=None, help="Directorio de la campaña")
        simulate_parser.set_defaults(func=lambda args: self.lab.simulate(args.config, args.out))

        # Comando 'verify'
        verify_parser = subparsers.add_parser("verify", help="Auditar los informes con afirmaciones")
        verify_parser.add_argument("-o", "--out", default=None, help="Directorio de la campaña")
        verify_parser.add_argument("--claims", default=None, help="Archivo TOML de afirmaciones")
        verify_parser.add_argument(
            "--scope", choices=("desk", "full"), default="desk", help="Ámbito de las afirmaciones"
        )
        verify_parser.set_defaults(func=lambda args: self.lab.verify(args.out, args.claims, args.scope))

        # Comando 'emit-figures'
        figures_parser = subparsers.add_parser("emit-figures", help="Escribir los datos de figuras")
        figures_parser.add_argument("-o", "--out", default=None, help="Directorio de la campaña")
        figures_parser.add_argument("--figures-dir", default=None, help="Directorio de salida")
        figures_parser.set_defaults(func=lambda args: self.lab.emit_figures(args.out, args.figures_dir))
