# Python 3.10.11
# Creado: 12/10/2026
"""Auditoría de afirmaciones

Un archivo de afirmaciones es un TOML con una lista '[[claims]]'. Cada
afirmación apunta a un valor emitido por el análisis mediante una clave
'<informe>.<ruta>', donde '<informe>' es el nombre del TOML dentro del
directorio de informes y '<ruta>' recorre sus tablas separando por puntos:

    [[claims]]
    id = "c-form-89-97"
    key = "reference.c_form.p89_to_p97"
    target = 47.15
    tolerance = 0.1
    relation = "approx"
    source = "predicción cruzada de la forma C"
    scope = "desk"

La relación 'approx' exige |valor - objetivo| <= tolerancia; 'max' exige
valor <= objetivo + tolerancia; 'min', valor >= objetivo - tolerancia. Los
booleanos se comparan como 0/1.

"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, ClassVar, Literal

from more_itertools import always_iterable

from groklab.util import read_versioned_toml

logger = logging.getLogger(__name__)

CLAIMS_SCHEMA = "groklab-claims/1"
Scope = Literal["desk", "full"]


@dataclass(frozen=True)
class Claim:
    RELATIONS: ClassVar[tuple[str, ...]] = ("approx", "max", "min")
    KEYS: ClassVar[tuple[str, ...]] = (
        "id",
        "key",
        "target",
        "tolerance",
        "relation",
        "source",
        "scope",
    )

    id: str
    key: str
    target: float
    tolerance: float = 0.0
    relation: str = "approx"
    source: str = ""
    scope: Scope = "desk"

    def __post_init__(self) -> None:
        if self.relation not in self.RELATIONS:
            raise ValueError(f"[Claims] '{self.id}': relación desconocida {self.relation!r}")
        if self.scope not in ("desk", "full"):
            raise ValueError(f"[Claims] '{self.id}': ámbito desconocido {self.scope!r}")
        if self.tolerance < 0:
            raise ValueError(f"[Claims] '{self.id}': la tolerancia debe ser >= 0")
        if "." not in self.key:
            raise ValueError(f"[Claims] '{self.id}': la clave '{self.key}' no indica informe")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Claim:
        unknown = set(data) - set(cls.KEYS)
        if unknown:
            raise KeyError(f"[Claims] Claves desconocidas: {', '.join(sorted(unknown))}")
        for required in ("id", "key", "target"):
            if required not in data:
                raise KeyError(f"[Claims] Falta la clave '{required}' en una afirmación")
        data = dict(data)
        data["target"] = float(data["target"])
        data["tolerance"] = float(data.get("tolerance", 0.0))
        return cls(**data)

    def holds(self, value: float) -> bool:
        if self.relation == "max":
            return value <= self.target + self.tolerance
        if self.relation == "min":
            return value >= self.target - self.tolerance
        return abs(value - self.target) <= self.tolerance


@dataclass
class ClaimsFile:
    claims: list[Claim]
    path: Path | None = None

    @classmethod
    def from_toml(cls, path: Path) -> ClaimsFile:
        path = Path(path)
        data = read_versioned_toml(path)
        if data.get("schema") not in (None, CLAIMS_SCHEMA):
            raise ValueError(f"[Claims] Esquema no soportado en '{path}': {data['schema']!r}")
        claims = [Claim.from_dict(raw) for raw in data.get("claims", [])]
        ids = [c.id for c in claims]
        if len(set(ids)) != len(ids):
            raise ValueError(f"[Claims] Identificadores repetidos en '{path}'")
        return cls(claims, path)

    @classmethod
    def packaged(cls, scope: Scope) -> ClaimsFile:
        """Afirmaciones incluidas con el paquete para el ámbito dado"""
        return cls.from_toml(Path(str(resources.files("groklab") / "data" / f"claims_{scope}.toml")))


@dataclass
class ClaimResult:
    claim: Claim
    status: Literal["pass", "fail", "skipped"]
    value: float | None = None
    detail: str = ""

    def serialize(self) -> dict[str, Any]:
        return {
            "id": self.claim.id,
            "key": self.claim.key,
            "target": self.claim.target,
            "tolerance": self.claim.tolerance,
            "relation": self.claim.relation,
            "scope": self.claim.scope,
            "status": self.status,
            "value": self.value,
            "detail": self.detail,
        }


@dataclass
class VerifyReport:
    results: list[ClaimResult] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def count(self, status: str) -> int:
        return sum(r.status == status for r in self.results)

    def serialize(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "n_pass": self.count("pass"),
            "n_fail": self.count("fail"),
            "n_skipped": self.count("skipped"),
            "warnings": list(self.warnings),
            "claims": [r.serialize() for r in self.results],
        }


def lookup(reports_dir: Path, key: str, cache: dict[str, dict[str, Any]] | None = None) -> Any:
    """Valor de '<informe>.<ruta>' en el directorio de informes

    Lanza KeyError con la clave completa si el informe o la ruta no existen.
    Los segmentos numéricos indexan listas.

    """
    cache = {} if cache is None else cache
    report, _, path = key.partition(".")
    if report not in cache:
        file = Path(reports_dir) / f"{report}.toml"
        if not file.exists():
            raise KeyError(f"clave ausente '{key}' (no existe el informe '{file.name}')")
        cache[report] = read_versioned_toml(file)
    node: Any = cache[report]
    for part in path.split("."):
        if isinstance(node, dict) and part in node:
            node = node[part]
        elif isinstance(node, list) and part.lstrip("-").isdigit() and -len(node) <= int(part) < len(node):
            node = node[int(part)]
        else:
            raise KeyError(f"clave ausente '{key}'")
    return node


def _as_number(value: Any, key: str) -> float:
    if isinstance(value, bool):
        return float(value)
    if isinstance(value, (int, float)):
        return float(value)
    raise ValueError(f"el valor de '{key}' no es numérico: {value!r}")


def verify(reports_dir: Path, claims: ClaimsFile, scope: Scope = "desk") -> VerifyReport:
    """Compara cada afirmación con los valores emitidos

    Las afirmaciones de ámbito 'full' sólo se evalúan con 'scope="full"'; en
    otro caso se informan como omitidas.

    """
    report = VerifyReport()
    if not claims.claims:
        message = f"El archivo de afirmaciones {claims.path or ''} está vacío: verificación trivial"
        logger.warning(message)
        report.warnings.append(message)
        return report
    cache: dict[str, dict[str, Any]] = {}
    for claim in claims.claims:
        if claim.scope == "full" and scope != "full":
            report.results.append(ClaimResult(claim, "skipped", detail="ámbito full"))
            continue
        try:
            values = [_as_number(v, claim.key) for v in always_iterable(lookup(reports_dir, claim.key, cache))]
        except (KeyError, ValueError) as e:
            detail = str(e.args[0]) if e.args else str(e)
            report.results.append(ClaimResult(claim, "fail", detail=detail))
            continue
        if len(values) != 1:
            report.results.append(
                ClaimResult(claim, "fail", detail=f"'{claim.key}' no es un valor escalar")
            )
            continue
        value = values[0]
        status = "pass" if claim.holds(value) else "fail"
        report.results.append(ClaimResult(claim, status, value))
    logger.info(
        "Afirmaciones: %d correctas, %d fallidas, %d omitidas",
        report.count("pass"),
        report.count("fail"),
        report.count("skipped"),
    )
    return report
