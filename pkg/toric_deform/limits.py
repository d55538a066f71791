"""Definizione e gestione dei limiti di calcolo configurabili da riga di comando."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional


@dataclass
class GuardDefinition:
    key: str
    label: str
    description: str
    default_value: int
    min_value: int = 1
    max_value: Optional[int] = None


@dataclass(frozen=True)
class ComputationLimits:
    max_quotient_order: int = 10**6
    max_search_steps: int = 10_000
    max_box_points: int = 10**7


GUARD_DEFINITIONS: Dict[str, GuardDefinition] = {
    "max_quotient_order": GuardDefinition(
        key="max_quotient_order",
        label="Ordine massimo del gruppo quoziente",
        description="Numero massimo di elementi enumerati per Reid-Tai e per i punti della scatola.",
        default_value=10**6,
        max_value=10**9,
    ),
    "max_search_steps": GuardDefinition(
        key="max_search_steps",
        label="Passi massimi di suddivisione stellare",
        description="Numero massimo di suddivisioni nella ricerca di triangolazioni crepanti.",
        default_value=10_000,
    ),
    "max_box_points": GuardDefinition(
        key="max_box_points",
        label="Punti massimi nella scansione del parallelepipedo",
        description="Numero massimo di punti interi esaminati da lattice_points.",
        default_value=10**7,
    ),
}


def build_default_limits() -> ComputationLimits:
    return ComputationLimits(
        **{key: definition.default_value for key, definition in GUARD_DEFINITIONS.items()}
    )


DEFAULT_LIMITS = build_default_limits()


def merge_with_defaults(custom: Optional[Dict[str, Optional[int]]]) -> ComputationLimits:
    """Combina i valori forniti con i default, riportandoli nell'intervallo ammesso."""
    if not custom:
        return DEFAULT_LIMITS
    merged: Dict[str, int] = {}
    for key, definition in GUARD_DEFINITIONS.items():
        value = custom.get(key)
        if value is None:
            merged[key] = definition.default_value
            continue
        value = max(definition.min_value, int(value))
        if definition.max_value is not None:
            value = min(definition.max_value, value)
        merged[key] = value
    return ComputationLimits(**merged)
