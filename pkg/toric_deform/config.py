"""Caricamento dei file JSON di ingresso nei tipi del dominio."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .errors import InputError
from .lattice import LatticeVector, as_integer, as_vector, as_vectors
from .polyhedra import ConeDesc, PolytopeDesc
from .terminalize import TriangulationDesc

logger = logging.getLogger(__name__)


def carica_json(path: Path) -> Dict[str, object]:
    """Legge un oggetto JSON; file mancanti o malformati diventano InputError."""
    if not path.exists():
        raise InputError(f"File mancante: {path}")
    try:
        with path.open("r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"JSON non valido in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: atteso un oggetto JSON al livello principale.")
    logger.debug("Caricato %s (%s).", path, ", ".join(sorted(data)))
    return data


def carica_cono(path: Path) -> ConeDesc:
    """Formato: {"dim": int, "rays": [[int, ...], ...]}."""
    return ConeDesc.from_dict(carica_json(path))


def addendi_da_dict(data: Dict[str, object]) -> Tuple[List[PolytopeDesc], int]:
    try:
        n = as_integer(data["n"])
        grezzi = data["summands"]
    except KeyError as exc:
        raise InputError(f"Campo mancante nella descrizione degli addendi: {exc}") from exc
    if not isinstance(grezzi, list) or not grezzi:
        raise InputError("Il campo 'summands' deve essere una lista non vuota.")
    return [PolytopeDesc.from_dict(s, ambient_dim=n - 1) for s in grezzi], n


def carica_addendi(path: Path) -> Tuple[List[PolytopeDesc], int]:
    """Formato: {"n": int, "summands": [{"vertices": [[int, ...], ...]}, ...]}."""
    return addendi_da_dict(carica_json(path))


def carica_triangolazione(path: Path, parent: Optional[ConeDesc] = None) -> TriangulationDesc:
    """Formato: {"parent": {...}, "cells": [[indici]], "used_points": [[int, ...]]}."""
    return TriangulationDesc.from_dict(carica_json(path), parent)


def carica_circuito(path: Path) -> Tuple[List[LatticeVector], Optional[LatticeVector]]:
    """Raggi del circuito e relazione opzionale: {"rays": [...], "relation": [int, ...]}."""
    data = carica_json(path)
    if "rays" not in data:
        raise InputError(f"{path}: manca il campo 'rays'.")
    raggi = as_vectors(data["rays"])
    relazione = as_vector(data["relation"]) if data.get("relation") is not None else None
    return raggi, relazione
