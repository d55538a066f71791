"""Esportazione dei rapporti: JSON, testo tabellare ed Excel."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, List, TextIO, Tuple

try:
    import pandas as pd
except ImportError as exc:  # pragma: no cover - dipendenza opzionale
    raise RuntimeError(
        "Questo programma richiede pandas. Installa con: pip install pandas openpyxl"
    ) from exc

from sympy import Rational

from .constants import JSON_SAFE_INTEGER


def json_safe(value: object) -> object:
    """Converte il rapporto in tipi JSON; interi oltre 2^53-1 diventano stringhe decimali."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Rational):
        if value.q == 1:
            return json_safe(int(value.p))
        return str(value)
    if isinstance(value, int):
        return value if abs(value) <= JSON_SAFE_INTEGER else str(value)
    if isinstance(value, dict):
        return {str(k): json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    return str(value)


def scrivi_json(report: Dict[str, object], stream: TextIO) -> None:
    stream.write(json.dumps(json_safe(report), indent=2, ensure_ascii=False))
    stream.write("\n")


def _is_record_list(value: object) -> bool:
    return isinstance(value, list) and bool(value) and all(isinstance(v, dict) for v in value)


def _flatten(record: Dict[str, object], prefix: str = "") -> Dict[str, str]:
    piatto: Dict[str, str] = {}
    for chiave, valore in record.items():
        nome = f"{prefix}{chiave}"
        if isinstance(valore, dict):
            piatto.update(_flatten(valore, f"{nome}."))
        elif isinstance(valore, (list, tuple)):
            piatto[nome] = json.dumps(valore, ensure_ascii=False)
        else:
            piatto[nome] = "" if valore is None else str(valore)
    return piatto


def tabelle_report(report: Dict[str, object]) -> Tuple[List[Tuple[str, str]], Dict[str, "pd.DataFrame"]]:
    """Separa i campi scalari (chiave, valore) dalle liste di record, rese come DataFrame."""
    scalari: List[Tuple[str, str]] = []
    tabelle: Dict[str, pd.DataFrame] = {}

    def _visita(nodo: Dict[str, object], prefix: str) -> None:
        for chiave, valore in nodo.items():
            nome = f"{prefix}{chiave}"
            if isinstance(valore, dict):
                _visita(valore, f"{nome}.")
            elif _is_record_list(valore):
                tabelle[nome] = pd.DataFrame([_flatten(r) for r in valore])
            elif isinstance(valore, list):
                scalari.append((nome, json.dumps(valore, ensure_ascii=False)))
            else:
                scalari.append((nome, "" if valore is None else str(valore)))

    _visita(json_safe(report), "")
    return scalari, tabelle


def scrivi_testo(report: Dict[str, object], stream: TextIO) -> None:
    scalari, tabelle = tabelle_report(report)
    for chiave, valore in scalari:
        stream.write(f"{chiave}: {valore}\n")
    for nome, df in tabelle.items():
        stream.write(f"\n== {nome} ==\n")
        stream.write(df.to_string(index=False))
        stream.write("\n")


def _nome_foglio(nome: str, usati: Dict[str, int]) -> str:
    base = nome.replace("/", "_")[:28]
    usati[base] = usati.get(base, 0) + 1
    return base if usati[base] == 1 else f"{base}_{usati[base]}"


def scrivi_excel(report: Dict[str, object], out_path: Path) -> None:
    """Un foglio "Riepilogo" con i campi scalari e un foglio per ogni tabella."""
    scalari, tabelle = tabelle_report(report)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    usati: Dict[str, int] = {}
    with pd.ExcelWriter(out_path, engine="openpyxl") as writer:
        pd.DataFrame(scalari, columns=["Chiave", "Valore"]).to_excel(writer, sheet_name="Riepilogo", index=False)
        for nome, df in tabelle.items():
            df.to_excel(writer, sheet_name=_nome_foglio(nome, usati), index=False)
