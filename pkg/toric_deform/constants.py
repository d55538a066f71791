"""Costanti condivise tra il nucleo di calcolo, la CLI e i moduli di esportazione."""

from __future__ import annotations

JSON_SAFE_INTEGER = 2**53 - 1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_GUARD = 3

VERBS = ("classify", "deform", "fibre", "terminalize", "flip", "flop", "corpus")
CORPUS_NAMES = ("an", "flop", "section3")
OUTPUT_FORMATS = ("text", "json")

TERMINALIZATION_LABEL = "crepant Q-factorial terminalization"
FLATNESS_PROXY_NOTE = (
    "Piattezza non certificata algebricamente: si verifica solo la struttura a blocchi "
    "(partizione p_0 < ... < p_{m+1}) di ogni carta massimale."
)
NEF_NOTE = "K-nefness relativa non certificata: si controllano crepanza e terminalità delle carte."

# Valori attesi per il corpus "section3": (l, pesi, p) -> (gorenstein, terminale, canonico, disuguaglianza)
SECTION3_EXPECTED = {
    (2, (1, 1, 1, 1), 2): {"gorenstein": True, "terminal": True, "canonical": True, "inequality": True},
    (2, (1, 1), 1): {"gorenstein": True, "terminal": False, "canonical": True, "inequality": True},
    (2, (1, 1, 1, 1, 1, 1), 3): {"gorenstein": True, "terminal": True, "canonical": True, "inequality": False},
}
