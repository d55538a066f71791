"""Funzioni di alto livello: esecuzione dei comandi della CLI e dei corpus di esempi."""

from __future__ import annotations

import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, TextIO, Tuple

from .config import carica_addendi, carica_circuito, carica_cono, carica_triangolazione
from .constants import (
    CORPUS_NAMES,
    EXIT_CHECK_FAILED,
    EXIT_OK,
    OUTPUT_FORMATS,
    SECTION3_EXPECTED,
    VERBS,
)
from .deformation import (
    build_deformation,
    central_fibre,
    check_hypersurface_quotient,
    fibre_lattice_basis,
    fibre_presentation,
    minkowski_cone,
)
from .errors import InputError, ToricError
from .exports import scrivi_excel, scrivi_json, scrivi_testo
from .lattice import as_vector
from .limits import DEFAULT_LIMITS, ComputationLimits
from .polyhedra import ConeDesc, PolytopeDesc, minkowski_sum_all
from .terminalize import (
    build_flop_example,
    circuit_relation,
    flop_rays,
    reid_circuit_flip,
    search_crepant_triangulation,
    terminalization_report,
    verify_triangulation,
)
from .toric import box_points, classify_cone

logger = logging.getLogger(__name__)

Report = Dict[str, object]


@dataclass
class CommandRequest:
    verb: str
    cone_path: Optional[Path] = None
    summands_path: Optional[Path] = None
    triangulation_path: Optional[Path] = None
    parameters: Dict[str, object] = field(default_factory=dict)
    output_format: str = "text"
    xlsx_path: Optional[Path] = None
    limits: ComputationLimits = DEFAULT_LIMITS

    def __post_init__(self) -> None:
        if self.verb not in VERBS:
            raise InputError(f"Comando sconosciuto: {self.verb!r} (ammessi: {', '.join(VERBS)}).")
        if self.output_format not in OUTPUT_FORMATS:
            raise InputError(f"Formato di uscita sconosciuto: {self.output_format!r}.")

    def richiedi(self, nome: str) -> Path:
        percorso = getattr(self, f"{nome}_path")
        if percorso is None:
            raise InputError(f"Il comando '{self.verb}' richiede --{nome}.")
        return percorso


# ---------------------------------------------------------------------------
# Comandi
# ---------------------------------------------------------------------------


def _classify(request: CommandRequest) -> Report:
    cono = carica_cono(request.richiedi("cone"))
    flags = classify_cone(cono, request.limits)
    report: Report = {"verb": "classify", "cone": cono.to_dict(), "flags": flags.to_dict()}
    if cono.is_simplicial:
        report["box_points"] = [
            {"point": list(b.point), "coefficients": [str(c) for c in b.coefficients], "height": str(b.height)}
            for b in box_points(cono, request.limits)
        ]
    return report


def _deform(request: CommandRequest) -> Report:
    addendi, n = carica_addendi(request.richiedi("summands"))
    d = build_deformation(addendi, n)
    fibra = central_fibre(d)
    report: Report = {
        "verb": "deform",
        "deformation": d.to_dict(),
        "markers": [list(r) for r in d.markers],
        "l_basis": [list(v) for v in d.l_basis],
        "fibre_lattice_basis": [list(v) for v in fibre_lattice_basis(d)],
        "central_fibre": fibra.to_dict(),
        "minkowski_sum": minkowski_sum_all(addendi).to_dict(),
    }
    try:
        report["central_fibre_flags"] = classify_cone(fibra, request.limits).to_dict()
    except ToricError as exc:
        report["central_fibre_flags"] = None
        report["central_fibre_error"] = str(exc)
    return report


def _fibre(request: CommandRequest) -> Report:
    addendi, n = carica_addendi(request.richiedi("summands"))
    d = build_deformation(addendi, n)
    carta = carica_cono(request.richiedi("cone"))
    presentazione = fibre_presentation(d, carta)
    return {"verb": "fibre", "block_sizes": list(presentazione.block_sizes), **presentazione.to_dict()}


def _terminalize(request: CommandRequest) -> Report:
    addendi, n = carica_addendi(request.richiedi("summands"))
    d = build_deformation(addendi, n)
    if request.triangulation_path is not None:
        triangolazione = carica_triangolazione(request.triangulation_path, d.cone)
    else:
        triangolazione = search_crepant_triangulation(d, request.limits)
    report = terminalization_report(d, triangolazione, request.limits)
    return {"verb": "terminalize", "triangulation": triangolazione.to_dict(), **report.to_dict()}


def _flip(request: CommandRequest) -> Report:
    raggi, relazione = carica_circuito(request.richiedi("cone"))
    if relazione is None:
        relazione = circuit_relation(raggi)
    sinistra, destra = reid_circuit_flip(raggi, relazione, request.limits)
    return {
        "verb": "flip",
        "relation": list(relazione),
        "left": {
            "triangulation": sinistra.to_dict(),
            "verification": verify_triangulation(sinistra, limits=request.limits).to_dict(),
        },
        "right": {
            "triangulation": destra.to_dict(),
            "verification": verify_triangulation(destra, limits=request.limits).to_dict(),
        },
    }


def _intero_positivo(parametri: Dict[str, object], nome: str, default: int) -> int:
    valore = parametri.get(nome)
    if valore is None:
        return default
    try:
        intero = int(valore)
    except (TypeError, ValueError):
        raise InputError(f"Parametro {nome} non intero: {valore!r}.") from None
    if intero < 1:
        raise InputError(f"Parametro {nome} non valido: {intero} (deve essere >= 1).")
    return intero


def _flop(request: CommandRequest) -> Report:
    a = _intero_positivo(request.parameters, "a", 1)
    b = _intero_positivo(request.parameters, "b", 1)
    return {"verb": "flop", **build_flop_example(a, b, request.limits).to_dict()}


def _corpus(request: CommandRequest) -> Report:
    nome = request.parameters.get("corpus")
    if nome is None:
        raise InputError("Il comando 'corpus' richiede il nome del corpus.")
    return {"verb": "corpus", **corpus_run(str(nome), request.parameters, request.limits)}


_DISPATCH: Dict[str, Callable[[CommandRequest], Report]] = {
    "classify": _classify,
    "deform": _deform,
    "fibre": _fibre,
    "terminalize": _terminalize,
    "flip": _flip,
    "flop": _flop,
    "corpus": _corpus,
}


def run(request: CommandRequest, stream: Optional[TextIO] = None) -> int:
    """Esegue il comando e scrive il rapporto; restituisce il codice di uscita."""
    stream = stream if stream is not None else sys.stdout
    logger.info("Comando %s avviato.", request.verb)
    try:
        report = _DISPATCH[request.verb](request)
    except ToricError as exc:
        logger.error("Comando %s fallito: %s", request.verb, exc)
        print(f"Errore ({type(exc).__name__}): {exc}", file=sys.stderr)
        return exc.exit_code

    if request.output_format == "json":
        scrivi_json(report, stream)
    else:
        scrivi_testo(report, stream)
    if request.xlsx_path is not None:
        scrivi_excel(report, request.xlsx_path)
        logger.info("Rapporto Excel scritto in %s", request.xlsx_path)

    if report.get("passed") is False:
        logger.warning("Alcuni controlli del corpus non sono superati.")
        return EXIT_CHECK_FAILED
    logger.info("Comando %s completato.", request.verb)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Corpus
# ---------------------------------------------------------------------------


class _Controlli:
    def __init__(self) -> None:
        self.righe: List[Report] = []

    def verifica(self, nome: str, atteso: object, effettivo: object) -> None:
        esito = atteso == effettivo
        if not esito:
            logger.warning("Controllo %s: atteso %s, ottenuto %s.", nome, atteso, effettivo)
        self.righe.append({"name": nome, "expected": atteso, "actual": effettivo, "passed": esito})

    @property
    def superati(self) -> bool:
        return all(r["passed"] for r in self.righe)


def _corpus_an(parameters: Dict[str, object], limits: ComputationLimits) -> Tuple[Report, _Controlli]:
    k = _intero_positivo(parameters, "k", 2)
    segmento = PolytopeDesc.from_points([(0,), (1,)])
    d = build_deformation([segmento] * (k + 1), 2)
    controlli = _Controlli()
    fibra = central_fibre(d)
    controlli.verifica("central_fibre", [[0, 1], [k + 1, 1]], [list(r) for r in fibra.rays])
    controlli.verifica("central_fibre_is_minkowski_cone", True, fibra == minkowski_cone(d.summands))
    triangolazione = search_crepant_triangulation(d, limits)
    report = terminalization_report(d, triangolazione, limits)
    verifica = report.verification
    controlli.verifica("cells", k + 1, len(triangolazione.cells))
    controlli.verifica("covers", True, verifica.covers)
    controlli.verifica("proper", True, verifica.proper)
    controlli.verifica("crepant", True, verifica.crepant)
    controlli.verifica("volume", str(verifica.parent_volume), str(sum(verifica.cell_volumes)))
    controlli.verifica("all_unimodular", True, report.all_unimodular)
    attese = [[1] * k + [2]] * (k + 1)
    effettive = [
        sorted(c.presentation.block_sizes) if c.presentation is not None else None for c in report.cells
    ]
    controlli.verifica("block_sizes", attese, effettive)
    controlli.verifica("simultaneous_resolution", True, report.simultaneous_resolution)
    dettagli: Report = {
        "k": k,
        "central_fibre": fibra.to_dict(),
        "triangulation": triangolazione.to_dict(),
        "simultaneous_resolution": report.simultaneous_resolution,
        "report": report.to_dict(),
    }
    return dettagli, controlli


def _corpus_flop(parameters: Dict[str, object], limits: ComputationLimits) -> Tuple[Report, _Controlli]:
    a = _intero_positivo(parameters, "a", 1)
    b = _intero_positivo(parameters, "b", 1)
    coppia = build_flop_example(a, b, limits)
    controlli = _Controlli()
    controlli.verifica("rays", sorted(flop_rays(a, b)), sorted(coppia.base.cone.rays))
    somma = tuple(
        sum(c * r[i] for c, r in zip(coppia.circuit_relation, coppia.named_rays)) for i in range(5)
    )
    controlli.verifica("relation_vanishes", (0, 0, 0, 0, 0), somma)
    attesi = sorted((1, a, b))
    for nome, lato in (("left", coppia.left), ("right", coppia.right)):
        controlli.verifica(f"{nome}_covers", True, lato.verification.covers)
        controlli.verifica(f"{nome}_proper", True, lato.verification.proper)
        controlli.verifica(f"{nome}_crepant", True, lato.verification.crepant)
        controlli.verifica(f"{nome}_weights", attesi, list(lato.star.weights))
        controlli.verifica(f"{nome}_indices", attesi, sorted(lato.indices_by_determinant))
        controlli.verifica(
            f"{nome}_indices_smith_vs_determinant",
            list(lato.indices_by_determinant),
            list(lato.indices_by_smith),
        )
    esagono = ConeDesc.from_rays(
        [(1, 0, 1), (0, 1, 1), (-a, -b, 1), (1, 1, 1), (-a, 1 - b, 1), (1 - a, -b, 1)]
    )
    fibra = central_fibre(coppia.base)
    controlli.verifica("central_fibre", [list(r) for r in esagono.rays], [list(r) for r in fibra.rays])
    dettagli: Report = {
        "a": a,
        "b": b,
        "exceptional_weights": list(coppia.exceptional_weights_left),
        "central_fibre": fibra.to_dict(),
        "flop": coppia.to_dict(),
    }
    return dettagli, controlli


def _corpus_section3(parameters: Dict[str, object], limits: ComputationLimits) -> Tuple[Report, _Controlli]:
    ordine = _intero_positivo(parameters, "l", 2)
    grezzi = parameters.get("weights")
    pesi = (1, 1, 1, 1) if grezzi is None else as_vector(grezzi)
    p = _intero_positivo(parameters, "p", 2)
    esito = check_hypersurface_quotient(ordine, pesi, p, limits)
    controlli = _Controlli()
    attesi = SECTION3_EXPECTED.get((ordine, pesi, p))
    if attesi is not None:
        controlli.verifica("gorenstein", attesi["gorenstein"], esito.quotient_flags.is_gorenstein)
        controlli.verifica("terminal", attesi["terminal"], esito.quotient_flags.is_terminal)
        controlli.verifica("canonical", attesi["canonical"], esito.quotient_flags.is_canonical)
        controlli.verifica("inequality", attesi["inequality"], esito.inequality)
    dettagli: Report = {"expected_available": attesi is not None, **esito.to_dict()}
    return dettagli, controlli


_CORPORA: Dict[str, Callable[[Dict[str, object], ComputationLimits], Tuple[Report, _Controlli]]] = {
    "an": _corpus_an,
    "flop": _corpus_flop,
    "section3": _corpus_section3,
}


def corpus_run(
    name: str, parameters: Optional[Dict[str, object]] = None, limits: ComputationLimits = DEFAULT_LIMITS
) -> Report:
    """Esegue un esempio completo e lo confronta con i valori attesi."""
    if name not in CORPUS_NAMES:
        raise InputError(f"Corpus sconosciuto: {name!r} (ammessi: {', '.join(CORPUS_NAMES)}).")
    dettagli, controlli = _CORPORA[name](parameters or {}, limits)
    logger.info("Corpus %s: %d controlli, superati=%s.", name, len(controlli.righe), controlli.superati)
    return {
        "corpus": name,
        "passed": controlli.superati,
        "checks": controlli.righe,
        "details": dettagli,
    }

