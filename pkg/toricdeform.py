#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Deformazioni toriche omogenee e terminalizzazioni simultanee – entrypoint CLI."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence, Tuple

from toric_deform.constants import CORPUS_NAMES, OUTPUT_FORMATS
from toric_deform.limits import GUARD_DEFINITIONS, merge_with_defaults
from toric_deform.runner import CommandRequest, run


def _setup_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
    )


def _parse_weights(raw: Optional[str], parser: argparse.ArgumentParser) -> Optional[Tuple[int, ...]]:
    if raw is None:
        return None
    try:
        pesi = tuple(int(x) for x in raw.split(",") if x.strip())
    except ValueError:
        parser.error("--weights richiede interi separati da virgole, ad esempio 1,1,1,1.")
    if not pesi:
        parser.error("--weights non può essere vuoto.")
    return pesi


def _build_parser() -> argparse.ArgumentParser:
    comuni = argparse.ArgumentParser(add_help=False)
    comuni.add_argument("--format", choices=OUTPUT_FORMATS, default="text", help="Formato del rapporto (default: text)")
    comuni.add_argument("--xlsx", type=Path, default=None, help="Scrive anche il rapporto in una cartella Excel")
    comuni.add_argument("--verbose", action="store_true", help="Abilita log dettagliati su stderr")
    for key, definition in GUARD_DEFINITIONS.items():
        comuni.add_argument(
            f"--{key.replace('_', '-')}",
            dest=key,
            type=int,
            default=None,
            help=f"{definition.label}. {definition.description} (default: {definition.default_value})",
        )

    parser = argparse.ArgumentParser(
        description="Deformazioni toriche omogenee di Gorenstein: fibre, singolarità, terminalizzazioni e flop"
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("classify", parents=[comuni], help="Classifica la singolarità di un cono")
    p.add_argument("--cone", type=Path, required=True, help='File JSON {"dim": d, "rays": [...]}')

    p = sub.add_parser("deform", parents=[comuni], help="Costruisce la deformazione e la fibra centrale")
    p.add_argument("--summands", type=Path, required=True, help='File JSON {"n": n, "summands": [...]}')

    p = sub.add_parser("fibre", parents=[comuni], help="Presentazione della fibra su una carta simpliciale")
    p.add_argument("--summands", type=Path, required=True)
    p.add_argument("--cone", type=Path, required=True, help="Carta simpliciale massimale")

    p = sub.add_parser("terminalize", parents=[comuni], help="Rapporto di terminalizzazione simultanea")
    p.add_argument("--summands", type=Path, required=True)
    p.add_argument("--triangulation", type=Path, default=None, help="Triangolazione da verificare (altrimenti si cerca)")

    p = sub.add_parser("flip", parents=[comuni], help="Le due triangolazioni di un circuito")
    p.add_argument("--cone", type=Path, required=True, help='File JSON {"rays": [...], "relation": [...]}')

    p = sub.add_parser("flop", parents=[comuni], help="Esempio di flop con spazio eccezionale P(1,a,b)")
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)

    p = sub.add_parser("corpus", parents=[comuni], help="Esegue un esempio completo e lo confronta con i valori attesi")
    p.add_argument("corpus", choices=CORPUS_NAMES)
    p.add_argument("--k", type=int, default=None, help="Famiglia A_k (corpus an)")
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--l", type=int, default=None, help="Ordine del gruppo ciclico (corpus section3)")
    p.add_argument("--weights", default=None, help="Pesi separati da virgole (corpus section3)")
    p.add_argument("--p", type=int, default=None, help="Indice di separazione dell'equazione (corpus section3)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    _setup_logging(verbose=args.verbose)
    logging.debug("Argomenti CLI: %s", args)

    parametri = {
        nome: getattr(args, nome)
        for nome in ("a", "b", "k", "l", "p", "corpus")
        if getattr(args, nome, None) is not None
    }
    if args.verb == "corpus":
        pesi = _parse_weights(args.weights, parser)
        if pesi is not None:
            parametri["weights"] = pesi

    request = CommandRequest(
        verb=args.verb,
        cone_path=getattr(args, "cone", None),
        summands_path=getattr(args, "summands", None),
        triangulation_path=getattr(args, "triangulation", None),
        parameters=parametri,
        output_format=args.format,
        xlsx_path=args.xlsx,
        limits=merge_with_defaults({key: getattr(args, key) for key in GUARD_DEFINITIONS}),
    )
    return run(request)


if __name__ == "__main__":
    try:
        sys.exit(main())
    except Exception as exc:  # pragma: no cover - CLI fallback
        logging.getLogger("toricdeform").exception("Errore non gestito")
        print(f"Errore: {exc}", file=sys.stderr)
        sys.exit(1)
