from __future__ import annotations

import io
import json

import openpyxl
import pytest

from toric_deform.constants import EXIT_GUARD, EXIT_INPUT, EXIT_OK, JSON_SAFE_INTEGER
from toric_deform.errors import InputError
from toric_deform.exports import json_safe
from toric_deform.limits import GUARD_DEFINITIONS, ComputationLimits, merge_with_defaults
from toric_deform.runner import CommandRequest, corpus_run, run
from toricdeform import main


def _scrivi(tmp_path, nome, data):
    percorso = tmp_path / nome
    percorso.write_text(json.dumps(data), encoding="utf-8")
    return percorso


def _json(request: CommandRequest):
    stream = io.StringIO()
    codice = run(request, stream)
    return codice, (json.loads(stream.getvalue()) if stream.getvalue() else None)


def _flop_summands(a, b):
    return {
        "n": 3,
        "summands": [
            {"vertices": [[1, 0], [0, 0]]},
            {"vertices": [[0, 1], [0, 0]]},
            {"vertices": [[-a, -b], [0, 0]]},
        ],
    }


def test_flop_json_from_command_line(capsys):
    assert main(["flop", "--a", "1", "--b", "2", "--format", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["exceptional_weights"] == [1, 1, 2]
    assert report["left"]["exceptional_weights"] == [1, 1, 2]


def test_classify_orthant(tmp_path, capsys):
    cono = _scrivi(tmp_path, "orthant3.json", {"dim": 3, "rays": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    assert main(["classify", "--cone", str(cono), "--format", "json"]) == EXIT_OK
    flags = json.loads(capsys.readouterr().out)["flags"]
    assert flags["smooth"] is True
    assert flags["index"] == 1


def test_corpus_an_from_command_line(capsys):
    assert main(["corpus", "an", "--k", "2", "--format", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] is True
    assert report["details"]["simultaneous_resolution"] is True


def test_corpus_an_k1_central_fibre():
    report = corpus_run("an", {"k": 1})
    assert report["passed"]
    assert report["details"]["central_fibre"]["rays"] == [[0, 1], [2, 1]]


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 3)])
def test_corpus_flop(a, b):
    report = corpus_run("flop", {"a": a, "b": b})
    assert report["passed"], [c for c in report["checks"] if not c["passed"]]
    assert report["details"]["exceptional_weights"] == sorted((1, a, b))


def test_corpus_section3_from_command_line(capsys):
    argv = ["corpus", "section3", "--l", "2", "--weights", "1,1,1,1", "--p", "2", "--format", "json"]
    assert main(argv) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] is True
    assert report["details"]["quotient"]["gorenstein"] is True
    assert report["details"]["quotient"]["terminal"] is True
    assert report["details"]["inequality"] is True


@pytest.mark.parametrize(
    "weights,p,terminal,inequality",
    [((1, 1), 1, False, True), ((1, 1, 1, 1, 1, 1), 3, True, False)],
)
def test_corpus_section3_variants(weights, p, terminal, inequality):
    report = corpus_run("section3", {"l": 2, "weights": weights, "p": p})
    assert report["passed"]
    assert report["details"]["quotient"]["terminal"] is terminal
    assert report["details"]["inequality"] is inequality


def test_unknown_corpus():
    with pytest.raises(InputError):
        corpus_run("nessuno")


def test_deform_and_fibre(tmp_path):
    addendi = _scrivi(tmp_path, "flop.json", _flop_summands(1, 1))
    codice, report = _json(CommandRequest("deform", summands_path=addendi, output_format="json"))
    assert codice == EXIT_OK
    assert len(report["central_fibre"]["rays"]) == 6
    assert report["central_fibre_flags"]["canonical"] is True

    carta = _scrivi(
        tmp_path, "carta.json",
        {"dim": 5, "rays": [[0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [1, 0, 1, 0, 0], [0, 1, 0, 1, 0]]},
    )
    codice, report = _json(CommandRequest("fibre", summands_path=addendi, cone_path=carta, output_format="json"))
    assert codice == EXIT_OK
    assert sorted(report["block_sizes"]) == [1, 2, 2]


def test_terminalize_searches_and_verifies(tmp_path):
    addendi = _scrivi(tmp_path, "a2.json", {"n": 2, "summands": [{"vertices": [[0], [1]]}] * 3})
    codice, report = _json(CommandRequest("terminalize", summands_path=addendi, output_format="json"))
    assert codice == EXIT_OK
    assert report["crepant"] is True
    assert report["simultaneous_resolution"] is True

    triangolazione = _scrivi(tmp_path, "t.json", report["triangulation"])
    codice, verificato = _json(
        CommandRequest("terminalize", summands_path=addendi, triangulation_path=triangolazione, output_format="json")
    )
    assert codice == EXIT_OK
    assert verificato["cells"] == report["cells"]


def test_flip_command(tmp_path):
    circuito = _scrivi(tmp_path, "conifold.json", {"rays": [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]})
    codice, report = _json(CommandRequest("flip", cone_path=circuito, output_format="json"))
    assert codice == EXIT_OK
    assert report["relation"] == [1, -1, -1, 1]
    assert report["left"]["verification"]["covers"] is True
    assert report["right"]["verification"]["covers"] is True


def test_input_errors_exit_with_two(tmp_path):
    assert run(CommandRequest("classify", cone_path=tmp_path / "manca.json"), io.StringIO()) == EXIT_INPUT
    rotto = tmp_path / "rotto.json"
    rotto.write_text("{non json", encoding="utf-8")
    assert run(CommandRequest("classify", cone_path=rotto), io.StringIO()) == EXIT_INPUT
    assert run(CommandRequest("classify"), io.StringIO()) == EXIT_INPUT
    assert run(CommandRequest("flop", parameters={"a": 0, "b": 1}), io.StringIO()) == EXIT_INPUT


def test_guard_exits_with_three(tmp_path, capsys):
    cono = _scrivi(tmp_path, "grande.json", {"dim": 2, "rays": [[1, 0], [1, 50]]})
    assert main(["classify", "--cone", str(cono), "--max-quotient-order", "10"]) == EXIT_GUARD
    assert "GuardExceededError" in capsys.readouterr().err


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["sconosciuto"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["corpus", "section3", "--weights", "uno,due"])
    assert exc.value.code == 2


def test_request_validation():
    with pytest.raises(InputError):
        CommandRequest("plot")
    with pytest.raises(InputError):
        CommandRequest("flop", output_format="yaml")


def test_text_and_json_agree():
    testo, dati = io.StringIO(), io.StringIO()
    run(CommandRequest("flop", parameters={"a": 2, "b": 3}), testo)
    run(CommandRequest("flop", parameters={"a": 2, "b": 3}, output_format="json"), dati)
    report = json.loads(dati.getvalue())
    assert f"exceptional_weights: {json.dumps(report['exceptional_weights'])}" in testo.getvalue()
    assert "a: 2" in testo.getvalue()


def test_output_is_deterministic():
    primo, secondo = io.StringIO(), io.StringIO()
    run(CommandRequest("corpus", parameters={"corpus": "flop", "a": 1, "b": 2}, output_format="json"), primo)
    run(CommandRequest("corpus", parameters={"corpus": "flop", "a": 1, "b": 2}, output_format="json"), secondo)
    assert primo.getvalue() == secondo.getvalue()


def test_excel_export(tmp_path):
    destinazione = tmp_path / "out" / "flop.xlsx"
    codice = run(CommandRequest("flop", parameters={"a": 1, "b": 1}, xlsx_path=destinazione), io.StringIO())
    assert codice == EXIT_OK
    cartella = openpyxl.load_workbook(destinazione)
    assert "Riepilogo" in cartella.sheetnames
    chiavi = [riga[0] for riga in cartella["Riepilogo"].iter_rows(min_row=2, values_only=True)]
    assert "exceptional_weights" in chiavi


def test_json_safe_large_integers():
    assert json_safe(JSON_SAFE_INTEGER) == JSON_SAFE_INTEGER
    assert json_safe(JSON_SAFE_INTEGER + 1) == str(JSON_SAFE_INTEGER + 1)
    assert json_safe((1, [2, True])) == [1, [2, True]]


def test_limits_are_clamped():
    assert merge_with_defaults(None) == ComputationLimits()
    limiti = merge_with_defaults({"max_search_steps": 0, "max_quotient_order": 10**12})
    assert limiti.max_search_steps == 1
    assert limiti.max_quotient_order == 10**9


@pytest.mark.parametrize(
    "nome,parametri",
    [
        ("an", {"k": 0}),
        ("an", {"k": -1}),
        ("flop", {"a": 0, "b": 1}),
        ("flop", {"a": 1, "b": 0}),
        ("section3", {"l": 0}),
        ("section3", {"p": 0}),
    ],
)
def test_corpus_rejects_non_positive_parameters(nome, parametri):
    with pytest.raises(InputError):
        corpus_run(nome, parametri)


def test_corpus_zero_parameters_exit_with_two():
    assert main(["corpus", "an", "--k", "0"]) == EXIT_INPUT
    assert main(["corpus", "flop", "--a", "0"]) == EXIT_INPUT
    assert main(["corpus", "section3", "--l", "0"]) == EXIT_INPUT
    assert main(["flop", "--b", "0"]) == EXIT_INPUT


@pytest.mark.parametrize(
    "verbo,campo,contenuto",
    [
        ("classify", "cone", {"dim": 2, "rays": [1, 2]}),
        ("classify", "cone", {"dim": 2, "rays": 5}),
        ("classify", "cone", {"dim": 2, "rays": ["12", "34"]}),
        ("deform", "summands", {"n": 3, "summands": [{"vertices": [1, 0]}]}),
        ("flip", "cone", {"rays": [0, 1]}),
    ],
)
def test_flat_vectors_are_input_errors(tmp_path, verbo, campo, contenuto):
    percorso = _scrivi(tmp_path, "malformato.json", contenuto)
    richiesta = CommandRequest(verbo, **{f"{campo}_path": percorso})
    assert run(richiesta, io.StringIO()) == EXIT_INPUT


def test_guard_help_shows_labels(capsys):
    with pytest.raises(SystemExit) as uscita:
        main(["classify", "--help"])
    assert uscita.value.code == 0
    testo = " ".join(capsys.readouterr().out.split())
    for definition in GUARD_DEFINITIONS.values():
        assert definition.label in testo
