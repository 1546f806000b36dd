import json
import random

import pytest

from oredecomp.cli import operator_str, parse_operator, parse_ypoly, run, spoly_str
from oredecomp.errors import DivisionByOperator, ExprSyntaxError
from oredecomp.fieldkit import Poly, RatFuncField, fq_make
from oredecomp.ore import OrePoly, ore_pow

from helpers import rand_operator


def test_parse_commutation_example():
    F3 = fq_make(3)
    R = RatFuncField(F3)
    t = R.t
    assert parse_operator("D*t", F3) == OrePoly(R, [R.one, t])


def test_parse_coefficient_expression():
    F3 = fq_make(3)
    R = RatFuncField(F3)
    t = R.t
    L = parse_operator("(t^2+1)/t*D^2 + 3", F3)
    assert L == OrePoly(R, [R.from_int(3), R.zero, (t * t + R.one) / t])


def test_parse_division_by_operator_rejected():
    F3 = fq_make(3)
    with pytest.raises(DivisionByOperator):
        parse_operator("D/D", F3)


def test_parse_errors_are_positioned():
    F3 = fq_make(3)
    with pytest.raises(ExprSyntaxError) as err:
        parse_operator("D + ?", F3)
    assert err.value.position == 4
    with pytest.raises(ExprSyntaxError):
        parse_operator("D^t", F3)
    with pytest.raises(ExprSyntaxError):
        parse_operator("(D", F3)


def test_parse_g_symbol():
    F9 = fq_make(3, 2)
    R9 = RatFuncField(F9)
    L = parse_operator("g*D + g^2", F9)
    g = R9.from_base(F9.gen())
    assert L == OrePoly(R9, [g * g, g])
    with pytest.raises(ExprSyntaxError):
        parse_operator("g*D", fq_make(3))


def test_parse_ypoly():
    F3 = fq_make(3)
    R = RatFuncField(F3)
    t = R.t
    q = parse_ypoly("Y^2 - t*Y + 1", F3)
    assert q == Poly(R, [R.one, -t, R.one])
    # commutative: Y*t == t*Y
    assert parse_ypoly("Y*t", F3) == parse_ypoly("t*Y", F3)


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (3, 2)])
def test_print_parse_round_trip(p, n):
    field = fq_make(p, n)
    R = RatFuncField(field)
    rng = random.Random(p * 10 + n)
    for _ in range(40):
        L = rand_operator(R, rng, rng.randrange(0, 4), 2, 2)
        assert parse_operator(operator_str(L), field) == L
    D = OrePoly.partial(R)
    assert parse_operator(operator_str(ore_pow(D, 3)), field) == ore_pow(D, 3)
    assert parse_operator(operator_str(OrePoly.zero(R)), field) == OrePoly.zero(R)


def test_spoly_str_never_mentions_s():
    F3 = fq_make(3)
    R = RatFuncField(F3)
    t = R.t
    P = Poly(R, [-t, R.one])  # Y - s, printed with s = t^3
    text = spoly_str(P)
    assert "s" not in text
    assert text == "Y + 2*t^3"


def test_run_decompose_json(capsys):
    code = run(["decompose", "--p", "3", "--n", "1",
                "--expr", "D^2 - D", "--no-timings"])
    out = capsys.readouterr().out
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {
        "input", "field", "monic_input", "char_poly", "invariants",
        "invariant_roots", "factors", "iso_witness", "verified", "seed",
    }
    assert doc["verified"] is True
    assert len(doc["factors"]) == 2
    for f in doc["factors"]:
        assert set(f) == {"expr", "order", "degree", "invariant",
                          "indecomposable"}
        assert f["order"] == 1 and f["indecomposable"] is True


def test_run_pcurvature_json(capsys):
    code = run(["pcurvature", "--p", "3", "--n", "1", "--expr", "D",
                "--no-timings"])
    out = capsys.readouterr().out
    assert code == 0
    doc = json.loads(out)
    assert doc["char_poly"] == "Y"
    assert doc["invariants"] == ["Y"]
    assert doc["invariant_roots"] == ["Y"]
    assert doc["matrix"] == [["0"]]


def test_run_deterministic_output(capsys):
    args = ["decompose", "--p", "5", "--n", "1", "--seed", "3",
            "--expr", "D^2 - D", "--no-timings"]
    assert run(args) == 0
    first = capsys.readouterr().out
    assert run(args) == 0
    second = capsys.readouterr().out
    assert first == second


def test_run_exit_codes(capsys):
    assert run(["decompose", "--p", "3", "--expr", "D + ?"]) == 2
    capsys.readouterr()
    # D^3 - t violates the separability hypothesis
    assert run(["decompose", "--p", "3", "--expr", "D^3 - t"]) == 3
    capsys.readouterr()
    assert run(["apply", "--p", "3", "--expr", "D/D"]) == 2
    capsys.readouterr()


def test_run_gcrd_lclm(capsys):
    assert run(["lclm", "--p", "3", "--expr", "D", "--expr", "D - 1",
                "--no-timings"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"] == "D^2 + (2)*D"
    assert run(["gcrd", "--p", "3", "--expr", "D^2 + (2)*D",
                "--expr", "D - 1", "--no-timings"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"] == "D + 2"


def test_run_apply(capsys):
    assert run(["apply", "--p", "3", "--expr", "t*D + 1",
                "--expr", "1/t", "--no-timings"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"] == "0"


def test_run_equivalent(capsys):
    assert run(["equivalent", "--p", "5", "--expr", "D",
                "--expr", "D + 2/t", "--no-timings"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["equivalent"] is True
    assert run(["equivalent", "--p", "3", "--expr", "D",
                "--expr", "D - 1", "--no-timings"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["equivalent"] is False


def test_run_repr(capsys):
    assert run(["repr", "--p", "3", "--invariants", "Y;Y",
                "--no-timings"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verified"] is True
    assert len(doc["factors"]) == 2
    assert doc["roundtrip_invariants"] == ["Y", "Y"]


def test_run_json_out_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    assert run(["pcurvature", "--p", "3", "--expr", "D", "--no-timings",
                "--json-out", str(target)]) == 0
    stdout = capsys.readouterr().out
    assert target.read_text() == stdout


def test_run_custom_modulus(capsys):
    assert run(["pcurvature", "--p", "3", "--n", "2", "--modulus", "1,0,1",
                "--expr", "g*D", "--no-timings"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["field"] == {"p": 3, "n": 2, "modulus": [1, 0, 1]}


def test_timings_key_present_by_default(capsys):
    assert run(["pcurvature", "--p", "3", "--expr", "D"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert "timings_ms" in doc


def test_expr_dash_reads_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("D^2 - D"))
    assert run(["decompose", "--p", "3", "--expr", "-", "--no-timings"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verified"] is True and len(doc["factors"]) == 2


def test_bad_field_parameters_exit_2(capsys):
    assert run(["decompose", "--p", "4", "--expr", "D"]) == 2
    capsys.readouterr()
    assert run(["decompose", "--p", "3", "--n", "2", "--modulus", "0,0,1",
                "--expr", "D"]) == 2
    capsys.readouterr()


def test_parser_edge_expressions():
    F3 = fq_make(3)
    R = RatFuncField(F3)
    t = R.t
    D = OrePoly.partial(R)
    assert parse_operator("((D))^2", F3) == ore_pow(D, 2)
    assert parse_operator("2^3", F3) == OrePoly.const(R, R.from_int(8))
    assert parse_operator("D^0", F3) == OrePoly.one(R)
    assert parse_operator("t/t", F3) == OrePoly.one(R)
    assert parse_operator("1/(t^2+1)*D", F3) == OrePoly(
        R, [R.zero, R.one / (t * t + R.one)])
    # division by zero inside an expression
    from oredecomp.errors import DivisionByZero

    with pytest.raises(DivisionByZero):
        parse_operator("D/(t-t)", F3)
