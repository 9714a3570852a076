import pytest

from triadlab.cli import main
from triadlab.errors import ParseError
from triadlab.session import format_session, parse_session

QUARTIC_SESSION = """\
# the degree-4 genus-0 pipeline
field QQ
module C = quotient twist=0 relations=[a, X, Y, Z, T]
module H = quotient twist=-1 relations=[X, Y, Z, a*T, T^2]
cocycle u2 = koszul C -> H images=[e4: 1, eps1: -T]
triad Lprime = compact-cone u2
qfunction q = 2:1,3:3
"""

TRIVIAL_SESSION = """\
field QQ
module M0 = quotient twist=0 relations=[X, Y, Z, T^3]
subquotient S = module=M0 j=[T] m1=[T^2]
triad Ltriv = trivial S
triad Lmaj = majeure Ltriv
"""

BAD_SESSION = """\
matrix d1 : 1 -> 0 = [[X]]
matrix d0 : 0 -> -1 = [[Y]]
triad bad = complex d1 d0
"""

MATRIX_SESSION = """\
field QQ
matrix dp1 : 1^3,2^6 -> 0,1^4 = [
  [X, Y, Z, 0, 0, 0, 0, 0, T^2],
  [-a, 0, 0, Z, T, 0, 0, 0, Y],
  [0, -a, 0, 0, 0, Z, T, 0, -X],
  [0, 0, -a, -X, 0, -Y, 0, T, 0],
  [0, 0, 0, 0, -X, 0, -Y, -Z, -a*T]
]
matrix dp0 : 0,1^4 -> 0 = [[a, X, Y, Z, T]]
triad Lprime = complex dp1 dp0
"""


@pytest.fixture
def quartic_file(tmp_path):
    path = tmp_path / "quartic.tl"
    path.write_text(QUARTIC_SESSION)
    return str(path)


def run_cli(capsys, argv):
    status = main(argv)
    out = capsys.readouterr().out
    return status, out


def test_parse_session_entities():
    s = parse_session(QUARTIC_SESSION)
    assert s.names("module") == ["C", "H"]
    assert s.names("triad") == ["Lprime"]
    t = s.get("Lprime", "triad")
    from triadlab.chiffres import chiffres_format

    assert chiffres_format(t.terms()[0]) == "1^3,2^6"


def test_session_twist_convention():
    s = parse_session(QUARTIC_SESSION)
    h = s.get("H", "module")
    # twist=-1 is the ring twisted by -1: generator carries chiffres 1
    assert list(h.gen_twists) == [1]


def test_duplicate_name_rejected():
    text = "poly f = X\npoly f = Y\n"
    with pytest.raises(ParseError):
        parse_session(text)


def test_unknown_reference_rejected():
    with pytest.raises(ParseError):
        parse_session("module M = cokernel nothing\n")


def test_format_round_trip():
    s = parse_session(QUARTIC_SESSION)
    text = format_session(s)
    s2 = parse_session(text)
    assert format_session(s2) == text


def test_format_round_trip_matrix():
    s = parse_session(MATRIX_SESSION)
    text = format_session(s)
    s2 = parse_session(text)
    assert format_session(s2) == text


def test_printed_matrix_session_accepted():
    s = parse_session(MATRIX_SESSION)
    t = s.get("Lprime", "triad")
    from triadlab.chiffres import chiffres_format

    assert chiffres_format(t.kernel_chiffres()) == "2^2,3^6,4^2"


def test_cli_analyze(quartic_file, capsys):
    status, out = run_cli(capsys, ["analyze", "--session", quartic_file, "--triad", "Lprime"])
    assert status == 0
    assert "N gens: 2^2,3^6,4^2" in out
    assert "elementary" in out


def test_cli_family(quartic_file, capsys):
    status, out = run_cli(
        capsys,
        ["family", "--session", quartic_file, "--triad", "Lprime", "--q", "2:1,3:3"],
    )
    assert status == 0
    assert "(d,g) = (4,0), h0 = 0" in out
    assert "2,3^3 -> [1^3,2^6 -> 0,1^4 -> 0]" in out


def test_cli_family_records(quartic_file, capsys):
    status, out = run_cli(
        capsys,
        [
            "family",
            "--session",
            quartic_file,
            "--triad",
            "Lprime",
            "--q",
            "2:1,3:3",
            "--format",
            "records",
        ],
    )
    assert status == 0
    assert "degree=4\n" in out
    assert "genus=0\n" in out
    assert "h0=0\n" in out


def test_cli_check_bad_session(tmp_path, capsys):
    path = tmp_path / "bad.tl"
    path.write_text(BAD_SESSION)
    status, out = run_cli(capsys, ["check", "--session", str(path)])
    assert status == 1
    assert "NOT_A_COMPLEX" in out


def test_cli_check_ok(quartic_file, capsys):
    status, out = run_cli(capsys, ["check", "--session", quartic_file])
    assert status == 0


def test_cli_determinism(quartic_file, capsys):
    status1, out1 = run_cli(
        capsys, ["analyze", "--session", quartic_file, "--triad", "Lprime"]
    )
    status2, out2 = run_cli(
        capsys, ["analyze", "--session", quartic_file, "--triad", "Lprime"]
    )
    assert out1 == out2


def test_cli_out_writes_same_bytes(quartic_file, capsys, tmp_path):
    target = tmp_path / "report.txt"
    status, out = run_cli(
        capsys,
        [
            "family",
            "--session",
            quartic_file,
            "--triad",
            "Lprime",
            "--q",
            "2:1,3:3",
            "--out",
            str(target),
        ],
    )
    assert status == 0
    assert target.read_text() == out


def test_cli_trivial_then_majeure(tmp_path, capsys):
    path = tmp_path / "trivial.tl"
    path.write_text(TRIVIAL_SESSION)
    status, out = run_cli(capsys, ["majeure", "--session", str(path), "--triad", "Ltriv"])
    assert status == 0
    assert "1^3,2^7,3 -> 0,1^4 -> 0" in out
    assert "N gens: 2^3,3^8,4^3" in out


def test_cli_koszul_qsharp(capsys):
    status, out = run_cli(capsys, ["koszul", "--qsharp", "1,1,1,1"])
    assert status == 0
    assert "q: 2:3" in out


def test_cli_resolve(quartic_file, capsys):
    status, out = run_cli(
        capsys, ["resolve", "--session", quartic_file, "--module", "H"]
    )
    assert status == 0
    assert "stage1: 2^4,3" in out


def test_cli_fiber(quartic_file, capsys):
    status, out = run_cli(
        capsys,
        ["fiber", "--session", quartic_file, "--triad", "Lprime", "--point", "all"],
    )
    assert status == 0
    assert "V(k): 0:1, 1:1, 2:1" in out
    assert "V(K): 1:1" in out


def test_cli_subquotient(quartic_file, capsys):
    status, out = run_cli(
        capsys, ["subquotient", "--session", quartic_file, "--triad", "Lprime"]
    )
    assert status == 0
    assert "M0: 0:1, 1:1, 2:1" in out
    assert "M: 1:1" in out
    assert "M-1: 0:1" in out


def test_cli_usage_error(capsys):
    status = main(["analyze"])  # missing required flags
    assert status == 2
