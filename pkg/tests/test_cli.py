import io
import sys

import pytest

from planalg import cli


def run(argv):
    out = io.StringIO()
    old = sys.stdout
    sys.stdout = out
    try:
        code = cli.main(argv)
    finally:
        sys.stdout = old
    return code, out.getvalue()


def test_qnum_examples():
    assert run(["qnum", "3"]) == (0, "q^2 + 1 + q^-2\n")
    assert run(["qnum", "1"]) == (0, "1\n")
    assert run(["qnum", "4", "--choose", "2"]) == (
        0,
        "q^4 + q^2 + 2 + q^-2 + q^-4\n",
    )


def test_qnum_domain_errors():
    assert run(["qnum", "--", "-1"])[0] == 2
    assert run(["qnum", "3", "--choose", "5"])[0] == 2


def test_verify_small_suites_pass():
    for suite in ("qidentities", "tl", "jw", "otl", "karoubi"):
        code, text = run(["verify", suite, "--max", "3"])
        assert code == 0, text
        assert text.startswith("suite %s\n" % suite)
        assert "overall pass" in text


def test_verify_all_runs_every_suite():
    code, text = run(["verify", "all", "--max", "2"])
    assert code == 0
    for suite in ("qidentities", "tl", "jw", "otl", "karoubi"):
        assert "suite %s" % suite in text


def test_verify_unknown_suite_exits_2():
    with pytest.raises(SystemExit) as exc:
        run(["verify", "bogus"])
    assert exc.value.code == 2


def test_verify_deterministic():
    a = run(["verify", "tl", "--max", "4"])
    b = run(["verify", "tl", "--max", "4"])
    assert a == b


def test_verify_q0_and_out(tmp_path):
    path = tmp_path / "report.txt"
    code, text = run(
        ["verify", "qidentities", "--max", "4", "--q0", "3/2", "--out", str(path)]
    )
    assert code == 0
    assert path.read_text() == text
    assert run(["verify", "tl", "--max", "3", "--q0", "1"])[0] == 2


def test_decompose_certificate():
    code, text = run(["decompose", "1"])
    assert code == 0
    assert "signatures=^,v" in text
    assert text.rstrip().endswith("VERIFIED n=1 summands=2")
    code, text = run(["decompose", "2"])
    assert code == 0
    assert text.rstrip().endswith("VERIFIED n=2 summands=3")


def test_decompose_deterministic():
    assert run(["decompose", "2"]) == run(["decompose", "2"])


def test_decompose_domain():
    assert run(["decompose", "99"])[0] == 2
    assert run(["decompose", "0"])[0] == 2


def test_jw_command():
    code, text = run(["jw", "2"])
    assert code == 0
    assert text.startswith("p_2 = ")
    assert "idempotent=yes" in text
    assert run(["jw", "0"])[0] == 2
