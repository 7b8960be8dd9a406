import json

import pytest

from qtnabla import cli, macdonald


@pytest.fixture
def run(tmp_path, monkeypatch, capsys):
    for key in list(__import__("os").environ):
        if key.startswith(cli.ENV_PREFIX):
            monkeypatch.delenv(key)
    monkeypatch.setenv("QTNABLA_CACHE_DIR", str(tmp_path / "cache"))

    def go(*argv):
        rc = cli.main(list(argv))
        out, err = capsys.readouterr()
        return rc, out, err

    yield go
    macdonald.set_cache_dir(None)


def test_qt_catalan_text(run):
    rc, out, _ = run("compute", "qt_catalan", "--n", "3")
    assert rc == 0
    assert "q^3 + q^2*t + q*t^2 + q*t + t^3" in out


def test_hilbert_eval(run):
    rc, out, _ = run("compute", "hilbert", "--n", "3", "--eval", "q=1,t=1")
    assert rc == 0 and out.strip().endswith("16")


def test_macdonald(run):
    rc, out, _ = run("compute", "macdonald", "--mu", "2")
    assert rc == 0 and "s[2] + q*s[1,1]" in out


def test_json_and_csv_outputs(run):
    rc, out, _ = run("compute", "D", "--n", "2", "--output", "json")
    assert rc == 0
    data = json.loads(out)
    assert data
    rc, out, _ = run("compute", "nabla_en", "--n", "2", "--output", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "name,n,m,extra,polynomial"
    assert len(lines) == 3  # one row per Schur term


def test_enk_rows(run):
    rc, out, _ = run("compute", "enk", "--n", "3", "--output", "csv")
    assert rc == 0
    assert len(out.strip().splitlines()) > 3


def test_super_coefficient(run):
    rc, out, _ = run("compute", "D", "--n", "2", "--eta", "2")
    assert rc == 0 and "q + t" in out


def test_guard_refuses_large_input(run):
    rc, _, err = run("compute", "D", "--n", "7")
    assert rc == 2 and "--force" in err
    rc, _, err = run("compute", "D", "--n", "5", "--m", "2")
    assert rc == 2


def test_usage_errors(run):
    assert run("compute")[0] == 2
    assert run("compute", "qt_catalan")[0] == 2
    assert run("compute", "qt_catalan", "--n", "3", "--output", "yaml")[0] == 2
    assert run("compute", "hilbert", "--n", "2", "--eval", "x=1")[0] == 2
    assert run("verify", "--only", "nonsense")[0] == 2


def test_llt_compute(run):
    rc, out, _ = run("compute", "llt", "--mu", "2,2", "--n", "2")
    assert rc == 0 and "q*s[2] + s[1,1]" in out


def test_verify_single(run):
    rc, out, _ = run("verify", "--n", "3", "--only", "main,hilbert_dim")
    assert rc == 0
    assert "2 passed, 0 failed" in out
    rc, out, _ = run("verify", "--n", "2", "--m", "2", "--only", "main", "--output", "json")
    assert rc == 0 and json.loads(out)[0]["status"] == "pass"


def test_verify_suite_subset(run):
    rc, out, _ = run("verify", "--only", "catalan_dim")
    assert rc == 0 and "0 failed" in out


def test_config_precedence(tmp_path, monkeypatch):
    cache = tmp_path / "c"
    cache.mkdir()
    (cache / cli.CONFIG_NAME).write_text(json.dumps({"output": "csv", "m": 2, "threads": 3}))
    args = cli.build_parser().parse_args(["verify", "--cache-dir", str(cache), "--m", "3"])
    cfg = cli.resolve_config(args, {"QTNABLA_OUTPUT": "json"})
    assert cfg.output == "json"  # env beats file
    assert cfg.m == 3  # flag beats file
    assert cfg.threads == 3  # file beats default
    assert cfg.cache_dir == cache
    cfg = cli.resolve_config(cli.build_parser().parse_args(["verify"]), {"QTNABLA_CACHE_DIR": str(cache)})
    assert cfg.output == "csv"


def test_bad_config_file(tmp_path):
    cache = tmp_path / "c"
    cache.mkdir()
    (cache / cli.CONFIG_NAME).write_text(json.dumps({"colour": "red"}))
    args = cli.build_parser().parse_args(["verify", "--cache-dir", str(cache)])
    with pytest.raises(cli.UsageError):
        cli.resolve_config(args, {})


def test_parse_eval():
    from qtnabla.ring import q

    assert cli.parse_eval("q=1,t=0") == {"q": 1, "t": 0}
    assert cli.parse_eval("t=1/q")["t"] * q == 1
    with pytest.raises(cli.UsageError):
        cli.parse_eval("q")


def test_cache_lifecycle(run, tmp_path):
    cache = tmp_path / "cache"
    rc, out, _ = run("cache", "warm", "--n", "3")
    assert rc == 0 and len(list(cache.glob("macdonald-*.json"))) == 3
    rc, out, _ = run("cache", "validate")
    assert rc == 0 and out.count("ok ") == 3
    bad = sorted(cache.glob("macdonald-*.json"))[-1]
    bad.write_text("{not json")
    rc, out, _ = run("cache", "validate")
    assert rc == 1 and "FAIL" in out and bad.name in out
    rc, out, _ = run("cache", "clear")
    assert rc == 0 and not list(cache.glob("macdonald-*.json"))
    assert run("cache", "clear")[0] == 0
