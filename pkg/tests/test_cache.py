import json

from tentmorph.cache import ENV_VAR, ResultCache, cache_key, resolve_cache_path
from tentmorph.cli import main, recompute


def _fill(path):
    for mu in ("1", "3/4", "5/6", "9/10", "2/3"):
        for n in range(1, 6):
            assert main(["allow", "--mu", mu, "--n", str(n), "--cache", str(path), "--out", "json"]) == 0
    assert main(["table1", "--nmin", "4", "--nmax", "6", "--cache", str(path)]) == 0


def test_key_depends_on_params():
    assert cache_key("allow", {"mu": "1", "n": 3}) == cache_key("allow", {"n": 3, "mu": "1"})
    assert cache_key("allow", {"mu": "1", "n": 3}) != cache_key("allow", {"mu": "1", "n": 4})


def test_audit_twenty_keys(tmp_path, monkeypatch, capsys):
    monkeypatch.delenv(ENV_VAR, raising=False)
    path = tmp_path / "cache.json"
    _fill(path)
    cache = ResultCache(path)
    assert len(cache) == 28
    assert cache.audit(recompute, sample=20, seed=0) == []
    assert main(["verify", "--suite", "numerics", "--audit-cache", "--cache", str(path)]) == 0
    assert "[cache] recomputation matches stored bytes: PASS" in capsys.readouterr().out


def test_audit_detects_tampering(tmp_path, monkeypatch, capsys):
    monkeypatch.delenv(ENV_VAR, raising=False)
    path = tmp_path / "cache.json"
    _fill(path)
    data = json.loads(path.read_text())
    key = ResultCache(path).keys()[0]
    data[key]["value"] += " "
    path.write_text(json.dumps(data))
    assert ResultCache(path).audit(recompute, sample=100) == [key]


def test_cache_hit_matches_fresh_output(tmp_path, monkeypatch, capsys):
    monkeypatch.delenv(ENV_VAR, raising=False)
    path = tmp_path / "c.json"
    argv = ["allow", "--mu", "3/4", "--n", "5", "--out", "json"]
    main(argv + ["--cache", str(path)])
    cold = capsys.readouterr().out
    main(argv + ["--cache", str(path)])
    warm = capsys.readouterr().out
    main(argv + ["--no-cache"])
    assert cold == warm == capsys.readouterr().out


def test_env_var_overrides_flag(tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_VAR, str(tmp_path / "env.json"))
    assert resolve_cache_path(str(tmp_path / "flag.json")) == str(tmp_path / "env.json")
    main(["allow", "--mu", "1", "--n", "3", "--cache", str(tmp_path / "flag.json")])
    assert (tmp_path / "env.json").exists() and not (tmp_path / "flag.json").exists()
