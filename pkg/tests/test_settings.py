from logring.config.settings import Settings


def test_defaults():
    config = Settings(_env_file=None)
    assert config.log_level == "WARNING"
    assert config.verify.random_cases == 200
    assert config.verify.axiom_cases == 1000
    assert config.output.json_indent == 2


def test_nested_environment_variables(monkeypatch):
    monkeypatch.setenv("LOGRING_VERIFY__SEED", "7")
    monkeypatch.setenv("LOGRING_LOG_LEVEL", "DEBUG")
    config = Settings(_env_file=None)
    assert config.verify.seed == 7
    assert config.log_level == "DEBUG"


def test_dotenv_file(tmp_path):
    env_file = tmp_path / ".env"
    env_file.write_text("LOGRING_OUTPUT__JSON_INDENT=4\nLOGRING_VERIFY__MAX_WORKERS=2\n")
    config = Settings(_env_file=env_file)
    assert config.output.json_indent == 4
    assert config.verify.max_workers == 2
