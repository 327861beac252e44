from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class VerifySettings(BaseModel):
    """Randomized verification settings"""
    seed: int = Field(default=0)
    random_cases: int = Field(default=200, ge=1)
    axiom_cases: int = Field(default=1000, ge=1)
    subdivision_chains: int = Field(default=24, ge=1)
    max_workers: int = Field(default=5, ge=1)


class OutputSettings(BaseModel):
    """Report output settings"""
    json_indent: int = Field(default=2, ge=0)


class Settings(BaseSettings):
    """Application settings"""
    log_level: str = Field(default="WARNING")
    verify: VerifySettings = VerifySettings()
    output: OutputSettings = OutputSettings()

    model_config = SettingsConfigDict(
        env_prefix="LOGRING_",
        env_file=".env",
        env_nested_delimiter="__",
        extra="ignore",
    )


# Create a global settings instance
settings = Settings()
