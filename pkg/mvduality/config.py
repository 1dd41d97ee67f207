"""Application Configuration"""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings with validation"""

    # Application
    app_name: str = "mvduality"
    app_version: str = "1.0.0"

    # Logging
    log_level: str = "INFO"
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # Randomness (all sampling is seeded)
    default_seed: int = 0

    # Axiom checks
    exhaustive_triple_limit: int = 1_000_000  # size**3 at or below -> exhaustive
    random_triple_samples: int = 1_000_000

    # Brute-force oracles
    filter_bruteforce_limit: int = 8  # largest carrier for subset enumeration
    boolean_bruteforce_atoms: int = 4

    # Morphism sampling
    hom_set_limit: int = 10_000
    naturality_samples: int = 100

    # Sample families
    max_algebra_size: int = 40

    # Suite execution
    suite_concurrency: bool = True
    suite_max_workers: int = 4

    model_config = SettingsConfigDict(env_file=".env", case_sensitive=False)


settings = Settings()
