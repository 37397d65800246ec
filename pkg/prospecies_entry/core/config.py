# prospecies_entry/core/config.py

"""Library and CLI configuration from environment variables"""

from pydantic_settings import BaseSettings # type: ignore
import os


class Settings(BaseSettings):
    """Engine settings from environment variables"""

    # CLI
    CLI_NAME: str = 'prospecies'
    CLI_VERSION: str = '1.0.0'

    # Reproducibility - every random choice is drawn from this seed
    PROSPECIES_SEED: int = int(os.getenv('PROSPECIES_SEED', '0'))
    RANDOM_COEFFICIENT_RANGE: int = 5

    # Bound quiver algebras
    NILPOTENCY_BOUND: int = 30
    MAX_PATHS: int = 20000

    # Preprojective algebras
    TRUNCATION_DEGREE: int = 12

    # Homological bounds
    RESOLUTION_BOUND: int = 8
    GP_ORACLE_BOUND: int = 8

    # Isomorphism search
    ISO_RANDOM_SAMPLES: int = 64
    ISO_EXHAUSTIVE_MAX_HOM_DIM: int = 4
    ISO_GRID_CAP: int = 4096
    ALGEBRA_ISO_MAX_DIM: int = 30

    # Presentations of Π(Λ) are rebuilt and compared up to this degree
    PRESENTATION_CHECK_DEGREE: int = 4

    # Axiom re-checks are skipped above this dimension
    VERIFY_MAX_DIM: int = 64

    # Logging
    LOG_LEVEL: str = os.getenv('LOG_LEVEL', 'INFO')

    class Config:
        env_file = '.env'
        case_sensitive = True

settings = Settings()
