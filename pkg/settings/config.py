"""Configuration settings using Pydantic."""
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Numerical tolerances and runtime knobs loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="ENTROPY_PERTURB_",
        env_file=".env",
        env_file_encoding="utf-8",
    )

    # Spectral core
    hermitian_tol: float = Field(default=1e-12, gt=0, description="Bound on |A - A^dagger| and |Tr H|")
    cluster_rtol: float = Field(default=1e-8, gt=0, description="Relative gap below which eigenvalues share a cluster")
    eigenvalue_floor: float = Field(default=1e-12, gt=0, description="Eigenvalues below this are null-space")
    null_coupling_tol: float = Field(default=1e-10, gt=0, description="Largest tolerated coupling into the null space")

    # Series
    consistency_checks: bool = Field(default=True, description="Cross-check the two second-derivative forms")
    consistency_tol: float = Field(default=1e-10, gt=0)
    closed_form_max_walks: int = Field(
        default=20_000, ge=0, description="Closed four-walk count above which orders 3-4 use quadrature"
    )

    # Quadrature
    quad_rtol: float = Field(default=1e-10, gt=0)
    quad_atol: float = Field(default=1e-14, gt=0)
    quad_limit: int = Field(default=2000, ge=10, description="Subdivision budget")
    threads: int = Field(default=1, ge=1, description="Workers for quadrature panels")

    # Fock truncation
    truncation_tol: float = Field(default=1e-3, gt=0, description="Largest accepted geometric tail mass")
    default_tail: float = Field(default=1e-12, gt=0, description="Tail targeted by the default Fock dimension")
    max_fock_dim: int = Field(default=200, ge=2)

    # Finite-difference oracle
    fd_eps0: float = Field(default=1e-2, gt=0)
    fd_levels: int = Field(default=4, ge=2)
    fd_max_shrinks: int = Field(default=20, ge=0)

    # CLI
    log_level: str = Field(default="WARNING")


def get_settings() -> Settings:
    """Factory function to get settings instance."""
    return Settings()
