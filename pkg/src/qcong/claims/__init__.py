"""Claim language: parsing, printing, validation and the bundled corpus."""
from .model import (
    DATA_DIR,
    Claim,
    ConcreteClaim,
    default_claims_dir,
    instantiate,
    load_claim_file,
    parse_claim,
    registry_load,
)
from .printer import print_claim

__all__ = [
    "DATA_DIR",
    "Claim",
    "ConcreteClaim",
    "default_claims_dir",
    "instantiate",
    "load_claim_file",
    "parse_claim",
    "print_claim",
    "registry_load",
]
