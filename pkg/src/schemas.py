"""运行配置 (RunConfig): one CLI invocation with Settings defaults merged in."""
from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

Command = Literal["census", "classify", "quotient", "verify", "bounds", "groups"]


class RunConfig(BaseModel):
    """单次运行配置; invalid flag combinations are rejected before any computation"""
    command: Command = Field(..., description="subcommand")
    group: Optional[str] = Field(default=None, description="group spec, e.g. cyclic:6 or klein4")

    # census
    mode: Literal["exact", "sampled", "unlabelled"] = Field(default="exact", description="census mode")
    reduce_by_aut: bool = Field(default=False, description="classify one representative per Aut(R)-orbit")
    seed: Optional[int] = Field(default=None, ge=0, lt=2**64, description="PCG64 seed (sampled mode)")
    samples: Optional[int] = Field(default=None, ge=1, description="number of samples (sampled mode)")
    workers: int = Field(default=1, ge=1, description="worker processes")
    checkpoint: Optional[Path] = Field(default=None, description="line-JSON checkpoint file")
    out: Optional[Path] = Field(default=None, description="summary output file (stdout when unset)")
    records: Optional[Path] = Field(default=None, description="per-subset record stream")
    format: Literal["csv", "json"] = Field(default="csv", description="record stream format")

    # caps (census / verify); None keeps the Settings value
    exact_census_cap: Optional[int] = Field(default=None, ge=1, description="largest r for exact censuses")
    unlabelled_census_cap: Optional[int] = Field(default=None, ge=1, description="largest r for the unlabelled census")
    lemma_cap: Optional[int] = Field(default=None, ge=1, description="largest r for partition-fixing checks")
    phi_census_cap: Optional[int] = Field(default=None, ge=1, description="largest r for fixed-orbit subset counts")

    # classify / quotient
    set_hex: Optional[str] = Field(default=None, description="connection set, little-endian hex")
    flags: bool = Field(default=False, description="also report the structural flags")
    normal: Optional[List[int]] = Field(default=None, description="normal subgroup elements")
    quotient: Optional[Literal["odd", "normal"]] = Field(default=None, description="quotient construction")

    # verify
    suite: str = Field(default="all", description="suite name or 'all'")

    # bounds
    kind: Optional[str] = Field(default=None, description="bound kind")
    r: Optional[int] = Field(default=None, description="group order for bounds")
    n: Optional[int] = Field(default=None, description="normal subgroup order for bounds")
    b: Optional[float] = Field(default=None, description="non-DRR constant")
    epsilon: Optional[float] = Field(default=None, description="small-stabiliser exponent slack")

    # groups
    max_order: int = Field(default=16, ge=1, description="largest catalog order listed")

    @model_validator(mode="after")
    def _check_combination(self) -> "RunConfig":
        c = self.command
        if c in ("census", "classify", "quotient") and not self.group:
            raise ValueError(f"{c} needs --group")
        if c == "census":
            if self.records is not None and self.checkpoint is not None:
                raise ValueError("--records cannot be combined with --checkpoint")
            if self.mode == "sampled" and (self.samples is None or self.seed is None):
                raise ValueError("sampled census needs --samples and --seed")
            if self.mode != "sampled" and (self.samples is not None or self.seed is not None):
                raise ValueError("--samples and --seed only apply to the sampled mode")
            if self.reduce_by_aut and self.mode != "exact":
                raise ValueError("--reduce-by-aut only applies to the exact mode")
            if self.mode == "unlabelled" and (self.records is not None or self.checkpoint is not None):
                raise ValueError("unlabelled census has no record stream or checkpoint")
        if c in ("classify", "quotient") and not self.set_hex:
            raise ValueError(f"{c} needs --set")
        if c == "quotient":
            if not self.normal:
                raise ValueError("quotient needs --normal")
            if self.quotient is None:
                raise ValueError("quotient needs --odd or --normal-quotient")
        if c == "bounds" and (self.kind is None or self.r is None):
            raise ValueError("bounds needs --kind and --r")
        return self
