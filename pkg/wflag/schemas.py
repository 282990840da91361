"""Pydantic schemas for equation data files and command reports"""

from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from wflag.models import OrderKind, TargetClass


# Data File Schemas
class EquationRecord(BaseModel):
    """Schema for one appendix equation"""
    label: str = Field(..., description="Equation label, e.g. A1 or B36")
    terms: List[Tuple[str, str]] = Field(..., min_length=1, description='Terms as ["p/q", "x1*x6"] pairs')


class BlockRecord(BaseModel):
    """Schema for a block of equations spanning one summand"""
    dimension: int = Field(..., gt=0, description="Dimension of the summand")
    first: int = Field(..., gt=0, description="First equation number in the block")
    last: int = Field(..., gt=0, description="Last equation number in the block")


class AppendixData(BaseModel):
    """Schema for an equation data file"""
    id: str
    variety: str
    variables: int = Field(..., gt=0, description="Number of variables x1..xn")
    blocks: List[BlockRecord] = Field(default_factory=list)
    equations: List[EquationRecord]

    model_config = ConfigDict(extra="forbid")


# Response Schemas
class CatalogEntryReport(BaseModel):
    """Schema for a catalog row"""
    id: str
    name: str
    group: str
    lie_type: str
    rank: int
    highest_weight: List[str] = Field(..., description='Coordinates as "p/q" strings')
    ambient_dim: int
    dim: int
    codim: int
    num_quadrics: int
    coordinates: str = Field(..., description='"epsilon" or "omega" (fundamental weights)')
    slow: bool


class InvariantsReport(BaseModel):
    """Schema for numerical invariants"""
    degree: str = Field(..., description='D^3 as "p/q"')
    genus: Optional[int] = None
    dc2_estimate: Optional[str] = Field(None, description="12 x mean linear coefficient of the quasi-polynomial")
    fit_period: Optional[int] = None


class HilbertReport(BaseModel):
    """Schema for a weighted flag variety and its Hilbert series"""
    variety: str
    mu: List[int]
    u: int
    ambient_weights: List[int]
    dim: int
    codim: int
    numerator: List[Tuple[int, str]] = Field(..., description="Sparse numerator, ascending exponent")
    denominator: List[int] = Field(..., description="Exponents d of the factors 1-t^d")
    adjunction_number: int
    canonical_degree: int
    gorenstein_symmetric: bool
    expansion: Optional[List[int]] = None


class ConstructReport(BaseModel):
    """Schema for a constructed variety"""
    variety: str
    mu: List[int]
    u: int
    ops: List[str]
    ambient_weights: List[int]
    dim: int
    canonical_degree: int
    numerator: List[Tuple[int, str]]
    denominator: List[int]
    wellformed_ambient: bool
    threefold_class: Optional[str] = Field(None, description="CY3, Fano3 or general; null unless dim is 3")
    invariants: Optional[InvariantsReport] = None


class CandidateReport(BaseModel):
    """Schema for a search candidate"""
    entry_id: str
    mu: List[int]
    u: int
    ops: List[str]
    ambient_weights: List[int]
    numerator: List[Tuple[int, str]]
    canonical_degree: int
    target: TargetClass
    wellformed_ambient: bool
    notes: List[str]
    invariants: InvariantsReport


class GroebnerReport(BaseModel):
    """Schema for a Groebner basis computation"""
    ideal: str
    weights: List[int]
    order: OrderKind
    num_generators: int
    gb_size: int
    leading_monomials: List[str]
    numerator: List[Tuple[int, str]]
    denominator: List[int]
    matches_closed_form: Optional[bool] = None


class CheckResult(BaseModel):
    """Schema for one verification check"""
    name: str
    passed: bool
    hard: bool = Field(True, description="Informational checks never fail the suite")
    detail: str = ""


class VerifyReport(BaseModel):
    """Schema for a verification suite run"""
    suite: str
    passed: bool
    checks: List[CheckResult]


class Report(BaseModel):
    """Envelope shared by every command"""
    command: str
    inputs: Dict[str, Any]
    outputs: Any
    version: str
    elapsed_seconds: float = Field(..., description="Wall time; the only nondeterministic field")
