from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, StrictBool, StrictInt, StrictStr


class SymbolDeclaration(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: StrictStr
    e_poly: List[Tuple[StrictInt, StrictInt, StrictInt]]
    dimension: StrictInt = Field(ge=0)
    smooth_projective: StrictBool = False
    empty: StrictBool = False


class FanFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dim: StrictInt = Field(ge=0)
    rays: List[List[StrictInt]]
    cones: List[List[StrictInt]]


class SncFile(BaseModel):
    """Strata keyed by comma-separated component names; the empty key is the interior."""
    model_config = ConfigDict(extra="forbid")

    dim: StrictInt = Field(ge=0)
    components: List[StrictStr]
    strata: Dict[str, StrictStr]
    closed: StrictBool = False
    symbols: List[SymbolDeclaration] = []


class ExpressionFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    expr: StrictStr
    symbols: List[SymbolDeclaration] = []


# Reports

class ClassParts(BaseModel):
    scalar: str
    p_part: str


class TbarReport(BaseModel):
    first: str
    second: str


class InvariantsReport(BaseModel):
    """Realizations that need a class in K0(Var) are None when L^-1 occurs."""
    tau: str
    rho: str
    chi_log: Optional[int] = None
    e_tau: Optional[str] = None
    t: Optional[str] = None
    tbar: Optional[TbarReport] = None
    b: Optional[str] = None


class FanSummary(BaseModel):
    ambient_dim: int
    rays: List[List[int]]
    maximal_cones: List[List[int]]
    cone_count: int
    smooth: bool
    chi_c: int
    completeness: str
    partially_validated: bool
    stratification: str
    stratification_reduced: str


class ChiYReport(BaseModel):
    lhs: str
    rhs: str
    equal: bool


class ResidueReport(BaseModel):
    component: str
    lhs: str
    rhs: str
    holds: bool
    component_identity: bool
    complement_identity: bool


class StratumEntry(BaseModel):
    key: str
    value: str


class SncSummary(BaseModel):
    dim: int
    components: List[str]
    open_strata: List[StratumEntry]
    rho_expansion: str
    rho_matches: bool
    chi_y: Optional[ChiYReport] = None
    residues: List[ResidueReport] = []


class ClassReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    class_: ClassParts = Field(alias="class")
    normal_form: str
    invariants: InvariantsReport
    fan: Optional[FanSummary] = None
    snc: Optional[SncSummary] = None
    notes: List[str] = []


class CheckResult(BaseModel):
    suite: str
    name: str
    passed: bool
    detail: str = ""


class VerifyReport(BaseModel):
    suite: str
    passed: bool
    total: int
    failed: int
    results: List[CheckResult]


class SubdivideReport(BaseModel):
    ray: List[int]
    before: str
    after: str
    classes_equal: bool
    chi_c_before: int
    chi_c_after: int
    stratification_after: str
    fan: FanFile


class P1PresetReport(BaseModel):
    name: str
    degrees: List[int]
    rows: List[List[int]]
    euler_characteristics: List[int]
    e_log: str
    ebar: TbarReport
    log_serre_duality: Optional[bool] = None


class CertificateReport(BaseModel):
    difference: str
    witness: List[int]
    witness_coefficient: int
    log_reduction: str
    trivial_reduction: str


class AgreementEntry(BaseModel):
    label: str
    oracle: TbarReport
    ring: TbarReport
    agree: bool


class HodgeReport(BaseModel):
    p1_presets: List[P1PresetReport]
    certificate: CertificateReport
    constant_free: List[AgreementEntry]
    toric: List[AgreementEntry]
