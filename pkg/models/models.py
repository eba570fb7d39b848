from pydantic import BaseModel, validator, root_validator
from typing import Dict, List, Optional
from enum import Enum


class Variant(str, Enum):
    D = "D"
    D_ram = "D_ram"
    D_nr = "D_nr"
    D_tilde = "D_tilde"


class Conjugator(str, Enum):
    identity = "identity"
    lower_unipotent = "lower_unipotent"
    swap = "swap"


class EquivalenceMode(str, Enum):
    search = "search"
    normal_form = "normal-form"
    both = "both"


class CocycleLabel(str, Enum):
    Z1 = "Z1"
    B1 = "B1"
    Q_v = "Q_v"
    P_nr = "P_nr"
    P_ram = "P_ram"
    M_v = "M_v"
    N_v = "N_v"
    M_tilde_v = "M_tilde_v"
    N_tilde_v = "N_tilde_v"
    custom = "custom"


class RingPresentation(BaseModel):
    p: int
    f: int = 1
    N: int
    modulus: Optional[List[int]] = None  # coefficients, highest degree first
    variables: List[str] = []
    relations: List[str] = []


class DeformClassSpec(BaseModel):
    variant: Variant
    v: int
    kappa_sigma: int
    basis_conjugator: Conjugator = Conjugator.identity

    @root_validator(skip_on_failure=True)
    def check_conjugator_pairing(cls, values):
        variant = values["variant"]
        conjugator = values["basis_conjugator"]
        allowed = {
            Conjugator.identity: set(Variant),
            Conjugator.lower_unipotent: {Variant.D_nr, Variant.D_tilde},
            Conjugator.swap: {Variant.D_ram, Variant.D_tilde},
        }
        if variant not in allowed[conjugator]:
            raise ValueError(
                f"Conjugator {conjugator.value} cannot be paired with variant {variant.value}"
            )
        return values


class PlaceRecord(BaseModel):
    label: str
    dim_L: int
    h0: int

    @validator("dim_L", "h0")
    def nonnegative(cls, value):
        if value < 0:
            raise ValueError("local dimensions must be nonnegative")
        return value


class SelmerScenario(BaseModel):
    module: str = "Ad"
    h0_global: int
    h0_global_dual: int
    places: List[PlaceRecord] = []
    flags: Dict[str, bool] = {}  # user-validated side conditions on the residual character


class ScenarioKind(str, Enum):
    wiles = "wiles"
    tangent_p = "tangent_p"
    euler_p = "euler_p"
    fact_table = "fact_table"


class ScenarioFile(BaseModel):
    name: str
    kind: ScenarioKind
    claim: str
    expected: List[int]
    scenario: Optional[SelmerScenario] = None
    params: Dict[str, str] = {}


class TangentCase(str, Enum):
    split = "split"
    indecomposable = "indecomposable"


class TangentDims(BaseModel):
    case: TangentCase
    h0_ad0: int
    h0_ad: int
    h1_u: int
    dim_n_tilde_p: int
    h0_u_tilde: int
    h1_u_tilde: int


class CohomologyDims(BaseModel):
    module: str
    dim: int
    h0: int
    h1: int
    h2: int


class TwistOutcome(BaseModel):
    twist: str
    member_before: bool
    member_after: bool
    witness: Optional[List[List[str]]] = None


class StabilizationReport(BaseModel):
    ring: str
    k: int
    variant: str
    twists: List[TwistOutcome]
    all_preserved: bool
    violations: List[str] = []


class FiberReport(BaseModel):
    base: str
    fiber_size: int
    empty: bool
    num_classes: int
    class_representatives: List[str] = []
    h1_dim: int
    j_dim: int
    translation_subgroup_order: int
    simply_transitive: Optional[bool] = None
    stabilizer_dim: Optional[int] = None
    action_table: Optional[List[List[Optional[int]]]] = None


class ClaimResult(BaseModel):
    claim: str
    passed: bool
    detail: str = ""


class HullStepReport(BaseModel):
    source: str
    target: str
    k: int
    agreement_checked: int
    agreement: bool
    gamma_terms: List[str] = []
    twist_roundtrips: int
    roundtrip: bool
    weights_congruent: bool
