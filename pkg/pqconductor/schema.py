from enum import Enum
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from pqconductor.constants import DEFAULT_A_MAX, DEFAULT_EXPONENT_MAX


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True)


class Factorization(_Frozen):
    value: int = Field(description="The factored integer, sign included.")
    factors: List[Tuple[int, int]] = Field(
        default_factory=list,
        description="(prime, exponent) pairs with strictly ascending primes.",
    )

    @model_validator(mode="after")
    def _check_product(self):
        if self.value == 0:
            raise ValueError("0 has no factorization")
        product = 1
        previous = 1
        for prime, exponent in self.factors:
            if prime <= previous or exponent < 1:
                raise ValueError(f"malformed factor list {self.factors}")
            previous = prime
            product *= prime**exponent
        if product != abs(self.value):
            raise ValueError(f"factors {self.factors} do not multiply to |{self.value}|")
        return self

    @property
    def sign(self) -> int:
        return -1 if self.value < 0 else 1

    @property
    def primes(self) -> List[int]:
        return [prime for prime, _ in self.factors]

    @property
    def big_omega(self) -> int:
        return sum(exponent for _, exponent in self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(exponent == 1 for _, exponent in self.factors)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.factors)

    def reassemble(self) -> int:
        product = self.sign
        for prime, exponent in self.factors:
            product *= prime**exponent
        return product


class QuadForm(_Frozen):
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)


class FieldClassData(_Frozen):
    m: int = Field(description="Squarefree radicand of Q(sqrt(m)).")
    D: int = Field(description="Fundamental discriminant of the field.")
    h_value: int = Field(
        description="Class number for D < 0, narrow class number for D > 0."
    )
    div3: bool

    @model_validator(mode="after")
    def _check(self):
        expected = self.m if self.m % 4 == 1 else 4 * self.m
        if self.D != expected:
            raise ValueError(f"D={self.D} is not the discriminant of Q(sqrt({self.m}))")
        if self.h_value < 1 or self.div3 != (self.h_value % 3 == 0):
            raise ValueError(f"inconsistent class data h={self.h_value}, div3={self.div3}")
        return self


class WeierstrassModel(_Frozen):
    a1: int = 0
    a2: int = 0
    a3: int = 0
    a4: int = 0
    a6: int = 0

    def as_tuple(self) -> Tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def equation(self) -> str:
        def term(coefficient, monomial):
            if coefficient == 0:
                return ""
            sign = "-" if coefficient < 0 else "+"
            size = abs(coefficient)
            if not monomial:
                return f" {sign} {size}"
            return f" {sign} {'' if size == 1 else size}{monomial}"

        left = "y^2" + term(self.a1, "xy") + term(self.a3, "y")
        right = "x^3" + term(self.a2, "x^2") + term(self.a4, "x") + term(self.a6, "")
        return f"{left} = {right}"


class InvariantSet(_Frozen):
    b2: int
    b4: int
    b6: int
    b8: int
    c4: int
    c6: int
    delta: int

    @model_validator(mode="after")
    def _check_identities(self):
        if 4 * self.b8 != self.b2 * self.b6 - self.b4 * self.b4:
            raise ValueError("4*b8 != b2*b6 - b4^2")
        if 1728 * self.delta != self.c4**3 - self.c6**2:
            raise ValueError("1728*delta != c4^3 - c6^2")
        return self

    @property
    def degenerate(self) -> bool:
        return self.delta == 0


class FamilyParams(_Frozen):
    a: int
    b: int
    n: int


class QuadraticPoly(_Frozen):
    c2: int
    c1: int
    c0: int

    def __call__(self, n: int) -> int:
        return (self.c2 * n + self.c1) * n + self.c0

    @property
    def discriminant(self) -> int:
        return self.c1 * self.c1 - 4 * self.c2 * self.c0


class ReductionType(str, Enum):
    GOOD = "good"
    MULTIPLICATIVE = "multiplicative"
    ADDITIVE = "additive"


class ConductorRow(_Frozen):
    a: int
    b: int
    n: int
    delta: int
    N: int
    p: int
    q: int = Field(default=1, description="1 when the conductor is prime.")

    @model_validator(mode="after")
    def _check(self):
        if abs(self.delta) != self.N or self.N != self.p * self.q:
            raise ValueError(f"row {self} does not satisfy |delta| = N = p*q")
        if self.p % 2 == 0 or (self.q != 1 and (self.q % 2 == 0 or self.q == self.p)):
            raise ValueError(f"row {self} has even or repeated prime factors")
        return self

    def csv_row(self) -> list:
        return [self.a, self.b, self.n, self.delta, self.N, self.p, "" if self.q == 1 else self.q]


class HLResult(_Frozen):
    a: int
    b: int
    prime_cutoff: int
    C: float


class SetzerPrimeHit(_Frozen):
    u: int
    p: int

    @model_validator(mode="after")
    def _check(self):
        if self.p != self.u * self.u + 64:
            raise ValueError(f"{self.p} != {self.u}^2 + 64")
        return self


class EquationTag(str, Enum):
    E1 = "E1"
    E2 = "E2"
    E3 = "E3"
    E4 = "E4"
    E5 = "E5"
    E6 = "E6"
    E7 = "E7"

    @property
    def signed(self) -> bool:
        return self not in (EquationTag.E1, EquationTag.E2, EquationTag.E3)

    @property
    def has_A(self) -> bool:
        return self not in (EquationTag.E1, EquationTag.E2)


EQUATION_SHAPES = {
    EquationTag.E1: "1 = 2^4 q^b - p^a",
    EquationTag.E2: "|p^a - q^b| = 16",
    EquationTag.E3: "A^2 + 64 = p^a q^b",
    EquationTag.E4: "A^2 {s1} 64 q^b = {s2}p^a",
    EquationTag.E5: "A^2 {s1} 4 q^b = {s2}256 p^a, q^b = {s3}1 mod 8",
    EquationTag.E6: "A^2 {s1} 4 p^a q^b = {s2}256",
    EquationTag.E7: "A^2 {s1} 64 p^a q^b = {s2}1",
}


class DiophEq(_Frozen):
    tag: EquationTag
    signs: Optional[Tuple[int, int]] = Field(
        default=None,
        description="(s1, s2): sign in front of the q/pq term on the left and of "
        "the right-hand side. None on a signed equation means every sign choice.",
    )

    @field_validator("signs")
    @classmethod
    def _check_signs(cls, signs):
        if signs is not None and any(s not in (1, -1) for s in signs):
            raise ValueError(f"signs must be +1/-1, got {signs}")
        return signs

    @model_validator(mode="after")
    def _check_tag(self):
        if not self.tag.signed and self.signs is not None:
            raise ValueError(f"{self.tag.value} carries no sign choices")
        return self

    def sign_choices(self) -> List[Optional[Tuple[int, int]]]:
        if not self.tag.signed:
            return [None]
        if self.signs is not None:
            return [self.signs]
        return [(1, 1), (1, -1), (-1, 1), (-1, -1)]

    def describe(self, signs: Optional[Tuple[int, int]] = None) -> str:
        signs = signs or self.signs
        shape = EQUATION_SHAPES[self.tag]
        if signs is None:
            return shape.format(s1="+/-", s2="+/-", s3="-/+")
        s1, s2 = signs
        return shape.format(
            s1="+" if s1 > 0 else "-",
            s2="" if s2 > 0 else "-",
            s3="" if s1 < 0 else "-",
        )


class Solution(_Frozen):
    A: Optional[int] = None
    a: int = Field(ge=1)
    b: int = Field(ge=1)
    signs: Optional[Tuple[int, int]] = None


class SearchBounds(_Frozen):
    a_max: int = Field(default=DEFAULT_EXPONENT_MAX, ge=1)
    b_max: int = Field(default=DEFAULT_EXPONENT_MAX, ge=1)
    A_max: int = Field(default=DEFAULT_A_MAX, ge=1)


class ObstructionKind(str, Enum):
    MOD3 = "Mod3"
    MOD16_FACTORIZATION = "Mod16Factorization"
    GAUSSIAN_PRIME = "GaussianPrime"
    MOD3_MOD5 = "Mod3Mod5"


class Obstruction(_Frozen):
    kind: ObstructionKind
    tag: EquationTag
    p: int
    q: int
    detail: str = Field(description="Plain-text derivation of the contradiction.")


class SetzerSystem(_Frozen):
    A: int
    B: int
    alpha: int = Field(ge=1)
    beta: int = Field(ge=1)
    sign: Literal[1, -1]
    p: int
    q: int

    @model_validator(mode="after")
    def _check_identity(self):
        left = self.B**2 * (self.A**2 - 4 * self.B)
        right = self.sign * 2**8 * self.p**self.alpha * self.q**self.beta
        if left != right:
            raise ValueError(f"B^2(A^2-4B) = {left} != {right}")
        return self

    @property
    def congruences_hold(self) -> bool:
        return (self.A % 4 == 1 and self.B % 16 == 0) or (
            self.A % 8 == 6 and self.B % 8 == 1
        )

    @property
    def divisibility_holds(self) -> bool:
        return all(not (self.A % r == 0 and self.B % r == 0) for r in (self.p, self.q))


class SemiprimeCandidate(_Frozen):
    N: int
    p: int
    q: int

    @model_validator(mode="after")
    def _check(self):
        if self.N != self.p * self.q or self.p == self.q or self.p % 2 == 0 or self.q % 2 == 0:
            raise ValueError(f"{self.N} != {self.p} * {self.q} with distinct odd primes")
        return self


class Verdict(_Frozen):
    candidate: SemiprimeCandidate
    congruence_pass: bool
    class_data: List[FieldClassData] = Field(default_factory=list)
    nonexistent: bool

    @model_validator(mode="after")
    def _check(self):
        clean = not any(field.div3 for field in self.class_data)
        complete = len(self.class_data) == 6
        if self.nonexistent != (self.congruence_pass and clean and complete):
            raise ValueError(f"inconsistent verdict for N={self.candidate.N}")
        return self

    @property
    def failing_field(self) -> Optional[int]:
        return next((field.m for field in self.class_data if field.div3), None)

    @property
    def h_values(self) -> Dict[int, int]:
        return {field.m: field.h_value for field in self.class_data}


Subcommand = Literal[
    "table1",
    "table2",
    "candidates",
    "classnum",
    "curve",
    "dioph",
    "obstruct",
    "hl",
    "almost-prime",
    "setzer-primes",
]


class RunConfig(BaseModel):
    subcommand: Subcommand
    limit: Optional[int] = Field(default=None, ge=0)
    bound: Optional[int] = Field(default=None, ge=1)
    max_conductor: Optional[int] = Field(default=None, ge=1)
    m: Optional[int] = None
    a: Optional[int] = None
    b: Optional[int] = None
    n: Optional[int] = None
    p: Optional[int] = None
    q: Optional[int] = None
    eq: Optional[str] = None
    a_max: Optional[int] = Field(default=None, ge=1)
    b_max: Optional[int] = Field(default=None, ge=1)
    big_a_max: Optional[int] = Field(default=None, ge=1)
    prime_limit: Optional[int] = Field(default=None, ge=3)
    x: Optional[int] = Field(default=None, ge=3)
    workers: int = Field(default=1, ge=1)
    output_path: Optional[str] = None
    format: Literal["csv", "json", "table"] = "csv"

    @field_validator("eq")
    @classmethod
    def _check_eq(cls, eq):
        if eq is not None and eq != "all" and eq not in {str(i) for i in range(1, 8)}:
            raise ValueError(f"--eq must be 1..7 or all, got {eq}")
        return eq

    @model_validator(mode="after")
    def _check_primes(self):
        from pqconductor.arith import is_prime

        if self.p is None and self.q is None:
            return self
        for name, value in (("p", self.p), ("q", self.q)):
            if value is None or value % 2 == 0 or not is_prime(value):
                raise ValueError(f"--{name} must be an odd prime, got {value}")
        if self.p == self.q:
            raise ValueError("--p and --q must be distinct")
        return self

    @model_validator(mode="after")
    def _check_limit(self):
        if self.subcommand in ("table2", "candidates") and self.limit is not None and self.limit < 1:
            raise ValueError(f"--limit must be at least 1, got {self.limit}")
        return self

    @model_validator(mode="after")
    def _check_radicand(self):
        from pqconductor.arith import is_squarefree

        if self.m is not None and (self.m in (0, 1) or not is_squarefree(self.m)):
            raise ValueError(f"-m must be squarefree and not 0 or 1, got {self.m}")
        return self

    @model_validator(mode="after")
    def _check_admissible(self):
        from pqconductor.curves import family_admissible

        if self.subcommand not in ("hl", "almost-prime") or self.a is None or self.b is None:
            return self
        if not family_admissible(self.a, self.b):
            raise ValueError(
                f"(a, b) = ({self.a}, {self.b}) needs a^2 - 3b not a square "
                "and not both divisible by 3"
            )
        return self
