"""Class numbers of quadratic fields from binary quadratic forms.

Imaginary fields: count primitive reduced positive definite forms.
Real fields: count cycles of reduced indefinite forms under the reduction
step, which gives the narrow class number. Only divisibility by 3 is needed
downstream and the narrow and wide class numbers differ by a factor 1 or 2,
so no regulator is ever required on the main path.
"""

import logging
import math
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from pqconductor.arith import is_perfect_square, is_squarefree, kronecker_vector
from pqconductor.constants import REFERENCE_ENUMERATION_LIMIT
from pqconductor.errors import CrossCheckError, InvalidInputError
from pqconductor.schema import FieldClassData, QuadForm

logger = logging.getLogger(__name__)

Form = Tuple[int, int, int]


def fundamental_discriminant(m: int) -> int:
    if m in (0, 1) or not is_squarefree(m):
        raise InvalidInputError(f"{m} is not a squarefree radicand other than 0, 1")
    return m if m % 4 == 1 else 4 * m


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def _require_fundamental(D: int, negative: bool) -> None:
    if (D < 0) != negative or not is_fundamental_discriminant(D):
        kind = "negative" if negative else "positive"
        raise InvalidInputError(f"{D} is not a {kind} fundamental discriminant")


def _imaginary_forms(D: int) -> List[Form]:
    forms = []
    b_max = math.isqrt(-D // 3)
    for b in range(D % 2, b_max + 1, 2):
        m = (b * b - D) // 4
        for a in range(max(b, 1), math.isqrt(m) + 1):
            if m % a:
                continue
            c = m // a
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            forms.append((a, b, c))
            if 0 < b < a < c:
                forms.append((a, -b, c))
    return forms


def reduced_forms_imaginary(D: int) -> List[QuadForm]:
    _require_fundamental(D, negative=True)
    return [QuadForm(a=a, b=b, c=c) for a, b, c in sorted(_imaginary_forms(D))]


def _count_imaginary_vectorised(D: int) -> int:
    count = 0
    b_max = math.isqrt(-D // 3)
    for b in range(D % 2, b_max + 1, 2):
        m = (b * b - D) // 4
        a = np.arange(max(b, 1), math.isqrt(m) + 1, dtype=np.int64)
        a = a[m % a == 0]
        if a.size == 0:
            continue
        c = m // a
        keep = np.gcd(np.gcd(a, b), c) == 1
        a, c = a[keep], c[keep]
        # (a, b, c) and (a, -b, c) are both reduced unless b = 0, b = a or a = c
        single = (b == 0) | (a == b) | (a == c)
        count += int(np.where(single, 1, 2).sum())
    return count


@lru_cache(maxsize=4096)
def class_number_imaginary(D: int) -> int:
    _require_fundamental(D, negative=True)
    if -D <= REFERENCE_ENUMERATION_LIMIT:
        return len(_imaginary_forms(D))
    return _count_imaginary_vectorised(D)


def _real_forms(D: int) -> List[Form]:
    s = math.isqrt(D)
    forms = []
    for b in range(2 - D % 2, s + 1, 2):
        m = (D - b * b) // 4
        # sqrt(D) - b < 2|a| < sqrt(D) + b
        low = max(1, (s + 2 - b) // 2)
        high = (s + b) // 2
        for a in range(low, high + 1):
            if m % a == 0:
                c = m // a
                if math.gcd(math.gcd(a, b), c) == 1:
                    forms.append((a, b, -c))
                    forms.append((-a, b, c))
    return forms


def _real_forms_vectorised(D: int) -> List[Form]:
    s = math.isqrt(D)
    forms = []
    for b in range(2 - D % 2, s + 1, 2):
        m = (D - b * b) // 4
        a = np.arange(max(1, (s + 2 - b) // 2), (s + b) // 2 + 1, dtype=np.int64)
        a = a[m % a == 0]
        if a.size == 0:
            continue
        c = m // a
        keep = np.gcd(np.gcd(a, b), c) == 1
        for a_i, c_i in zip(a[keep].tolist(), c[keep].tolist()):
            forms.append((a_i, b, -c_i))
            forms.append((-a_i, b, c_i))
    return forms


def _rho(form: Form, D: int, s: int) -> Form:
    _, b, c = form
    two_c = 2 * abs(c)
    # r = -b mod 2|c| with sqrt(D) - 2|c| < r < sqrt(D)
    r = s - (s + b) % two_c
    return (c, r, (r * r - D) // (4 * c))


def reduction_step(form: QuadForm, D: int) -> QuadForm:
    if form.discriminant != D:
        raise InvalidInputError(f"{form} does not have discriminant {D}")
    a, b, c = _rho(form.as_tuple(), D, math.isqrt(D))
    return QuadForm(a=a, b=b, c=c)


def reduced_forms_real(D: int) -> List[QuadForm]:
    _require_fundamental(D, negative=False)
    return [QuadForm(a=a, b=b, c=c) for a, b, c in sorted(_real_forms(D))]


def _cycles(D: int) -> List[List[Form]]:
    forms = _real_forms(D) if D <= REFERENCE_ENUMERATION_LIMIT else _real_forms_vectorised(D)
    s = math.isqrt(D)
    remaining = set(forms)
    cycles = []
    for start in sorted(forms):
        if start not in remaining:
            continue
        cycle = [start]
        remaining.discard(start)
        form = _rho(start, D, s)
        while form != start:
            if form not in remaining:
                raise CrossCheckError(f"reduction step left the reduced set at {form}, D={D}")
            remaining.discard(form)
            cycle.append(form)
            form = _rho(form, D, s)
        cycles.append(cycle)
    return cycles


def form_cycles(D: int) -> List[List[QuadForm]]:
    _require_fundamental(D, negative=False)
    if is_perfect_square(D):
        raise InvalidInputError(f"{D} is a square")
    return [[QuadForm(a=a, b=b, c=c) for a, b, c in cycle] for cycle in _cycles(D)]


@lru_cache(maxsize=4096)
def narrow_class_number_real(D: int) -> int:
    _require_fundamental(D, negative=False)
    if is_perfect_square(D):
        raise InvalidInputError(f"{D} is a square")
    return len(_cycles(D))


def _fundamental_unit(D: int) -> Tuple[int, int, int]:
    """(x, y, norm) with epsilon = (x + y sqrt(D)) / 2 the fundamental unit.

    Continued fraction of (1 + sqrt(D)) / 2 when D = 1 mod 4 and of sqrt(D/4)
    otherwise; the first return of Q to its starting value gives the unit.
    """
    if D % 4 == 1:
        d, P, Q = D, 1, 2
    else:
        d, P, Q = D // 4, 0, 1
    Q0 = Q
    s = math.isqrt(d)
    G_prev, G = -P, Q
    B_prev, B = 1, 0
    while True:
        a = (P + s) // Q
        G_prev, G = G, a * G + G_prev
        B_prev, B = B, a * B + B_prev
        P = a * Q - P
        Q = (d - P * P) // Q
        if Q == Q0:
            break
    norm = G * G - d * B * B
    if D % 4 == 1:
        return G, B, norm // 4
    return 2 * G, B, norm


def _log_unit(D: int, x: int, y: int) -> float:
    if x.bit_length() < 900:
        return math.log((x + y * math.sqrt(D)) / 2)
    # epsilon + epsilon' = x and |epsilon'| < 1
    return math.log(x)


@lru_cache(maxsize=4096)
def class_number_analytic(D: int) -> Tuple[int, int]:
    """(h, h_plus) from the class number formula; used for cross-checks."""
    if not is_fundamental_discriminant(D):
        raise InvalidInputError(f"{D} is not a fundamental discriminant")
    size = abs(D)
    ks = np.arange(1, size, dtype=np.int64)
    chi = kronecker_vector(D, ks)
    if D < 0:
        w = {-3: 6, -4: 4}.get(D, 2)
        total = -w * int((chi * ks).sum())
        if total % (2 * size):
            raise CrossCheckError(f"character sum for D={D} is not divisible by 2|D|")
        h = total // (2 * size)
        return h, h
    x, y, norm = _fundamental_unit(D)
    regulator = _log_unit(D, x, y)
    log_sines = np.log(np.sin(np.pi * ks / D))
    value = -0.5 * float((chi * log_sines).sum()) / regulator
    h = round(value)
    if h < 1 or abs(value - h) > 1e-3:
        raise CrossCheckError(f"analytic class number for D={D} came out as {value}")
    return h, 2 * h if norm == 1 else h


def field_class_data(m: int) -> FieldClassData:
    D = fundamental_discriminant(m)
    h_value = class_number_imaginary(D) if D < 0 else narrow_class_number_real(D)
    logger.debug(f"Q(sqrt({m})): D={D}, h={h_value}")
    return FieldClassData(m=m, D=D, h_value=h_value, div3=h_value % 3 == 0)


def h_divisible_by_3(m: int) -> bool:
    if m in (1, -1):
        return False
    return field_class_data(m).div3
