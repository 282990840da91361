"""Exact rational helpers: "p/q" formatting and command-line list parsing"""

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from wflag.exceptions import InputValidationError

Rational = Union[int, Fraction]


def to_fraction(value: Union[int, str, Fraction]) -> Fraction:
    """Convert an int, Fraction or "p/q" string to a Fraction"""
    if isinstance(value, Fraction):
        return value
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise InputValidationError(f"Not an exact rational: {value!r}") from e


def format_rational(value: Rational) -> str:
    """Serialize as "p/q" (always with a denominator, never a float)"""
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


def pretty_rational(value: Rational) -> str:
    """Human-readable form: integers without denominator"""
    q = Fraction(value)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_int_list(text: str, name: str = "value") -> Tuple[int, ...]:
    """Parse "1,0,0" into (1, 0, 0)"""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as e:
        raise InputValidationError(f"Invalid {name} list {text!r}: expected integers like 1,0,0") from e


def format_vector(coords: Sequence[Rational]) -> str:
    """Render a coordinate vector as (a,b,c)"""
    return "(" + ",".join(pretty_rational(c) for c in coords) + ")"


def format_multiset(weights: Iterable[int]) -> str:
    """Render a weight multiset as 1^5,2^4,3^5"""
    counts = {}
    for w in weights:
        counts[w] = counts.get(w, 0) + 1
    return ",".join(f"{w}^{n}" if n > 1 else f"{w}" for w, n in sorted(counts.items()))


def format_numerator(pairs: List[Tuple[int, Rational]]) -> str:
    """Render sparse (exponent, coefficient) pairs as 1-21t^2+64t^3..."""
    if not pairs:
        return "0"
    out = []
    for i, (e, c) in enumerate(pairs):
        q = Fraction(c)
        sign = "-" if q < 0 else ("+" if i else "")
        mag = abs(q)
        if e == 0:
            body = pretty_rational(mag)
        else:
            coeff = "" if mag == 1 else pretty_rational(mag)
            body = f"{coeff}t" if e == 1 else f"{coeff}t^{e}"
        out.append(f"{sign}{body}")
    return "".join(out)
