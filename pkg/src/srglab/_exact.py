from decimal import Decimal, localcontext
from fractions import Fraction


def exact(x) -> Fraction:
    """Fraction from int/Fraction/str, or from a float read as its shortest decimal.

    ``exact(0.3) == Fraction(3, 10)``, so parameters typed as decimals behave
    as the decimals they look like.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def render(x, digits: int = 12) -> str:
    """Decimal string of an exact rational, rounded to ``digits`` significant digits."""
    x = Fraction(x)
    if x == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        dec = Decimal(x.numerator) / Decimal(x.denominator)
    return format(dec, "f")
