"""Exact coefficient fields: the rationals and prime fields F_p.

Every computation in this package is exact; there is no floating point
anywhere.  Rational scalars are `fractions.Fraction`, prime-field scalars
are ints reduced mod p.  Field objects bundle the arithmetic so that the
rest of the code never needs to know which representation is in play.
"""

from fractions import Fraction


class RationalField:
    """The field Q; scalars are Fraction instances."""

    name = "Q"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise ValueError(f"cannot coerce {x!r} into Q")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def parse(self, token):
        try:
            return Fraction(token)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational scalar {token!r}") from exc

    def format(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """The field F_p for a prime p; scalars are ints in [0, p)."""

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        if isinstance(x, str):
            return self.parse(x)
        raise ValueError(f"cannot coerce {x!r} into F{self.p}")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in F{self.p}")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def parse(self, token):
        try:
            if "/" in token:
                num, den = token.split("/")
                return self.coerce(Fraction(int(num), int(den)))
            return int(token) % self.p
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed F{self.p} scalar {token!r}") from exc

    def format(self, a):
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"F{self.p}"


QQ = RationalField()


def field_from_name(name):
    """Parse a field descriptor: 'Q' or 'F<p>' (e.g. 'F5')."""
    if name == "Q":
        return QQ
    if name.startswith("F") and name[1:].isdigit():
        return PrimeField(int(name[1:]))
    raise ValueError(f"unknown field descriptor {name!r}")


def solve_linear(rows, rhs, field):
    """Solve M x = rhs exactly over the field; rows is a list of lists.

    Returns a solution vector with free variables set to zero, or None if
    the system is inconsistent.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    aug = [[field.coerce(v) for v in row] + [field.coerce(rhs[i])]
           for i, row in enumerate(rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if not field.is_zero(aug[i][c])), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = field.inv(aug[r][c])
        aug[r] = [field.mul(inv, v) for v in aug[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(aug[i][c]):
                f = aug[i][c]
                aug[i] = [field.sub(aug[i][j], field.mul(f, aug[r][j]))
                          for j in range(ncols + 1)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if not field.is_zero(aug[i][ncols]):
            return None
    x = [field.zero] * ncols
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncols]
    return x


def invert_matrix(rows, field):
    """Exact Gauss-Jordan inverse of a square matrix, or None if singular."""
    n = len(rows)
    if any(len(row) != n for row in rows):
        return None
    a = [[field.coerce(v) for v in row] for row in rows]
    inv = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if not field.is_zero(a[i][c])), None)
        if pivot is None:
            return None
        a[c], a[pivot] = a[pivot], a[c]
        inv[c], inv[pivot] = inv[pivot], inv[c]
        f = field.inv(a[c][c])
        a[c] = [field.mul(f, v) for v in a[c]]
        inv[c] = [field.mul(f, v) for v in inv[c]]
        for i in range(n):
            if i != c and not field.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [field.sub(a[i][j], field.mul(f, a[c][j])) for j in range(n)]
                inv[i] = [field.sub(inv[i][j], field.mul(f, inv[c][j])) for j in range(n)]
    return inv
