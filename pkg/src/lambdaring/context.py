"""Universal polynomials relating lambda-powers, sigma-powers and Adams operations.

All tables are computed on demand from the generating-function recurrences
and cached for the lifetime of the process.  The partition-sum closed forms
at the bottom of the module are independent oracles used by the test-suite.
"""

import threading
from math import factorial, prod

from .partitions import multiplicity, ordered_partitions
from .poly import AbstractVar, Poly, Q

PSI, LAM, SIG, X = "Psi", "Lam", "Sig", "X"

# family names follow the equation labels of the conversions
FAMILIES = {
    "a2l": "lambda in Adams",
    "a2s": "sigma in Adams",
    "l2a": "Adams in lambda",
    "s2a": "Adams in sigma",
    "op": "sigma in lambda (and lambda in sigma)",
}


def gen(family, k):
    return Poly.var(AbstractVar(family, k))


def abstract_vars(family, n):
    return [AbstractVar(family, k) for k in range(1, n + 1)]


class LambdaRingContext:
    """Append-only cache of the conversion polynomials."""

    def __init__(self):
        self._lock = threading.RLock()
        self._tables = {name: [Poly.one()] for name in FAMILIES}

    def _entry(self, family, n, step):
        if n < 1:
            raise ValueError(f"degree must be positive, got {n}")
        table = self._tables[family]
        if n < len(table):
            return table[n]
        with self._lock:
            while len(table) <= n:
                table.append(step(len(table)))
        return table[n]

    def lambda_in_adams(self, n):
        """``lambda^n`` as a polynomial in ``Psi1..Psin``."""
        def step(m):
            t = self._tables["a2l"]
            s = sum((gen(PSI, k) * t[m - k] for k in range(1, m + 1)), Poly.zero())
            return s.scale(Q(1, m))
        return self._entry("a2l", n, step)

    def sigma_in_adams(self, n):
        """``sigma^n`` as a polynomial in ``Psi1..Psin``."""
        def step(m):
            t = self._tables["a2s"]
            s = sum((gen(PSI, k) * t[m - k] * (1 if k % 2 else -1) for k in range(1, m + 1)), Poly.zero())
            return s.scale(Q(1, m))
        return self._entry("a2s", n, step)

    def adams_in_lambda(self, n):
        """``psi^n`` as an integral polynomial in ``Lam1..Lamn``."""
        def step(m):
            t = self._tables["l2a"]
            s = gen(LAM, m) * m
            for k in range(1, m):
                s = s - t[k] * gen(LAM, m - k)
            return s
        return self._entry("l2a", n, step)

    def adams_in_sigma(self, n):
        """``psi^n`` as an integral polynomial in ``Sig1..Sign`` (Newton's power sums)."""
        def step(m):
            t = self._tables["s2a"]
            s = gen(SIG, m) * m
            for k in range(1, m):
                s = s - t[k] * gen(SIG, m - k) * (1 if k % 2 else -1)
            return s if m % 2 else -s
        return self._entry("s2a", n, step)

    def op_transform(self, n):
        """The polynomial taking lambda-powers to sigma-powers and back, in ``X1..Xn``."""
        if n == 0:
            return Poly.one()

        def step(m):
            t = self._tables["op"]
            return sum((gen(X, i) * t[m - i] * (1 if i % 2 else -1) for i in range(1, m + 1)), Poly.zero())
        return self._entry("op", n, step)

    def adams_mixed_check(self, n):
        """``psi^n = sum_i (-1)^(n-i) i sigma^(n-i) lambda^i`` rewritten in ``Lam`` variables."""
        if n < 1:
            raise ValueError(f"degree must be positive, got {n}")
        to_lam = {AbstractVar(X, k): AbstractVar(LAM, k) for k in range(1, n + 1)}
        out = Poly.zero()
        for i in range(1, n + 1):
            sig = self.op_transform(n - i).relabel(to_lam)
            out = out + sig * gen(LAM, i) * (i if (n - i) % 2 == 0 else -i)
        return out

    def family(self, name, n):
        return {
            "a2l": self.lambda_in_adams,
            "a2s": self.sigma_in_adams,
            "l2a": self.adams_in_lambda,
            "s2a": self.adams_in_sigma,
            "op": self.op_transform,
        }[name](n)


CONTEXT = LambdaRingContext()


def get_context():
    return CONTEXT


# ---------------------------------------------------------------------------
# closed partition-sum forms (independent cross-checks)

def _z(a):
    return prod(factorial(multiplicity(a, i)) for i in set(a))


def lambda_in_adams_closed(n):
    out = Poly.zero()
    for i in range(n + 1):
        for a in ordered_partitions(n, i):
            term = Poly.one().scale(Q(1, _z(a) * prod(a)))
            for part in a:
                term = term * gen(PSI, part)
            out = out + term
    return out


def sigma_in_adams_closed(n):
    out = Poly.zero()
    for i in range(n + 1):
        sign = 1 if (i + n) % 2 == 0 else -1
        for a in ordered_partitions(n, i):
            term = Poly.one().scale(Q(sign, _z(a) * prod(a)))
            for part in a:
                term = term * gen(PSI, part)
            out = out + term
    return out


def _adams_closed(n, family):
    # the outer index runs over the number of extra factors, starting at zero
    out = Poly.zero()
    for i in range(n):
        for l in range(n):
            for a in ordered_partitions(l, i):
                coeff = (n - l) * factorial(i) // _z(a)
                term = gen(family, n - l).scale((-1) ** i * coeff)
                for part in a:
                    term = term * gen(family, part)
                out = out + term
    return out


def adams_in_lambda_closed(n):
    return _adams_closed(n, LAM)


def adams_in_sigma_closed(n):
    p = _adams_closed(n, SIG)
    return p if n % 2 else -p

