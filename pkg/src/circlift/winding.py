"""Winding-number detection and reduction for integer cocycles.

A cocycle whose class is w times a generator wraps the circle w times, and w
divides its Kronecker pairing with any integer cycle. Reduction factors the
pairing, and for each prime factor q repeatedly checks whether the class
dies mod q; while it does, the cocycle splits as q * gamma + an integer
coboundary, and gamma carries the class with one factor of q removed. What
remains when no candidate prime divides out is a winding-1 representative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import snf
from .complexes import (Chain, Cochain, ZZ, apply_boundary, apply_coboundary,
                        kronecker_pairing)
from .errors import NotACocycle, NotDivisible, ValidationFailed, ZeroPairing
from .fields import is_prime, lift_mod
from .fplinalg import solve_mod
from .lifting import DEFAULT_SNF_CAP

ROUTE_MOD_P = "ModPSolve"
ROUTE_SNF = "IntegerSnf"


@dataclass(frozen=True)
class DivideStep:
    """One exact division alpha = q * gamma + delta(potential)."""

    gamma: Cochain
    potential: Cochain
    route: str
    prop_range_certified: bool


@dataclass(frozen=True)
class WindingReport:
    """Full audit trail of a winding reduction."""

    pairing: int
    candidate_primes: tuple[int, ...]
    division_trace: tuple[tuple[int, int, str], ...]
    winding_number: int
    reduced_cocycle: Cochain
    coboundary_witness: Cochain

    def to_json_dict(self) -> dict:
        return {
            "pairing": str(self.pairing),
            "candidate_primes": list(self.candidate_primes),
            "division_trace": [
                {"prime": q, "times_divided": t, "route": route}
                for q, t, route in self.division_trace
            ],
            "winding_number": str(self.winding_number),
            "reduced_cocycle": self.reduced_cocycle.to_json_dict(),
            "coboundary_witness": self.coboundary_witness.to_json_dict(),
        }


def _require_integer_cocycle(alpha: Cochain, operation: str) -> None:
    if alpha.ring is not ZZ:
        raise ValueError("expected integer coefficients")
    if not apply_coboundary(alpha).is_zero():
        raise NotACocycle("input cochain is not a cocycle over Z", operation=operation)


def class_vanishes_mod(alpha: Cochain, q: int) -> bool:
    """Whether the class of an integer cocycle dies in F_q cohomology,
    i.e. alpha mod q is a coboundary over F_q."""
    _require_integer_cocycle(alpha, "winding.class_vanishes_mod")
    m = alpha.dim
    if m == 0:
        return all(v % q == 0 for v in alpha.entries.values())
    cx = alpha.complex
    A = cx.coboundary_matrix(m - 1, ZZ).to_numpy_mod(q)
    b = np.zeros(cx.n_simplices(m), dtype=np.int64)
    for i, v in alpha.entries.items():
        b[i] = v % q
    return solve_mod(A, b, q) is not None


def candidate_primes(pairing: int) -> list[int]:
    """Distinct prime factors of |pairing|, ascending, by trial division."""
    if pairing == 0:
        raise ZeroPairing("pairing is zero; pick a different cycle",
                          operation="winding.candidate_primes")
    n = abs(pairing)
    out: list[int] = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _range_conditions_hold(deltaf: Cochain, qgamma_max: int,
                           p_work: int, m: int) -> bool:
    """Coefficient-range certificate: q*gamma and delta(f) inside the
    certified lifting range for p_work."""
    bound = (p_work - 1) // (m + 2)
    if qgamma_max > bound:
        return False
    return all(abs(v) <= bound for v in deltaf.entries.values())


def _auto_p_work(q: int, coeff_bound: int) -> int:
    p = max(q, 2 * coeff_bound, 2) + 1
    while not is_prime(p) or p == q:
        p += 1
    return p


def divide_step(alpha: Cochain, q: int, p_work: int | None = None, *,
                route: str = "auto", snf_cap: int = DEFAULT_SNF_CAP,
                max_retries: int = 16) -> DivideStep:
    """Split alpha = q * gamma + delta(f) exactly over Z.

    Primary route: solve delta(f) = alpha mod q over F_q with free variables
    at zero and lift f coefficient-wise; alpha - delta(f) is then divisible
    by q entry-by-entry and gamma is the exact quotient. The result is
    verified directly over Z (and additionally flagged when the
    coefficient-range certificate for p_work holds). Fallback: one integer
    solve of the combined system via Smith normal form.
    """
    _require_integer_cocycle(alpha, "winding.divide_step")
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if p_work is not None and (not is_prime(p_work) or p_work <= q):
        raise ValueError("p_work must be a prime larger than q")
    cx = alpha.complex
    m = alpha.dim
    if m < 1:
        raise ValueError("degree must be >= 1")
    n_m = cx.n_simplices(m)
    n_below = cx.n_simplices(m - 1)
    A = cx.coboundary_matrix(m - 1, ZZ)

    b = np.zeros(n_m, dtype=np.int64)
    for i, v in alpha.entries.items():
        b[i] = v % q

    if route in ("auto", "modp"):
        A_mod = A.to_numpy_mod(q)
        rng = np.random.default_rng(0)
        for attempt in range(max_retries + 1):
            free = None if attempt == 0 else rng.integers(0, q, size=n_below)
            sol = solve_mod(A_mod, b, q, free_values=free)
            if sol is None:
                raise NotDivisible(f"class does not vanish mod {q}",
                                   operation="winding.divide_step")
            f = Cochain(cx, m - 1, ZZ,
                        {i: lift_mod(int(v), q) for i, v in enumerate(sol)})
            deltaf = apply_coboundary(f)
            residue = alpha - deltaf
            if all(v % q == 0 for v in residue.entries.values()):
                gamma = residue.map_coefficients(lambda v: v // q, ZZ)
                assert (gamma.scale(q) + deltaf == alpha), "division identity broken"
                p_eff = p_work or _auto_p_work(q, max(int(gamma.max_abs()) * q,
                                                      int(deltaf.max_abs())))
                certified = _range_conditions_hold(deltaf, int(gamma.max_abs()) * q,
                                                   p_eff, m)
                return DivideStep(gamma, f, ROUTE_MOD_P, certified)
        if route == "modp":
            raise ValidationFailed("mod-q route failed on every assignment",
                                   operation="winding.divide_step")

    # integer route: solve [delta | q I] (f, gamma) = alpha exactly
    if n_below + 2 * n_m > snf_cap:
        raise ValidationFailed(
            f"SNF fallback refused: {n_below + 2 * n_m} > cap {snf_cap}",
            operation="winding.divide_step")
    rows = snf.sparse_to_rows(A)
    for i in range(n_m):
        rows[i].extend(q if k == i else 0 for k in range(n_m))
    rhs = [0] * n_m
    for i, v in alpha.entries.items():
        rhs[i] = int(v)
    sol = snf.solve_integer(rows, rhs)
    if sol is None:
        raise NotDivisible(f"class does not vanish mod {q}",
                           operation="winding.divide_step")
    f = Cochain(cx, m - 1, ZZ, {i: sol[i] for i in range(n_below)})
    gamma = Cochain(cx, m, ZZ, {i: sol[n_below + i] for i in range(n_m)})
    assert gamma.scale(q) + apply_coboundary(f) == alpha, "division identity broken"
    return DivideStep(gamma, f, ROUTE_SNF, False)


def reduce_winding(alpha: Cochain, beta: Chain, p_work: int | None = None, *,
                   route: str = "auto", snf_cap: int = DEFAULT_SNF_CAP) -> WindingReport:
    """Reduce an integer cocycle to a winding-1 representative.

    Factors the Kronecker pairing with beta, divides out each candidate
    prime while the class keeps vanishing mod it, and returns the full
    division trace. The output satisfies
    alpha = winding_number * reduced + delta(witness) exactly.
    """
    _require_integer_cocycle(alpha, "winding.reduce_winding")
    if beta.dim > 0 and not apply_boundary(beta).is_zero():
        raise ValueError("beta must be an integer cycle")
    pairing = kronecker_pairing(alpha, beta)
    primes = candidate_primes(pairing)

    current = alpha
    omega = 1
    witness = Cochain(alpha.complex, alpha.dim - 1, ZZ, {})
    trace: list[tuple[int, int, str]] = []
    remaining = abs(pairing)
    for q in primes:
        times = 0
        max_times = 0
        r = remaining
        while r % q == 0:
            max_times += 1
            r //= q
        while class_vanishes_mod(current, q):
            if times >= max_times:
                raise AssertionError(
                    f"division by {q} exceeded the pairing bound {max_times}")
            step = divide_step(current, q, p_work, route=route, snf_cap=snf_cap)
            witness = witness + step.potential.scale(omega)
            omega *= q
            current = step.gamma
            times += 1
            trace.append((q, times, step.route))
        if times:
            remaining //= q ** times
    # collapse per-prime entries to (prime, total divisions, last route)
    collapsed: dict[int, tuple[int, str]] = {}
    for q, times, rt in trace:
        collapsed[q] = (times, rt)
    final_trace = tuple((q, t, rt) for q, (t, rt) in sorted(collapsed.items()))

    for q in primes:
        assert not class_vanishes_mod(current, q), \
            f"reduced class still vanishes mod {q}"
    assert current.scale(omega) + apply_coboundary(witness) == alpha, \
        "winding decomposition identity broken"
    return WindingReport(
        pairing=pairing,
        candidate_primes=tuple(primes),
        division_trace=final_trace,
        winding_number=omega,
        reduced_cocycle=current,
        coboundary_witness=witness,
    )
