"""Exhaustive and randomized sweeps running the lemma oracles over
generated instances. Each sweep returns a ``SweepReport`` with counts of
checked instances, instances skipped because the hypotheses failed, and
any counterexamples."""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .oracles import (ModuleAction, PreconditionError, general_linear_group,
                      mat_identity, mat_mul, mat_order, matrix_group_elements,
                      matrix_to_perm, oracle_fpf_section, oracle_lemma82,
                      oracle_partition_lemma, oracle_thm52, subgroup_partitions,
                      automorphism_order, fixes_nontrivial_coset)
from .perm import (Group, Perm, affine_group, affine_map, all_subgroups, closure,
                   direct_product, invariant_subnormal_series, is_subnormal,
                   normal_closure, symmetric_group)

DEFAULT_SECTION_ORDER = 24
DEFAULT_CLOSURE_ORDER = 48
DEFAULT_MODULE_INSTANCES = 60


@dataclass
class SweepReport:
    name: str
    checked: int = 0
    skipped: int = 0
    counterexamples: list = field(default_factory=list)
    seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def merge(self, other: "SweepReport") -> None:
        self.checked += other.checked
        self.skipped += other.skipped
        self.counterexamples += other.counterexamples
        for k, v in other.notes.items():
            self.notes[k] = self.notes.get(k, 0) + v

    def to_json(self) -> dict:
        return {"name": self.name, "checked": self.checked, "skipped": self.skipped,
                "counterexamples": list(self.counterexamples),
                "seconds": round(self.seconds, 3), "notes": dict(self.notes)}

    def __str__(self):
        status = "ok" if self.ok else f"{len(self.counterexamples)} COUNTEREXAMPLES"
        return (f"{self.name}: {self.checked} checked, {self.skipped} skipped, "
                f"{status} ({self.seconds:.1f}s)")


# --- ambient groups ---------------------------------------------------------------

def _s3xs3() -> Group:
    S3 = symmetric_group(3)
    return direct_product(S3, S3)


AMBIENTS = {
    "S4": lambda: symmetric_group(4),
    "S5": lambda: symmetric_group(5),
    "AGL(1,5)": lambda: affine_group(5),
    "AGL(1,7)": lambda: affine_group(7),
    "Hol(C8)": lambda: affine_group(8),
    "Hol(C9)": lambda: affine_group(9),
    "Hol(C10)": lambda: affine_group(10),
    "Hol(C12)": lambda: affine_group(12),
    "S3xS3": _s3xs3,
    "AGL(1,11)": lambda: affine_group(11),
    "AGL(1,13)": lambda: affine_group(13),
    "Hol(C15)": lambda: affine_group(15),
    "Hol(C21)": lambda: affine_group(21),
    # large primes: only the affine maps with multiplier of order dividing 6
    "D17": lambda: affine_group(17, [1, 16]),
    "C19:C6": lambda: affine_group(19, [1, 7, 8, 11, 12, 18]),
    "D23": lambda: affine_group(23, [1, 22]),
}


def _subgroups_upto(G: Group, max_order: int) -> list[Group]:
    return all_subgroups(G, max_order)


# --- partition lemma -----------------------------------------------------------------

def _v4_instances():
    V4 = closure([Perm.parse("(0 1)", 4), Perm.parse("(2 3)", 4)])
    a, b = Perm.parse("(0 1)", 4), Perm.parse("(2 3)", 4)
    I = mat_identity(2)
    invols = [A for A in general_linear_group(3, 2) if mat_mul(A, A, 3) == I]
    for A in invols:
        for B in invols:
            if mat_mul(A, B, 3) == mat_mul(B, A, 3):
                yield V4, ModuleAction(V4, 3, 2, {a: A, b: B})


def _f21_instances():
    t, m = affine_map(1, 1, 7), affine_map(2, 0, 7)
    F21 = closure([t, m])
    I = mat_identity(3)
    gl = general_linear_group(2, 3)
    sevens = [A for A in gl if A == I or mat_order(A, 2) == 7]
    threes = [B for B in gl if B == I or mat_order(B, 2) == 3]
    for A in sevens:
        A2 = mat_mul(A, A, 2)
        for B in threes:
            # m t m^-1 = t^2
            if mat_mul(B, A, 2) == mat_mul(A2, B, 2):
                yield F21, ModuleAction(F21, 2, 3, {t: A, m: B})


def sweep_partition_lemma() -> SweepReport:
    rep = SweepReport("partition lemma")
    t0 = time.perf_counter()
    for label, gen in (("C2xC2 on F_3^2", _v4_instances), ("F21 on F_2^3", _f21_instances)):
        parts_cache = {}
        actions = 0
        for G, action in gen():
            actions += 1
            parts = parts_cache.setdefault(G, subgroup_partitions(G))
            for P in parts:
                try:
                    ok = oracle_partition_lemma(G, P, action)
                except PreconditionError:
                    rep.skipped += 1
                    continue
                rep.checked += 1
                if not ok:
                    rep.counterexamples.append(f"{label}: partition sizes {[H.order for H in P]}")
        rep.notes[f"actions {label}"] = actions
    rep.seconds = time.perf_counter() - t0
    return rep


# --- subnormality and fixed-point-free sections --------------------------------------

def _section_sweep_one(name: str, max_order: int, primes: tuple) -> SweepReport:
    rep = SweepReport(f"sections {name}")
    A = AMBIENTS[name]()
    subs = _subgroups_upto(A, max_order)
    sub_cache: dict = {}
    seen: set = set()
    for N in subs:
        for sigma in sorted(A.elements):
            if not N.normalizes(sigma):
                continue
            try:
                p = automorphism_order(sigma, N)
            except Exception:
                continue
            if p not in primes:
                continue
            key = (N.elements, frozenset((h, sigma.conj(h)) for h in N.gens))
            if key in seen:
                continue
            seen.add(key)
            inside = sub_cache.get(N.elements)
            if inside is None:
                inside = sub_cache[N.elements] = [H for H in subs if H.is_subgroup_of(N)]
            for M in inside:
                if not M.normalizes(sigma) or not is_subnormal(M, N):
                    continue
                series = invariant_subnormal_series(M, N, [sigma])
                if any(fixes_nontrivial_coset(sigma, Y, X) for X, Y in zip(series, series[1:])):
                    rep.skipped += 1
                    continue
                between = [R for R in inside if M.is_subgroup_of(R)]
                invariant = [R for R in between if R.normalizes(sigma)]
                for R in (between if p == 2 else invariant):
                    rep.checked += 1
                    rep.notes["subnormal checks"] = rep.notes.get("subnormal checks", 0) + 1
                    if not oracle_thm52(N, M, sigma, R, series):
                        rep.counterexamples.append(
                            f"{name}: |N|={N.order} |M|={M.order} |R|={R.order} sigma={sigma}")
                for R in invariant:
                    for S in invariant:
                        if M.is_subgroup_of(S) and S.is_subgroup_of(R) and S.is_normal_in(R):
                            rep.checked += 1
                            rep.notes["section checks"] = rep.notes.get("section checks", 0) + 1
                            if not oracle_fpf_section(N, M, sigma, R, S, series):
                                rep.counterexamples.append(
                                    f"{name}: section |R|={R.order} |S|={S.order} sigma={sigma}")
            rep.notes[f"order-{p} data"] = rep.notes.get(f"order-{p} data", 0) + 1
    return rep


def sweep_sections(max_order: int = DEFAULT_SECTION_ORDER, primes: tuple = (2, 3),
                   ambients=None, workers: int = 1) -> SweepReport:
    """Subnormality of intermediate subgroups and fixed-point-freeness on
    sections, for every subgroup N (order <= max_order) of the ambient
    groups and every ambient element inducing an automorphism of N of
    order in ``primes``."""
    t0 = time.perf_counter()
    names = list(ambients or AMBIENTS)
    rep = SweepReport("subnormal intermediates and sections")
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_section_sweep_one, names, [max_order] * len(names),
                                [tuple(primes)] * len(names)))
    else:
        parts = [_section_sweep_one(n, max_order, tuple(primes)) for n in names]
    for part in parts:
        rep.merge(part)
    rep.seconds = time.perf_counter() - t0
    return rep


# --- normal closures -------------------------------------------------------------------

def _subnormal_by_chains(M: Group, N: Group, subs: list[Group]) -> bool:
    """Independent subnormality test: search downward through normal subgroups."""
    frontier, seen = [N], {N.elements}
    while frontier:
        nxt = []
        for H in frontier:
            if H == M:
                return True
            for K in subs:
                if (K.elements not in seen and M.is_subgroup_of(K) and K.order < H.order
                        and K.is_normal_in(H)):
                    seen.add(K.elements)
                    nxt.append(K)
        frontier = nxt
    return False


def sweep_normal_closure(max_order: int = DEFAULT_CLOSURE_ORDER, ambients=None) -> SweepReport:
    rep = SweepReport("normal closure minimality")
    t0 = time.perf_counter()
    seen: set = set()
    for name in ambients or ("S4", "AGL(1,5)", "AGL(1,7)", "Hol(C8)", "Hol(C9)", "S3xS3"):
        A = AMBIENTS[name]()
        subs = _subgroups_upto(A, max_order)
        for N in subs:
            if N.elements in seen:
                continue
            seen.add(N.elements)
            inside = [H for H in subs if H.is_subgroup_of(N)]
            normals = [H for H in inside if H.is_normal_in(N)]
            for M in inside:
                rep.checked += 1
                C = normal_closure(M, N)
                expect = N.elements
                for K in normals:
                    if M.is_subgroup_of(K):
                        expect = expect & K.elements
                if not (C.is_normal_in(N) and M.is_subgroup_of(C) and C.elements == expect):
                    rep.counterexamples.append(f"{name}: |N|={N.order} |M|={M.order}")
                if is_subnormal(M, N) != _subnormal_by_chains(M, N, inside):
                    rep.counterexamples.append(f"{name}: subnormality disagrees |N|={N.order} |M|={M.order}")
    rep.seconds = time.perf_counter() - t0
    return rep


# --- modules in characteristic p -------------------------------------------------------

def _random_matrix(rng: random.Random, p: int, k: int):
    from .oracles import mat_det
    while True:
        A = tuple(tuple(rng.randrange(p) for _ in range(k)) for _ in range(k))
        if mat_det(A, p):
            return A


def _p_element(rng: random.Random, p: int, k: int):
    """A random element of p-power order, as a conjugate of a unitriangular matrix."""
    T = [[int(i == j) for j in range(k)] for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            T[i][j] = rng.randrange(p)
    T = tuple(map(tuple, T))
    P = _random_matrix(rng, p, k)
    Pinv = _inverse_matrix(P, p)
    return mat_mul(mat_mul(P, T, p), Pinv, p)


def _inverse_matrix(A, p):
    k = len(A)
    M = [list(r) + [int(i == j) for j in range(k)] for i, r in enumerate(A)]
    for c in range(k):
        piv = next(r for r in range(c, k) if M[r][c] % p)
        M[c], M[piv] = M[piv], M[c]
        inv = pow(M[c][c], -1, p)
        M[c] = [x * inv % p for x in M[c]]
        for r in range(k):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[c])]
    return tuple(tuple(r[k:]) for r in M)


def lemma82_instances(count: int = DEFAULT_MODULE_INSTANCES, seed: int = 0):
    """Seeded instances (V, U, p, generator matrices, k).

    Half of them take U to be a scalar group and V generated by U and
    elements of p-power order (so the index and composition-factor
    hypotheses hold by design); the rest use random matrix groups with U
    generated by a random subset of V.
    """
    rng = random.Random(seed)
    made = 0
    while made < count:
        p = rng.choice((2, 3, 5, 7))
        kmax = {2: 4, 3: 3, 5: 2, 7: 2}[p]
        k = rng.randint(1, kmax)
        scalar_family = made % 2 == 0
        if scalar_family:
            lam = rng.randrange(1, p)
            ugens = [tuple(tuple(lam * int(i == j) for j in range(k)) for i in range(k))]
            extra = [_p_element(rng, p, k) for _ in range(rng.randint(0, 2))]
        else:
            ugens = [_random_matrix(rng, p, k)]
            extra = [_random_matrix(rng, p, k)]
        vmats = matrix_group_elements(ugens + extra, p, cap=100)
        if vmats is None:
            continue
        perm_of = {A: matrix_to_perm(A, p) for A in vmats}
        gens = {perm_of[A]: A for A in dict.fromkeys(ugens + extra)}
        V = closure(list(gens), len(next(iter(gens)).images))
        if scalar_family:
            U = closure([perm_of[A] for A in ugens], V.degree)
        else:
            pick = rng.sample(vmats, rng.randint(0, min(2, len(vmats))))
            U = closure([perm_of[A] for A in pick], V.degree)
        made += 1
        yield V, U, p, gens, k


def sweep_lemma82(count: int = DEFAULT_MODULE_INSTANCES, seed: int = 0) -> SweepReport:
    rep = SweepReport("simple modules with scalar restrictions")
    t0 = time.perf_counter()
    for V, U, p, gens, k in lemma82_instances(count, seed):
        try:
            ok = oracle_lemma82(V, U, p, gens, k)
        except PreconditionError as e:
            rep.skipped += 1
            reason = str(e).split(" ")[0:4]
            key = "skip: " + " ".join(reason)
            rep.notes[key] = rep.notes.get(key, 0) + 1
            continue
        rep.checked += 1
        rep.notes[f"valid k={k}"] = rep.notes.get(f"valid k={k}", 0) + 1
        if not ok:
            rep.counterexamples.append(f"p={p} k={k} |V|={V.order} |U|={U.order}")
    rep.seconds = time.perf_counter() - t0
    return rep


def run_all(section_order: int = DEFAULT_SECTION_ORDER, closure_order: int = DEFAULT_CLOSURE_ORDER,
            module_instances: int = DEFAULT_MODULE_INSTANCES, seed: int = 0,
            workers: int = 1) -> list[SweepReport]:
    return [
        sweep_partition_lemma(),
        sweep_sections(section_order, workers=workers),
        sweep_normal_closure(closure_order),
        sweep_lemma82(module_instances, seed),
    ]
