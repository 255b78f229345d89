"""Verification sweeps.

Each suite expands its bounds into independent instances. An instance check
returns ``None`` on success or a JSON-friendly witness on failure. Reports are
plain dicts with the keys ``suite``, ``instances``, ``status`` and ``witness``.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import geometry, modular, presentations
from .algebra import homomorphism_defect
from .qnum import is_prime
from .scheme import SchemeFamily, SchemeParams, rho, rho_semilattice, structure_tensor

PASS, FAIL, NA, CAP = "pass", "fail", "not-applicable", "resource-cap"

ODD_PRIMES = (3, 5, 7, 11, 13)

ORACLE_INSTANCES = (
    ("C", 1, 2), ("C", 2, 2), ("C", 2, 3), ("C", 3, 2),
    ("B", 2, 3), ("D", 2, 2), ("D", 2, 3), ("D", 3, 2),
    ("2D", 1, 2), ("2D", 2, 2),
    ("2A-even", 1, 2), ("2A-even", 1, 3),
    ("2A-odd", 1, 2), ("2A-odd", 2, 2),
)


def _jsonable(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


# instance checks -------------------------------------------------------------

def lemma_instance(family, d, b):
    params = SchemeParams(family, d, b)
    for s in range(d + 1):
        for t in range(d + 1):
            for u in range(min(s, t) + 1):
                a, c = rho(params, s, t, u), rho_semilattice(params, s, t, u)
                if a != c:
                    return {"s": s, "t": t, "u": u, "product": a, "semilattice": c}
    return None


def blocks_instance(family, d, b, p):
    params = SchemeParams(family, d, b)
    rep = modular.locality_report(params, p)
    witness = {
        "k_blocks": rep.k_blocks,
        "contributing": rep.contributing_indices,
        "closed_form": rep.closed_form_verdict,
    }
    if rep.contributing_indices != rep.diagonal_indices:
        witness["diagonal"] = rep.diagonal_indices
        return witness
    if b % p == 0:
        return None if rep.k_blocks >= 2 else witness
    if rep.is_local_by_count != rep.closed_form_verdict:
        return witness
    return None


def local_form_instance(family, d, b, p):
    params = SchemeParams(family, d, b)
    if not modular.is_local(params, p):
        return NA
    bad = modular.matrix_of_local_defect(params, p)
    return None if bad is None else dict(zip(("s", "t", "u", "actual", "closed_form"), bad))


def thm1_instance(d, r, p):
    f = presentations.theorem1_map(d, r, p)
    return _iso_witness(f)


def _iso_witness(f):
    bad = homomorphism_defect(f)
    if bad is not None:
        return {"homomorphism": _jsonable(bad)}
    if not f.is_bijective():
        return {"rank": f.rank(), "dim": [f.source.dim, f.target.dim]}
    return None


def thm2_instance(d_prime, q, p):
    bad = modular.theorem2_defect(d_prime, q, p)
    if bad is not None:
        return {"congruence": list(bad)}
    w = _iso_witness(presentations.theorem2_map(d_prime, q, p))
    if w is not None:
        return w
    return _iso_witness(presentations.theorem2_presentation_map(d_prime, q, p))


def tensor_instance(l, r, p):
    bad = modular.tensor_decomposition_defect(l, r, p)
    return None if bad is None else {"index": list(bad)}


def epi_instance(d, r, p):
    bad = modular.epi_A_defect(d, r, p)
    return None if bad is None else _jsonable(bad)


def psi_instance(d, q, p):
    bad = modular.psi_defect(d, q, p)
    return None if bad is None else _jsonable(bad)


def small_one_instance(r, p):
    if not presentations.small_one_check(r, p):
        return {"nilpotency_index": presentations.nilpotency_of_generator(r, p)}
    idx = presentations.nilpotency_of_generator(r, p)
    return None if idx == p else {"nilpotency_index": idx}


def properties_instance(l, r, p):
    bad = presentations.properties_of_A_defect(l, r, p)
    return None if bad is None else list(bad)


def d_quotient_instance(d_prime, q, p):
    return _iso_witness(presentations.d_quotient_map(d_prime, q, p))


def iso_instance(f1, b1, f2, b2, d, p):
    p1, p2 = SchemeParams(f1, d, b1), SchemeParams(f2, d, b2)
    if modular.check_isomorphic_condition(p1, p2, p):
        return None
    a = modular.reduce_tensor(p1, p).rho_mod
    c = modular.reduce_tensor(p2, p).rho_mod
    s, t, u = (int(x) for x in np.argwhere(a != c)[0])
    return {"index": [s, t, u], "first": int(a[s, t, u]), "second": int(c[s, t, u])}


def oracle_instance(family, d, b, cap=geometry.DEFAULT_CAP):
    params = SchemeParams(family, d, b)
    try:
        space = geometry.build_polar_space(params, cap)
    except geometry.ResourceCapExceeded as exc:
        return (CAP, str(exc))
    measured = geometry.empirical_rho(space)
    expected = structure_tensor(params).rho
    if len(space) != expected[0, 0, 0]:
        return {"points": len(space), "expected": int(expected[0, 0, 0])}
    bad = np.argwhere(measured != expected)
    if len(bad):
        s, t, u = (int(x) for x in bad[0])
        return {"index": [s, t, u], "measured": measured[s, t, u], "formula": expected[s, t, u]}
    return None


def p2_instance(family, d, b):
    params = SchemeParams(family, d, b)
    k = modular.k_blocks(params, 2)
    if k != 1:
        return {"k_blocks": k}
    return _iso_witness(presentations.p2_remark_map(params))


# suites ----------------------------------------------------------------------

def _families():
    return [f.value for f in SchemeFamily]


def lemma_tasks(dmax=8, bases=(2, 3, 4, 5)):
    return [
        (f"{fam}/d={d}/b={b}", lemma_instance, (fam, d, b))
        for fam in _families() for d in range(1, dmax + 1) for b in bases
    ]


def blocks_tasks(dmax=12, bmax=9, primes=ODD_PRIMES, dmin=1):
    return [
        (f"{fam}/d={d}/b={b}/p={p}", blocks_instance, (fam, d, b, p))
        for fam in _families() for d in range(dmin, dmax + 1)
        for b in range(2, bmax + 1) for p in primes
    ]


def local_form_tasks(dmax=12, bmax=9, primes=ODD_PRIMES, dmin=1):
    return [
        (f"{fam}/d={d}/b={b}/p={p}", local_form_instance, (fam, d, b, p))
        for fam in _families() for d in range(dmin, dmax + 1)
        for b in range(2, bmax + 1) for p in primes if b % p
    ]


def thm1_tasks(primes=(3, 5, 7), dmax=20):
    return [
        (f"d={d}/r={r}/p={p}", thm1_instance, (d, r, p))
        for p in primes for r in (p - 1, 2 * p - 1)
        for d in range(1, min(p * p - 1, dmax) + 1)
    ]


def thm2_tasks(primes=(3, 5, 7), dmax=8):
    return [
        (f"d'={dp}/q={q}/p={p}", thm2_instance, (dp, q, p))
        for p in primes for q in (p - 1, 2 * p - 1) for dp in range(1, dmax + 1)
    ]


def tensor_tasks(cases=((1, 3), (2, 3), (3, 3), (1, 5), (2, 5))):
    return [(f"l={l}/p={p}", tensor_instance, (l, p - 1, p)) for l, p in cases]


def epi_tasks(primes=(3, 5, 7), dmax=8):
    return [
        (f"d={d}/r={p - 1}/p={p}", epi_instance, (d, p - 1, p))
        for p in primes for d in range(1, dmax + 1)
    ]


def psi_tasks(primes=(3, 5, 7), dmax=13):
    return [
        (f"d={d}/q={p - 1}/p={p}", psi_instance, (d, p - 1, p))
        for p in primes for d in range(3, dmax + 1, 2)
    ]


def small_one_tasks(primes=(3, 5, 7)):
    return [(f"r={p - 1}/p={p}", small_one_instance, (p - 1, p)) for p in primes]


def properties_tasks(cases=((1, 3), (2, 3), (3, 3), (1, 5), (2, 5), (1, 7))):
    return [(f"l={l}/p={p}", properties_instance, (l, p - 1, p)) for l, p in cases]


def d_quotient_tasks(primes=(3, 5, 7), dmax=6):
    return [
        (f"d'={dp}/q={p - 1}/p={p}", d_quotient_instance, (dp, p - 1, p))
        for p in primes for dp in range(1, dmax + 1)
    ]


def iso_cond_tasks(n=200, seed=0, dmax=8, bmax=40):
    """Random parameter pairs satisfying the congruence hypotheses."""
    rng = random.Random(seed)
    fams = _families()
    tasks = []
    seen = set()
    while len(tasks) < n:
        p = rng.choice(ODD_PRIMES)
        d = rng.randint(1, dmax)
        f1, f2 = rng.choice(fams), rng.choice(fams)
        b1 = rng.randint(2, bmax)
        p1 = SchemeParams(f1, d, b1)
        matches = [
            b2 for b2 in range(2, bmax + 1)
            if modular.isomorphic_hypotheses(p1, SchemeParams(f2, d, b2), p)
        ]
        if not matches:
            continue
        b2 = rng.choice(matches)
        key = f"{f1}({b1})~{f2}({b2})/d={d}/p={p}"
        if key in seen:
            continue
        seen.add(key)
        tasks.append((key, iso_instance, (f1, b1, f2, b2, d, p)))
    return tasks


def oracle_tasks(instances=ORACLE_INSTANCES, cap=geometry.DEFAULT_CAP):
    return [
        (f"{fam}/d={d}/b={b}", oracle_instance, (fam, d, b, cap))
        for fam, d, b in instances
    ]


def p2_tasks(dmax=10, bases=(3, 5, 7, 9)):
    return [
        (f"{fam}/d={d}/b={b}", p2_instance, (fam, d, b))
        for fam in _families() for d in range(1, dmax + 1) for b in bases
    ]


SUITES = {
    "lemma": lemma_tasks,
    "blocks": blocks_tasks,
    "local-form": local_form_tasks,
    "thm1": thm1_tasks,
    "thm2": thm2_tasks,
    "tensor": tensor_tasks,
    "epi": epi_tasks,
    "psi": psi_tasks,
    "small-one": small_one_tasks,
    "properties-a": properties_tasks,
    "d-quotient": d_quotient_tasks,
    "iso-cond": iso_cond_tasks,
    "oracle": oracle_tasks,
    "p2-remark": p2_tasks,
}


def _run_one(task):
    key, fn, args = task
    out = fn(*args)
    if out is None:
        return {"instance": key, "status": PASS, "witness": None}
    if out == NA:
        return {"instance": key, "status": NA, "witness": None}
    if isinstance(out, tuple) and out and out[0] == CAP:
        return {"instance": key, "status": CAP, "witness": out[1]}
    return {"instance": key, "status": FAIL, "witness": _jsonable(out)}


def run_tasks(suite: str, tasks, jobs: int = 1) -> dict:
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=8))
    else:
        results = [_run_one(t) for t in tasks]
    results.sort(key=lambda r: r["instance"])
    failures = [r for r in results if r["status"] == FAIL]
    capped = [r for r in results if r["status"] == CAP]
    if failures:
        status, witness = FAIL, failures[0]
    elif capped:
        status, witness = CAP, capped[0]
    else:
        status, witness = PASS, None
    return {
        "suite": suite,
        "instances": results,
        "status": status,
        "witness": witness,
        "counts": {
            s: sum(r["status"] == s for r in results) for s in (PASS, FAIL, NA, CAP)
        },
    }


def run_suite(suite: str, jobs: int = 1, **bounds) -> dict:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    return run_tasks(suite, SUITES[suite](**bounds), jobs)


def odd_primes_upto(n: int) -> tuple:
    return tuple(p for p in range(3, n + 1) if is_prime(p))
