"""The ten acceptance criteria as timed, seeded checks."""

import os
import subprocess
import sys
import time
from dataclasses import dataclass, field

from . import sweeps


@dataclass
class Outcome:
    number: int
    title: str
    limit: float
    elapsed: float = 0.0
    results: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    ok: bool = True

    @property
    def passed(self):
        return self.ok and self.elapsed < self.limit and all(r.passed for r in self.results)

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        checked = sum(r.checked for r in self.results)
        extra = f", {checked} checked" if self.results else ""
        return f"{tag} criterion {self.number}: {self.title} ({self.elapsed:.1f}s / {self.limit:.0f}s{extra})"

    def details(self):
        out = list(self.notes)
        for r in self.results:
            out.extend(f"{r.name}: {k} = {v}" for k, v in sorted(r.notes.items()))
            out.extend(r.failures)
        return out


def _fixture_2inf():
    from .algebra.ff import GF
    from .rayclass import parse_modulus, ray_class_group, ray_class_oracle
    F = GF(2)
    D = parse_modulus("2*inf", F)
    return ray_class_group(D, F).order == 2 and ray_class_oracle(D, F).order == 2


def _selftest_bytes(hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    proc = subprocess.run([sys.executable, "-m", "ramcft", "selftest", "--seed", "0"],
                          capture_output=True, env=env, timeout=600)
    return proc.returncode, proc.stdout


def _determinism(out):
    a, b = _selftest_bytes(1), _selftest_bytes(2)
    out.notes.append(f"exit codes {a[0]}, {b[0]}; {len(a[1])} bytes")
    out.ok = a[0] == 0 and a == b


def _run(number, title, limit, body, seed):
    out = Outcome(number, title, limit)
    start = time.perf_counter()
    body(out, seed)
    out.elapsed = time.perf_counter() - start
    return out


def _sweeps(*fns):
    def body(out, seed):
        out.results.extend(fn(seed) for fn in fns)
    return body


def _rayclass(out, seed):
    out.results.append(sweeps.rayclass_compare(seed))
    fixture = _fixture_2inf()
    out.notes.append(f"|C(P1, 2[inf])^0| = 2 over F_2: {fixture}")
    out.ok = fixture


CRITERIA = [
    (1, "Witt ring axioms and ghost-lift oracle", 30,
     _sweeps(lambda s: sweeps.witt_ring(s, trials=500))),
    (2, "artin_conductor equals the exhaustive oracle", 120,
     _sweeps(lambda s: sweeps.conductor_vs_oracle(s, budget=4))),
    (3, "filtration box inclusions", 10,
     _sweeps(lambda s: sweeps.filtration_boxes(s, trials=1000))),
    (4, "refined Artin conductor injectivity and surjectivity", 60,
     _sweeps(lambda s: sweeps.rsw_injective(s, budget=6), lambda s: sweeps.rsw_surjective())),
    (5, "ray class group: unit route, oracle and closed form", 120, _rayclass),
    (6, "factorization through C(P1, D) and negative control", 120,
     _sweeps(lambda s: sweeps.reciprocity(s, max_cond_deg=5, trials=100))),
    (7, "Schmid residue sums vanish", 30,
     _sweeps(lambda s: sweeps.schmid(s, trials=200))),
    (8, "Gersten cancellation of boundaries", 60,
     _sweeps(lambda s: sweeps.gersten(s, trials=100))),
    (9, "boundary tables of the two claims", 60,
     _sweeps(lambda s: sweeps.claim_tables(s, trials=12))),
    (10, "selftest output is byte-identical across runs", 600,
     lambda out, seed: _determinism(out)),
]


def run_criterion(number, seed=0):
    for n, title, limit, body in CRITERIA:
        if n == number:
            return _run(n, title, limit, body, seed)
    raise KeyError(number)


def run_all(seed=0, numbers=None):
    return [run_criterion(n, seed) for n, *_ in CRITERIA if numbers is None or n in numbers]
