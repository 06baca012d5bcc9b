"""The seeded invariant suite behind ``ramcft selftest``."""

from . import sweeps


def sections(seed, trials):
    """(label, thunk) pairs; each thunk returns a SweepResult."""
    t = max(trials, 2)
    return [
        ("witt_ring", lambda: sweeps.witt_ring(seed, t)),
        ("filtration_boxes", lambda: sweeps.filtration_boxes(seed, 10 * t)),
        ("conductor_vs_oracle", lambda: sweeps.conductor_vs_oracle(seed, sample=t)),
        ("rsw_injective", lambda: sweeps.rsw_injective(seed, sample=5 * t)),
        ("rsw_surjective", lambda: sweeps.rsw_surjective()),
        ("rayclass_compare", lambda: sweeps.rayclass_compare(seed, qs=(2, 3), max_deg=3,
                                                             sample=max(t // 4, 2))),
        ("reciprocity", lambda: sweeps.reciprocity(seed, max_cond_deg=4, trials=t,
                                                   sample=max(t // 4, 2))),
        ("schmid", lambda: sweeps.schmid(seed, t)),
        ("gersten", lambda: sweeps.gersten(seed, max(t // 2, 2))),
        ("claim_tables", lambda: sweeps.claim_tables(seed, max(t // 5, 2))),
        ("mu_checks", lambda: sweeps.mu_checks(seed, max(t // 2, 2))),
    ]


def run_selftest(seed=0, trials=20):
    out = []
    for label, thunk in sections(seed, trials):
        out.append(thunk().to_dict())
    return {"seed": seed, "trials": trials, "sections": out,
            "passed": all(s["passed"] for s in out)}
