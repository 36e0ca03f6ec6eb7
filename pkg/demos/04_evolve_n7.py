"""Evolve 7-variable functions with every encoding and compare the outcomes.

Each run uses the steady-state loop: sample three distinct individuals,
eliminate the worst, cross over the two survivors, mutate the child with
probability 1/2, evaluate it and put it in the vacated slot.  Runs stop
early once they reach nonlinearity 56, the best known value at n=7.
"""

from boolevo import RunConfig, run, verify_hex

SETUPS = [
    dict(encoding="bitstring"),
    dict(encoding="bitstring", mode="rs"),
    dict(encoding="float", decode=4),
    dict(encoding="float", decode=4, algorithm="de"),
    dict(encoding="tree", population_size=500),
]

best_hex = None
for setup in SETUPS:
    config = RunConfig(
        n=7,
        population_size=setup.pop("population_size", 50),
        evaluation_budget=300_000,
        target_nonlinearity=56,
        seed=11,
        **setup,
    )
    record = run(config)
    print(
        f"{record.label:8s} nl={record.best_nonlinearity}  "
        f"fitness={record.best_fitness:.4f}  evals={record.evaluations:>7d}  "
        f"stop={record.stop_reason}"
    )
    if record.best_nonlinearity == 56:
        best_hex = record.best_truth_table

print()
print("one of the nl-56 functions found:", best_hex)
report = verify_hex(best_hex, 7)
for line in report.classification:
    print(" ", line)
