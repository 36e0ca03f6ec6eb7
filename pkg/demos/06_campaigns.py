"""Campaigns: repeat one configuration over consecutive seeds and export
summary statistics plus per-run data ready for boxplots.

Campaign outputs are deterministic: re-running produces byte-identical
files, regardless of how many worker processes execute the runs.
"""

import tempfile
from pathlib import Path

from boolevo import Campaign, RunConfig, run_campaign

config = RunConfig(
    n=7,
    encoding="bitstring",
    mode="rs",
    population_size=30,
    evaluation_budget=20_000,
)
campaign = Campaign(config=config, num_runs=15, seed_base=0)

out = Path(tempfile.mkdtemp()) / "results"
records, rows = run_campaign(campaign, out_dir=out)

for row in rows:
    print(
        f"{row.label}: runs={row.num_runs}  max={row.max_fitness:.4f}  "
        f"avg={row.avg_fitness:.4f}  std={row.std_fitness:.4f}  "
        f"best nl={row.max_nonlinearity}"
    )
print()

print("artefacts in", out)
for name in ("runs.jsonl", "summary.csv", "boxplot.csv"):
    path = out / name
    print(f"--- {name} ({path.stat().st_size} bytes)")
    lines = path.read_text().splitlines()
    for line in lines[:3]:
        print("   ", line[:100] + ("..." if len(line) > 100 else ""))
    if len(lines) > 3:
        print(f"    ... {len(lines) - 3} more lines")
