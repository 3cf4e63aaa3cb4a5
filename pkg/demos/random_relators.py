"""How often is a random one-relator presentation C(7)?

Samples 100 relators of each length over two generators with fixed seeds and
counts how many satisfy the small-cancellation condition C(7). The fraction
should climb towards 1 as the relator gets longer.
"""
from twocurv import io
from twocurv import smallcancel as sc

SEEDS = range(100)

for length in (10, 20, 50, 100, 200):
    good = sum(sc.check_C(io.source_to_complex(io.sample_presentation(2, 1, length, seed)), 7) for seed in SEEDS)
    print(f"length {length:3d}: {good:3d}/100 are C(7)")
