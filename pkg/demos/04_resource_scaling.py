"""CNOT counts of the optimized circuits against the staircase baselines as excitations grow."""
from qexcite.cli import compare_rows, stats_rows
from qexcite.pauli import ExcitationKind

for kind, limit in ((ExcitationKind.SINGLE_FERMIONIC, 2), (ExcitationKind.DOUBLE_FERMIONIC, 8)):
    print(kind.name)
    print("   n  opt  depth  std  formula-match")
    for r in stats_rows(kind, range(4, 11)):
        print(f"  {r['n']:2d}  {r['optimized_count']:3d}  {r['optimized_depth']:5d}  {r['standard_count']:3d}  {r['match']}")
    last = compare_rows(kind, [20, 100, 1000])
    print("  ratios at n = 20, 100, 1000:", ", ".join(f"{r['ratio']:.3f}" for r in last), f"(limit {limit})")
