"""Set systems, their statistics, and incidence matrices.

A set system is a point set {1..v} plus an ordered list of blocks.  Its
incidence matrix (one row per block, one column per shared point or pair)
is the skeleton that later gets lifted into an LDPC parity-check matrix.
"""

from fsscode import block_stats, incidence_matrix, validate_fss

# the running example: 10 four-point blocks on 8 points
blocks = [
    [1, 2, 4, 5], [1, 2, 3, 7], [1, 3, 5, 8], [2, 3, 5, 6], [2, 3, 4, 8],
    [3, 4, 6, 7], [4, 5, 7, 8], [1, 4, 6, 8], [1, 5, 6, 7], [2, 6, 7, 8],
]
fss = validate_fss(8, blocks, t=3)
print(f"system: v={fss.v} points, b={fss.b} blocks, t={fss.t}")

stats = block_stats(fss)
print("block sizes K:", stats.K)
print("replication R:", stats.R)
for i in range(fss.t + 1):
    print(f"  {i}-subset coverage counts: {sorted(stats.coverage[i])}")

# with t=3 the incidence matrix columns are point pairs
H = incidence_matrix(fss, min_replication=1)
print(f"\nincidence matrix: {H.rows} x {H.cols}, {H.nnz} ones")
print("row 1 covers pair columns:", [c + 1 for c in H.row_support[0]])
print("pair behind column 19:", H.col_labels[18])

# dropping pairs private to a single block (the default filter) changes
# nothing here because every pair is shared by at least two blocks
H2 = incidence_matrix(fss)
print("filtered matrix has the same shape:", (H2.rows, H2.cols) == (10, 28))
