# Covers: lines, chains and increasing walks.

from imkit import (
    BinaryMatrix, avoids_dk, longest_increasing_chain, max_independent_ones,
    min_line_cover, walk_cover,
)

M = BinaryMatrix.parse("""
10010
01000
01101
00010
""")
print(M.to_text())

# Minimum number of lines covering all 1-entries equals the largest set of
# 1-entries sharing no line.
cover = min_line_cover(M)
print("\nline cover:", sorted((l.axis.value, l.index) for l in cover.lines))
print("independent ones:", max_independent_ones(M))

# If M has no increasing chain of length k, k-1 walks from the bottom-left
# corner to the top-right corner, moving up or right, cover every 1-entry.
k = longest_increasing_chain(M) + 1
print(f"\nlongest increasing chain {k - 1}, so M avoids D{k}: {avoids_dk(M, k)}")
wc = walk_cover(M, k)
for w in wc.walks:
    picture = [["." for _ in range(M.cols)] for _ in range(M.rows)]
    for i, j in w:
        picture[i - 1][j - 1] = "1" if M[i, j] else "o"
    print("\n".join("".join(r) for r in picture), end="\n\n")
print("support covered:", M.support() <= wc.union())
