# Interval minors: containment by contracting adjacent lines.
#
# A pattern P is contained in a host M if M can be cut into |rows(P)| x |cols(P)|
# consecutive blocks so that every 1-entry of P lands on a block holding a 1.

from imkit import (
    BinaryMatrix, Q, contains, contains_oracle, find_embedding, find_partition,
    verify_embedding, verify_partition,
)

host = BinaryMatrix.parse("""
0110
1001
0100
0011
""")
P = Q(1)

print("host:")
print(host.to_text())
print("\npattern Q1:")
print(P.to_text())

# The fast decision and the brute-force oracle agree.
print("\ncontains:", contains(host, P), " oracle:", contains_oracle(host, P))

# A positive answer comes with a partition and an entry-wise embedding.
part = find_partition(host, P)
print("partition:", part.to_json(), "valid:", verify_partition(host, P, part))
emb = find_embedding(host, P)
ones = {e: emb.mapping[e] for e in sorted(P.support())}
print("1-entries go to:", ones, "valid:", verify_embedding(host, P, emb))

# Containment is monotone: adding 1-entries never destroys an occurrence.
bigger = BinaryMatrix.ones(4, 4)
print("all-ones 4x4 contains Q1:", contains(bigger, P))

# Permutation patterns need one 1-entry per block, so the 3x3 identity does
# not contain Q1 even though it has three 1-entries.
print("identity contains Q1:", contains(BinaryMatrix.parse("100\n010\n001"), P))
