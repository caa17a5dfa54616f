"""Step-by-step almost-toric mutation flow v2yx y^k x y.

Replays the mutation word that realizes the staircase's inner corners,
printing the exact side lengths after each phase, and finishes with the
bit-exact agreement between the engine's extracted embedding point and
the independently derived corner coordinates.
"""

from polycap import MAIN_BETA, acc_point, vol_at_acc
from polycap.atf import apply_word, extract_embedding, init_polydisk, mutate, to_svg
from polycap.staircase import inner_corners

beta = MAIN_BETA


def show(poly, title):
    sides = poly.side_lengths()
    print(f"{title} (word {poly.word_str() or '-'})")
    for name in ("OY", "YV", "XV", "OX"):
        v = sides[name]
        print(f"    |{name}| = {str(v):>22}  ≈ {v.decimal(10)}")
    print(f"    rays: {poly.rays()}")


poly = init_polydisk(beta)
show(poly, "initial rectangle")

poly = apply_word(poly, "v2yx")
show(poly, "\nafter v2yx")

print("\nThe y^k phase: |OX| freezes at 1/vol(beta); z_k = |OY|/|OX| climbs to acc:")
acc = acc_point(beta)
state = poly
for k in range(6):
    sides = state.side_lengths()
    zk = sides["OY"] / sides["OX"]
    print(f"  k={k}: z_k ≈ {zk.decimal(14)}   gap to acc ≈ {(acc - zk).decimal(14)}")
    state = mutate(state, "y")

print("\nBranching off with x, y lands exactly on the inner corners:")
for k in range(4):
    word = "v2yx" + "y" * k + "xy"
    emb = extract_embedding(apply_word(init_polydisk(beta), word))
    corner = inner_corners(k, beta)[0]
    print(f"  {word:>10}: (z, lambda) ≈ ({emb.z.decimal(10)}, {emb.lam.decimal(10)})"
          f"   == corner I_{k + 1}: {emb.z == corner.z and emb.lam == corner.lam}")

print(f"\nfull filling: lambda after v2yxy^k equals vol(beta) ≈ {vol_at_acc(beta).decimal(10)}")

svg = to_svg(apply_word(init_polydisk(beta), "v2yx"))
with open("mutation_v2yx.svg", "w") as fh:
    fh.write(svg)
print("wrote mutation_v2yx.svg")
