"""Width-sequence models: lacunarity, majorization, shifts, the grammar.

A nonincreasing positive sequence is lacunary when consecutive ratios dip
toward zero along a subsequence.  That single property decides whether the
covering semigroup of an ellipsoid closes up to everything or stays inside
an invariant-subspace algebra, so the classifiers here are the package's
switchboard.
"""

from widthlab import (
    Geometric,
    Power,
    Samples,
    Shifted,
    SuperGeometric,
    equivalent,
    is_lacunary,
    majorizes,
    max_majorizing_shift,
    parse_model,
    sample,
    strictly_majorizes,
)

geom = Geometric(0.5)          # a_n = 2^-n
power = Power(2.0)             # a_n = (n+1)^-2
steep = SuperGeometric(2.0)    # a_n = 2^-(n^2)

print("first terms:")
for model in (geom, power, steep):
    print(f"  {model}: {sample(model, 5)}")

# Lacunarity is decided exactly for the parametric families.
print("\nlacunarity:")
for model in (geom, power, steep):
    v = is_lacunary(model)
    print(f"  {model}: lacunary={v.lacunary}, smallest ratio={v.witness_ratio}, exact={v.exact}")

# For sampled data only a windowed surrogate is possible; the verdict says so.
data = Samples((1.0, 0.5, 1e-5, 5e-6))
v = is_lacunary(data)
print(f"  {data}: lacunary={v.lacunary}, witness={v.witness_ratio}, exact={v.exact}")

# Majorization b_n <= C a_n with the minimal C from closed forms.
print("\nmajorization:")
print("  geom(1/2) over geom(1/4):", majorizes(geom, Geometric(0.25)))
print("  geom(1/4) over geom(1/2):", majorizes(Geometric(0.25), geom))
print("  steep over its shift:    ", majorizes(steep, Shifted(1, steep)))

# Strict majorization (ratio -> 0) is what compact covers need.
print("\nstrict majorization:")
print("  pow(1) over pow(2):", strictly_majorizes(Power(1.0), Power(2.0)).holds)
print("  geom over itself:  ", strictly_majorizes(geom, geom).holds)

# Left shifts: a geometric sequence majorizes all of its shifts (ratio q^-k
# stays bounded); a super-geometric one loses majorization at the exact gap.
print("\nlargest majorizing shift (budget 8):")
print("  geom vs itself:        ", max_majorizing_shift(geom, geom, 8))
print("  steep vs shift(1,steep):", max_majorizing_shift(steep, Shifted(1, steep), 8))
print("  steep vs itself:       ", max_majorizing_shift(steep, steep, 8))

# Equivalence = majorization both ways; scaling never matters.
print("\nequivalence:")
print("  geom ~ 3*geom:", equivalent(geom, parse_model("scale(3, geom(0.5))")))
print("  geom ~ geom(1/4):", equivalent(geom, Geometric(0.25)))

# The same grammar drives the command line.
expr = "shift(1, scale(2, supergeom(2)))"
print(f"\nparsed {expr!r} ->", parse_model(expr))
