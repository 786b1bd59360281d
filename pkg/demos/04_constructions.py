"""Two constructions of systems with large achievable girth.

Route 1 lifts a tiny primitive system through a circulant expansion and
reads the result back as a bigger system; the girth ceiling multiplies.
Route 2 grows a system point-by-point under a prescribed block-size profile,
backtracking whenever a short balanced walk would close.
"""

from fsscode import (
    WeightProfile,
    inevitable_girth,
    method1,
    method2,
    validate_fss,
)

# --- route 1: recursive lifting -------------------------------------
primitive = validate_fss(2, [[1, 2]] * 3)
print("primitive: 3 parallel pairs, ceiling",
      inevitable_girth(primitive).girth)

res = method1(primitive, target_g=24, m_schedule=[3])
print(f"after one m=3 lift: ({res.system.v}, {res.system.b}) system, "
      f"ceiling {res.report.girth}")
print("blocks:", list(res.system.blocks))

# --- route 2: profile-driven backtracking ---------------------------
profile = WeightProfile((3, 3, 3, 3, 3, 3, 4, 3, 3, 3, 3, 3, 3))
res = method2(10, profile, target_g=16)
print(f"\nprofile {profile.K} on 10 points, target 16: {res.status} "
      f"after {res.expansions} expansions")
print("blocks:", list(res.system.blocks))
print("re-verified ceiling:",
      "unbounded" if res.report.unbounded else res.report.girth)

# impossibility is reported as such: four parallel pairs cap the ceiling
res = method2(2, WeightProfile((2, 2, 2, 2)), target_g=14)
print("\nfour 2-point blocks on 2 points, target 14:", res.status)
