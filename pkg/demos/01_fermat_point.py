"""Where does the weighted Fermat-Torricelli point of a triangle sit?

Three strings hang over pulleys at the vertices and carry weights; the knot
settles where the weighted unit pulls balance. If one weight is heavy enough,
or one angle is wide enough, the knot is pulled onto that vertex.
"""

import math

from oscillatory_ft import IsoscelesSystem, WeightedTriangle, classify_case, isosceles_ft_x, objective, weiszfeld


def isosceles(apex_deg, weights=(1, 1, 1)):
    half = math.radians(apex_deg) / 2
    return WeightedTriangle(((0, math.cos(half)), (-math.sin(half), 0), (math.sin(half), 0)), weights)


# Equal weights: the knot leaves the vertex once every angle is below 120 degrees.
print("apex angle   case")
for deg in (100, 115, 119, 121, 130):
    print(f"{deg:>10}   {classify_case(isosceles(deg))}")

# A heavy weight at the apex pins the knot even in an acute triangle.
res = weiszfeld(isosceles(80, (10, 1, 1)))
print(f"\nweights (10, 1, 1): {res.case}, point {tuple(round(c, 6) for c in res.point)}")

# For the isosceles family the axis position has a closed form; Weiszfeld agrees.
print("\n   w2     closed form x_O    Weiszfeld x_O        gap")
for w2 in (0.75, 1.0, 1.5, 3.0):
    sys = IsoscelesSystem.from_degrees(5.0, 40.0, w2)
    closed = isosceles_ft_x(sys)
    it = sys.h - weiszfeld(sys.triangle()).point.y
    print(f"{w2:5.2f}   {closed:16.12f}   {it:16.12f}   {abs(closed - it):.1e}")

# A scalene example with unequal weights.
tri = WeightedTriangle(((0, 0), (4, 0), (1, 3)), (1.0, 1.3, 0.8))
res = weiszfeld(tri)
print(f"\nscalene: {res.case} at ({res.point.x:.9f}, {res.point.y:.9f}) after {res.iterations} iterations")
print(f"balance residual {res.residual:.1e}, objective {float(objective(tri, res.point)):.9f}")
