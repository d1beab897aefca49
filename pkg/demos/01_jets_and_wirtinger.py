"""Jets as an exact derivative engine, and the Wirtinger calculus on them.

A jet is a truncated Taylor expansion; sums, products and quotients of jets
are exact modulo truncation, so every derivative we read off below is exact
up to rounding -- no step sizes, no cancellation.
"""

import numpy as np

from twistorkit import JetSpace, SmoothMap, bilinear_dot, complex_view, dz_power, laplacian

# ---------------------------------------------------------------------------
# build jets at a base point and push them through ordinary formulas

space = JetSpace([0.5, -1.0], order=4)
x, y = space.vars()
f = (1 + x * x + y * y).sqrt() * (x * y).exp()
print("f at the base point:            ", f.value.real)
print("d^3 f / dx^2 dy (exact):        ", f.deriv((2, 1)).real)

# ---------------------------------------------------------------------------
# smooth maps are jet evaluators; complex components come for free

phi = SmoothMap.from_complex(1, 1, lambda z: [z * z])
v = dz_power(phi, 1, 3.0 + 0j)
print("\nphi(z) = z^2 at z = 3")
print("dz phi as a real-component vector:", v)
print("C-identified view (equals 2z):    ", complex_view(v))
print("bilinear pairing <dz, dz>:        ", bilinear_dot(v, v), " (holomorphic => 0)")

# a map with antiholomorphic content: the pairing no longer vanishes
doubled = SmoothMap.from_complex(1, 2, lambda z: [z * z + z.conj(), z * z + z.conj()])
v1 = dz_power(doubled, 1, 1.0 + 0j)
print("\nphi(z) = (z^2 + zbar, z^2 + zbar) at z = 1")
print("<dz, dz> = 4z:                    ", bilinear_dot(v1, v1))
print("second dz derivative, C view:     ", complex_view(dz_power(doubled, 2, 1.0 + 0j)))

# ---------------------------------------------------------------------------
# the flat tension field is just the componentwise Laplacian

saddle = SmoothMap.from_real(2, 2, lambda x, y: [x * x - y * y, x * x])
print("\nLaplacian of (x^2 - y^2, x^2):   ", laplacian(saddle, [0.3, 0.7]))
