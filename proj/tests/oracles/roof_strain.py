"""Independent strain-tensor oracle for the two-element roof z = -|x|.

Velocities come from the rotation taking k to the face normal (Rodrigues),
control points from the planar circumcenter lifted onto each face. Prints the
values frozen into tests/unit/test_curvature.cpp.
"""
import numpy as np

K = [(-1.5, 0.1), (0.0, -1.0), (0.0, 1.0)]
L = [(1.3, -0.2), (0.0, 1.0), (0.0, -1.0)]
MU, RHO = 1.0e-3, 1.0e3


def lift(pts):
    return np.array([[x, y, -abs(x)] for x, y in pts])


def circumcenter(pts):
    (ax, ay), (bx, by), (cx, cy) = pts
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    ux = ((ax**2 + ay**2) * (by - cy) + (bx**2 + by**2) * (cy - ay) + (cx**2 + cy**2) * (ay - by)) / d
    uy = ((ax**2 + ay**2) * (cx - bx) + (bx**2 + by**2) * (ax - cx) + (cx**2 + cy**2) * (bx - ax)) / d
    return np.array([ux, uy])


def face(pts):
    v = lift(pts)
    n = np.cross(v[1] - v[0], v[2] - v[0])
    n = n / np.linalg.norm(n)
    if n[2] < 0:
        n = -n
    c = circumcenter(pts)
    # height of the face plane above c
    z = v[0][2] - (n[0] * (c[0] - v[0][0]) + n[1] * (c[1] - v[0][1])) / n[2]
    return v, n, np.array([c[0], c[1], z])


def rotate(n, b):
    k = np.array([0.0, 0.0, 1.0])
    axis = np.cross(k, n)
    s = np.linalg.norm(axis)
    if s == 0:
        return np.array([b[0], b[1], 0.0])
    axis = axis / s
    c = n[2]
    v = np.array([b[0], b[1], 0.0])
    return v * c + np.cross(axis, v) * s + axis * np.dot(axis, v) * (1 - c)


def strain(b):
    vk, nk, pk = face(K)
    vl, nl, pl = face(L)
    du = rotate(nk, b) - rotate(nl, b)
    dp = pk - pl
    q = np.zeros((3, 3))
    for a in range(3):
        for m in range(3):
            if abs(dp[m]) >= 1e-12 * np.linalg.norm(dp):
                q[a, m] = du[a] / dp[m]
    d = 0.5 * (q + q.T)
    shared = lift([K[1], K[2]])
    area = sum(0.5 * np.linalg.norm(np.cross(shared[0] - p, shared[1] - p)) for p in (pk, pl))
    return d, 2 * MU / RHO * area * np.sum(d * d)


if __name__ == "__main__":
    for b in ((1.0, 0.0), (0.6, 0.8)):
        d, u = strain(b)
        print("b =", b)
        for row in d:
            print("  {" + ", ".join(repr(float(x)) for x in row) + "},")
        print("  U =", repr(float(u)))
