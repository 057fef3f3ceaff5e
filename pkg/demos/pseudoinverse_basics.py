"""Pseudoinverse fundamentals: defining identities and minimal-norm solves.

Builds a rank-deficient matrix, checks the four defining identities of the
pseudoinverse, and uses it to pick the minimal-norm solution of an
underdetermined system and the least-squares solution of an inconsistent
one.  Finishes with the reverse-order law: it holds for a commuting pair
and fails for a generic one.
"""

import numpy as np

from qfmin import (
    adjoint,
    min_norm_ls,
    pinv,
    pinv_with_rank,
    projector_range,
    projector_rangestar,
    reverse_order_holds,
)


def penrose_residuals(a, a_dag):
    return {
        "a x a = a": np.linalg.norm(a @ a_dag @ a - a),
        "x a x = x": np.linalg.norm(a_dag @ a @ a_dag - a_dag),
        "(a x)* = a x": np.linalg.norm(adjoint(a @ a_dag) - a @ a_dag),
        "(x a)* = x a": np.linalg.norm(adjoint(a_dag @ a) - a_dag @ a),
    }


def main():
    rng = np.random.default_rng(7)

    print("== defining identities ==")
    # rank-2 matrix on a 4x5 grid
    a = rng.standard_normal((4, 2)) @ rng.standard_normal((2, 5))
    a_dag, decision = pinv_with_rank(a)
    print(f"shape {a.shape}, detected rank {decision.rank}, "
          f"threshold {decision.threshold:.3e}")
    for label, res in penrose_residuals(a, a_dag).items():
        print(f"  {label:14s} residual {res:.3e}")

    print("\n== orthogonal projectors ==")
    p_col = projector_range(a)
    p_row = projector_rangestar(a)
    print(f"  a a+ projects onto the column space: trace {np.trace(p_col):.6f}")
    print(f"  a+ a projects onto the row space:    trace {np.trace(p_row):.6f}")

    print("\n== minimal-norm solution of an underdetermined system ==")
    wide = np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 2.0]])
    b = np.array([2.0, 2.0])
    x = min_norm_ls(wide, b)
    print(f"  A = {wide.tolist()}, b = {b.tolist()}")
    print(f"  x+ = {x}  (norm {np.linalg.norm(x):.6f})")
    print(f"  any solution has the form x+ + null direction; "
          f"x+ is orthogonal to the null space")

    print("\n== least-squares pick for an inconsistent system ==")
    tall = np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    b_bad = np.array([1.0, 0.0, 5.0])
    x_ls = min_norm_ls(tall, b_bad)
    print(f"  residual ||A x - b|| = {np.linalg.norm(tall @ x_ls - b_bad):.6f} "
          f"(cannot be zero; b is outside the column space)")
    print(f"  x = {x_ls}")

    print("\n== reverse-order law (A B)+ = B+ A+ ==")
    q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
    d1 = q @ np.diag([1.0, 2.0, 0.0, 0.5]) @ adjoint(q)
    d2 = q @ np.diag([3.0, 1.0, 1.0, 0.0]) @ adjoint(q)
    report = reverse_order_holds(d1, d2)
    gap = np.linalg.norm(pinv(d1 @ d2) - pinv(d2) @ pinv(d1))
    print(f"  commuting pair: predicate {report.holds}, direct gap {gap:.3e}")

    g1 = rng.standard_normal((4, 2)) @ rng.standard_normal((2, 4))
    g2 = rng.standard_normal((4, 3)) @ rng.standard_normal((3, 4))
    report = reverse_order_holds(g1, g2)
    gap = np.linalg.norm(pinv(g1 @ g2) - pinv(g2) @ pinv(g1))
    print(f"  generic pair:   predicate {report.holds}, direct gap {gap:.3e}")


if __name__ == "__main__":
    main()
