"""Null polynomials on 2x2 upper triangular matrices over F_2.

Over a non-commutative ring a polynomial can vanish everywhere, have a
vanishing derivative, and still fail to vanish on the dual numbers R[b].
Run with ``python demos/upper_triangular_nulls.py``.
"""
import numpy as np

from ringlab import construct_ring, make_dual
from ringlab.funspace import is_anull, is_null, is_nullprime
from ringlab.poly import Poly, eval_right, formal_derivative, lambda_eval, poly_mul
from ringlab.rings import matrix_element, pretty


def main():
    R = construct_ring("ut:2:gf:2")
    h = Poly(R, (0, 0, R.one, 0, R.one))
    print(f"R = {R.spec}, {R.size} elements")
    print(f"h = x^4 + x^2, index form {h.index_str()}")
    print(f"  null on R:             {is_null(h)}")
    print(f"  derivative is zero:    {formal_derivative(h).is_zero()}")
    print(f"  null derivative:       {is_nullprime(h)}")
    print(f"  lambda identically 0:  {is_anull(h)}")

    a = matrix_element(R, np.array([[1, 1], [0, 1]]))
    b = matrix_element(R, np.array([[0, 1], [0, 1]]))
    lam = lambda_eval(h, a, b)
    print(f"\nlambda_h(a, b) at a = {pretty(R, a)}, b = {pretty(R, b)}:")
    print(f"  {pretty(R, lam)}")

    # h(a + b beta) = h(a) + lambda_h(a, b) beta, so h is not null on R_1
    D = make_dual(R, 1)
    x = D.compose([a, b])
    print(f"\non R_1: h({pretty(D, x)}) = {pretty(D, eval_right(h.on(D), x))}")
    nonzero = np.count_nonzero(eval_right(h.on(D), D.elements()))
    print(f"  points of R_1 where h is nonzero: {nonzero} of {D.size}")
    sq = poly_mul(h, h)
    print(f"  h^2 vanishes on all of R_1: {not np.any(eval_right(sq.on(D), D.elements()))}")


if __name__ == "__main__":
    main()
