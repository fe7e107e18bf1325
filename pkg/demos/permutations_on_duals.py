"""When does a permutation polynomial of R stay one on R_k?

A polynomial permutes R_k exactly when it permutes R and every row of its
lambda table is a bijection.  On a field of order q the polynomial x^q fails
the second test.  On chain rings such as Z/8 the second test is automatic.
"""
from ringlab import construct_ring
from ringlab.perm import chain_redundancy_suite, field_counterexample, is_pp_dual
from ringlab.poly import Poly


def show(label, verdict):
    print(f"  {label:<28} pp on R: {verdict.is_pp_base!s:<5}  lambda rows bijective: "
          f"{verdict.lambda_local!s:<5}  pp on R_k: {verdict.is_pp_dual!s:<5}  brute force: {verdict.brute_force}")


def main():
    print("fields: x^q permutes F_q but not F_q[b]")
    for spec in ("gf:2", "gf:3", "gf:4"):
        f, v = field_counterexample(construct_ring(spec))
        show(f"{spec}  x^{f.degree}", v)

    print("\nZ/4: the tail components never matter")
    R = construct_ring("zn:4")
    for f0, f1 in (("0,1", ""), ("0,1", "3,2,1"), ("0,3,2", "1"), ("0,0,1", "")):
        parts = [Poly.parse(R, f0), Poly.parse(R, f1)]
        show(f"f0={f0} f1={f1 or '0'}", is_pp_dual(parts, R, 1, crosscheck=True))

    print("\nchain rings of characteristic p^c, c > 1: every permutation polynomial lifts")
    for spec in ("zn:4", "zn:8", "zn:9"):
        rep = chain_redundancy_suite(construct_ring(spec), 1)
        print(f"  {spec:<6} {'pass' if rep.passed else 'FAIL'} ({rep.mode}, "
              f"{sum(c.status == 'pass' for c in rep.checks)} checks)")


if __name__ == "__main__":
    main()
