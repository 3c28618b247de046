"""Structure set descriptors and normal invariant coordinates.

Run as: python3 demos/structure_sets.py
"""

from lensring import (
    NormalInvariantVector,
    is_in_4Z,
    kernel_oracle,
    r_coordinates,
    rho_bracket,
    structure_set,
)


def describe(d, K):
    s = structure_set(d, K)
    if s.torsion is None:
        return f"Z^{s.free_rank}"
    torsion = " + ".join(f"Z_{t.order}({t.label})" for t in s.torsion)
    return f"Z^{s.free_rank} + {torsion}"


def main():
    print("Structure sets as free rank plus labelled torsion summands:")
    for d in (5, 6, 7):
        for K in (1, 2, 3):
            print(f"  d={d}, K={K}:  {describe(d, K)}")
    print()

    d, K = 7, 2
    c = (d - 1) // 2
    sub = kernel_oracle(d, K)
    print(f"The kernel of the obstruction at d={d}, K={K} has order"
          f" {sub.order}")
    print(f"  with elementary divisors {sub.elementary_divisors} on"
          f" generators:")
    for row in sub.generators:
        print("   ", row)
    print()

    t = NormalInvariantVector(d, K, (0, 0, 1), (1, 0, 1))
    rho = rho_bracket(t)
    print(f"The vector t4={t.t4}, t2={t.t2} has rho in 4Z[chi]/I:"
          f" {is_in_4Z(rho)},")
    print("  so it lies in the kernel and gets exact coordinates:")
    for label, value in r_coordinates(t).items():
        print(f"    {label} = {value}")


if __name__ == "__main__":
    main()
