"""A quick tour of the quotient ring and its distinguished elements.

Run as: python3 demos/ring_tour.py
"""

from lensring import (
    conjugate,
    eigenspace_test,
    element_f,
    element_f_k,
    element_f_prime,
    element_to_text,
    invert,
    is_in_4Z,
    make_element,
    project,
    crt_reconstruct,
)


def main():
    K = 3
    n = 1 << K
    one = make_element(K, [1])
    chi = make_element(K, [0, 1])

    print(f"Working at level K = {K}, so chi has order N = {n}.")
    print("The norm 1 + chi + ... + chi^(N-1) vanishes:",
          make_element(K, [1] * n).is_zero())
    print()

    f = element_f(K)
    print("f = (1 + chi)/(1 - chi) has coefficients")
    print(" ", element_to_text(f))
    print("check: (1 - chi) * f == 1 + chi:",
          (one - chi) * f == one + chi)
    print("f is in the odd eigenspace of conjugation:",
          eigenspace_test(f, "-"), "and conj(f) == -f:",
          conjugate(f) == -f)
    print()

    print("f^2 - 1 = 4 chi / (1 - chi)^2:")
    lhs = f * f - one
    rhs = 4 * chi * invert((one - chi) ** 2)
    print("  equal:", lhs == rhs)
    print("  8f is integral with entries", [str(c) for c in (8 * f).coeffs])
    print("  is 8f in 4Z[chi]/I?", is_in_4Z(8 * f))
    print()

    print("Each odd k gives f_k = (1 + chi^k)/(1 - chi^k) = f * f'_k with")
    print("f'_k integral:")
    for k in (1, 3, 5, 7):
        fk = element_f_k(K, k)
        fpk = element_f_prime(K, k)
        print(f"  k={k}: f_k == f * f'_k: {fk == f * fpk},"
              f" f'_k integral: {fpk.is_integral()}")
    print()

    g = make_element(K, [3, -2, 0, 1, 5, 0, 0, -4])
    parts = [project(g, l) for l in range(K)]
    print("Splitting an element across the levels l = 0..K-1 and gluing it")
    print("back together recovers it exactly:",
          crt_reconstruct(parts) == g)


if __name__ == "__main__":
    main()
