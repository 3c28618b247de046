"""Level-wise valuations, normal forms, and the membership criteria.

Run as: python3 demos/valuations_tour.py
"""

from lensring import (
    criterion_necessary_search,
    criterion_sufficient,
    element_f,
    evaluate_at_f_squared,
    is_in_4Z,
    make_element,
    membership_bound,
    normal_form,
    project,
    valuation_to_text,
    w_l,
)


def main():
    K = 4
    f = element_f(K)
    one = make_element(K, [1])

    print(f"Valuations of familiar elements at K = {K}:")
    rows = [
        ("2", make_element(K, [2])),
        ("f", f),
        ("f - 1", f - one),
        ("f + 1", f + one),
        ("f^2 - 1", f * f - one),
        ("f^2 + 1", f * f + one),
    ]
    header = "  {:10s}" + " {:>9s}" * K
    print(header.format("element", *[f"l={l}" for l in range(K)]))
    for name, g in rows:
        vals = [valuation_to_text(w_l(g, l)) for l in range(K)]
        print(header.format(name, *vals))
    print()

    print("A normal form witnesses each valuation: for pr_2(f^2 - 1),")
    nf = normal_form(project(f * f - one, 2))
    print(f"  a={nf.a}, b={nf.b}, u={nf.u}, v1={nf.v1}, v2={nf.v2}")
    print("  so w_2 = a + b/2^2 =", valuation_to_text(w_l(f * f - one, 2)))
    print()

    print("Membership bounds 2 + K - l - 2^(-l) at this level:")
    print(" ", [str(membership_bound(K, l)) for l in range(K)])
    print()

    g = make_element(K, [1 << (K + 2)])
    print(f"2^{K + 2} clears every bound, so the sufficient criterion")
    print("  proves membership:", criterion_sufficient(g).value,
          "and indeed", is_in_4Z(g))
    print()

    g = evaluate_at_f_squared([1], 3, 1)
    print("8 f'_1 f at K = 3 is not in 4Z[chi]/I; the witness scan over")
    verdict, j, l_star = criterion_necessary_search(g)
    print(f"  h = (1 - chi)^j finds j = {j} deficient only at l = {l_star}:")
    print("  verdict:", verdict.value, "and indeed", is_in_4Z(g))


if __name__ == "__main__":
    main()
