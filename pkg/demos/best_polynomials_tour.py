"""The p, q, r polynomial families and the divisibility ladder.

Run as: python3 demos/best_polynomials_tour.py
"""

from lensring import (
    evaluate_at_f_squared,
    is_in_4Z,
    p_k,
    q_n,
    r_minus,
    r_plus,
    split_n,
)


def member(q, K, k=1, m=1, times=0):
    g = evaluate_at_f_squared(q, K, k, "odd", m, times_one_minus_chi=times)
    return is_in_4Z(g)


def main():
    print("The p family collapses powers of (1 - chi):")
    for k in range(1, 4):
        print(f"  p_{k} = {p_k(k)}")
    print()

    print("q_n = p_1 ... p_a (x - 1)^b where 2^a + b = n + 1:")
    for n in range(6):
        a, b = split_n(n)
        print(f"  n={n}: a={a}, b={b}, q_{n} = {q_n(n)}")
    print()

    print("Evaluating 8 f'_1 f q_n(f^2) and testing membership in 4Z[chi]/I:")
    for n in range(4):
        a, b = split_n(n)
        row = []
        for K in (2 * n + 1, 2 * n + 2, 2 * n + 3):
            row.append(f"K={K}: {member(q_n(n), K)}")
        print(f"  n={n} (b={b}):", ", ".join(row))
    print("  membership always holds at K = 2n+1, holds at K = 2n+2")
    print("  exactly when b = 0, and always fails at K = 2n+3.")
    print()

    print("The unique correction that repairs level 2n+2 defines r^-_n:")
    for n in range(7):
        record = r_minus(n)
        bits = record.chosen_bits or "none needed"
        print(f"  r^-_{n} = {record.polynomial}   (bits: {bits})")
    print()

    print("The even-degree family is the image under the beta transform:")
    for n in range(5):
        print(f"  r^+_{n} = {r_plus(n)}")
    print()

    n = 2
    print(f"Check for n = {n}: 8 f'_1 f r^-_{n}(f^2) is a member at"
          f" K = {2 * n + 2}:", member(r_minus(n).polynomial, 2 * n + 2))


if __name__ == "__main__":
    main()
