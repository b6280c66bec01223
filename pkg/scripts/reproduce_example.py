"""Print the worked semigroup example and the regular-ring golden values.

    python3 scripts/reproduce_example.py
"""

from reesmult import (
    ReesInstance,
    ideal_from_gens,
    maximal_ideal,
    minimal_multiplicity_verdict,
    mu,
    multiplicity,
    numerical_semigroup,
    polynomial_local,
    power,
)


def row(label, instance, oracle):
    v = minimal_multiplicity_verdict(instance, with_oracle=oracle)
    direct = f"  direct e={v.e_N_oracle} mu={v.mu_N_oracle}" if oracle else ""
    flag = "holds" if v.equation_holds else "fails"
    print(f"{label:<28} dim={v.dim} mu(N)={v.mu_N:<3} e(N)={v.e_N:<3} bound={v.bound:<3} {flag}{direct}")


def main():
    S = numerical_semigroup(4, 5, 7)
    m = maximal_ideal(S)
    I1, I2 = ideal_from_gens(S, [4]) + power(m, 2), power(m, 2)
    print(f"k[[t^4,t^5,t^7]]: mu(m)={mu(m)} e(m)={multiplicity(m)} (minimal multiplicity would need e = 3)")
    print(f"I1 = {I1}, I2 = {I2}")
    row("B(I1, I2)", ReesInstance(S, (I1, I2)), True)
    row("B(I1)", ReesInstance(S, (I1,)), True)
    for d, r in [(2, 1), (3, 1), (3, 2)]:
        R = polynomial_local(d)
        mm = maximal_ideal(R)
        row(f"regular d={d}, B(m, m^{r})", ReesInstance(R, (mm, power(mm, r))), d == 2)
    R = polynomial_local(2)
    for r in range(1, 5):
        row(f"regular d=2, B(m, (x, y^{r}))",
            ReesInstance(R, (maximal_ideal(R), ideal_from_gens(R, [(1, 0), (0, r)]))), False)


if __name__ == "__main__":
    main()
