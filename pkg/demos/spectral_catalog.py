"""Tour of the spectral-function catalog.

Walks the deformation families, prints their level spectra, and checks
each case against its defining relation  a a' - s a'a = g(N).
"""

from deformalg import (
    CaseId,
    defining_relation,
    eval_K,
    forward_delta,
    hamiltonian_eigenvalue,
    make_case,
    relation_residual,
)

CASES = [
    make_case(CaseId.CLASSICAL),
    make_case(CaseId.ARIK_COON, q=0.5),
    make_case(CaseId.MACFARLANE_BIEDENHARN, q=2.0),
    make_case(CaseId.CHUNG, q=1.5, alpha=2.0, beta=0.5),
    make_case(CaseId.BORZOV, q=0.7, alpha=2.0, beta=0.0, gamma=-1.0),
    make_case(CaseId.NONLINEAR, alpha=1.0, beta=2.0),
]


def label(K):
    params = ", ".join(f"{k}={v:g}" for k, v in K.params().items())
    return f"{K.case_id.value}({params})"


def main():
    for K in CASES:
        print("=" * 72)
        print(label(K))
        print(f"  {'n':>2}  {'K(n)':>14}  {'K(n+1)-K(n)':>14}  {'H eigenvalue':>14}")
        for n in range(6):
            print(
                f"  {n:>2}  {eval_K(K, n):>14.8f}  {forward_delta(K, n):>14.8f}"
                f"  {hamiltonian_eigenvalue(K, n):>14.8f}"
            )
        residual = relation_residual(K, defining_relation(K), n_max=24)
        print(f"  defining-relation residual over n = 0..24: {residual:.3e}")

    print("=" * 72)
    print("q -> 1 limits collapse every family onto K(n) = n:")
    for q in (1.0 - 1e-8, 1.0, 1.0 + 1e-8):
        K = make_case(CaseId.ARIK_COON, q=q)
        print(f"  geometric bracket, q = {q!r}: K(10) = {eval_K(K, 10)!r}")


if __name__ == "__main__":
    main()
