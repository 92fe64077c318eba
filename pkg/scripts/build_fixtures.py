"""Regenerate the bundled example fixtures in src/commdiag/fixtures/.

Run from the repository root:  python scripts/build_fixtures.py [OUTDIR]
Irrational entries are written with 17 significant digits; the comment
header of each file names the closed forms involved.
"""

import sys
from pathlib import Path

import numpy as np

from commdiag.generator import RNG_ALGORITHM, generate_noncommuting_pair
from commdiag.matfile import render_matrix

OUT = Path(__file__).resolve().parent.parent / "src" / "commdiag" / "fixtures"

i = 1j
r2, r3, r6, r10, r30 = (np.sqrt(k) for k in (2, 3, 6, 10, 30))

EX3_HAT_NOTE = "Example 3 permuted by P (P A P^T / P B P^T)"

FIXTURES = {
    # Example 1
    "ex1_a": ("Example 1 A (normal)", [], [[1 + i, 1, 1], [1, 1 + i, 1], [1, 1, 1 + i]]),
    "ex1_b": ("Example 1 B (magic square)", [], [[7, 0, 5], [2, 4, 6], [3, 8, 1]]),
    "ex1_s_a": (
        "Example 1 reference S_A, eigenvalues diag[3+i, i, i]",
        ["entries are (1/6) * {2 sqrt(3), 3 sqrt(2), sqrt(6)} combinations"],
        np.array([[2 * r3, 3 * r2, r6], [2 * r3, 0, -2 * r6], [2 * r3, -3 * r2, r6]]) / 6,
    ),
    "ex1_s_b": (
        "Example 1 reference S_B, eigenvalues diag[12, -2 sqrt(6), 2 sqrt(6)]",
        ["entries 2(1 +- sqrt(6)) and -(7 +- 2 sqrt(6))"],
        [[1, 5, 5], [1, 2 * (1 + r6), 2 * (1 - r6)], [1, -(7 + 2 * r6), -(7 - 2 * r6)]],
    ),
    "ex1_v_a": (
        "Example 1 reference V_A for Sigma_A = diag[sqrt(10), 1, 1], U = S_A",
        ["entries (1/30) * {sqrt(30)(3-i), 15 i sqrt(2), 5 i sqrt(6), 10 i sqrt(6)}"],
        np.array(
            [
                [r30 * (3 - i), -15 * i * r2, -5 * i * r6],
                [r30 * (3 - i), 0, 10 * i * r6],
                [r30 * (3 - i), 15 * i * r2, -5 * i * r6],
            ]
        )
        / 30,
    ),
    "ex1_v_b": (
        "Example 1 reference V_B for Sigma_B = diag[12, 4 sqrt(3), 2 sqrt(3)], U = S_A",
        ["entries (1/6) * {2 sqrt(3), sqrt(6), 3 sqrt(2)}"],
        np.array([[2 * r3, r6, 3 * r2], [2 * r3, -2 * r6, 0], [2 * r3, r6, -3 * r2]]) / 6,
    ),
    # Example 2
    "ex2_a": ("Example 2 A", [], [[0, 4, 0, 0], [1, 0, 0, 0], [0, 0, 0, 4], [0, 0, 1, 0]]),
    "ex2_b": ("Example 2 B", [], [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]),
    "ex2_s_a": (
        "Example 2 reference S_A, eigenvalues diag[2, 2, -2, -2]",
        [],
        [[2, 0, 2, 0], [1, 0, -1, 0], [0, 2, 0, 2], [0, 1, 0, -1]],
    ),
    "ex2_s_b": (
        "Example 2 reference S_B, eigenvalues diag[1, 1, -1, -1]",
        ["entries are +-sqrt(2)/2"],
        np.array([[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, -1], [1, 0, -1, 0]]) * r2 / 2,
    ),
    "ex2_t_a": (
        "Example 2 reference T_A = S_A^-1 B S_A",
        [],
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    ),
    "ex2_s_ta": ("Example 2 reference S_TA", [], [[1, 1, 0, 0], [-1, 1, 0, 0], [0, 0, 1, 1], [0, 0, -1, 1]]),
    "ex2_sa_sta": (
        "Example 2 reference S_A S_TA, D_A = diag[2,2,-2,-2], D_B~ = diag[-1,1,-1,1]",
        [],
        [[2, 2, 2, 2], [1, 1, -1, -1], [-2, 2, -2, 2], [-1, 1, 1, -1]],
    ),
    "ex2_t_b": (
        "Example 2 reference T_B = S_B^-1 A S_B",
        [],
        [[0, 1, 0, 0], [4, 0, 0, 0], [0, 0, 0, 1], [0, 0, 4, 0]],
    ),
    "ex2_s_tb": ("Example 2 reference S_TB", [], [[-1, 1, 0, 0], [2, 2, 0, 0], [0, 0, -1, 1], [0, 0, 2, 2]]),
    "ex2_sb_stb": (
        "Example 2 reference S_B S_TB, D_A~ = diag[-2,2,-2,2], D_B = diag[1,1,-1,-1]",
        [],
        [[2, 2, 2, 2], [-1, 1, -1, 1], [2, 2, -2, -2], [-1, 1, 1, -1]],
    ),
    "ex2_p_b": ("Example 2 reference P_B", [], [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]]),
    "ex2_v_a": (
        "Example 2 reference V_A with U = I, Sigma_A = diag[4, 1, 4, 1] (V_B = B, Sigma_B = I)",
        [],
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    ),
    "ex2_v_a_alt": (
        "Example 2 alternate V_A with U = S_B, Sigma_A = diag[1, 4, 1, 4]",
        ["entries are +-sqrt(2)/2"],
        np.array([[1, 0, 1, 0], [0, 1, 0, 1], [1, 0, -1, 0], [0, 1, 0, -1]]) * r2 / 2,
    ),
    "ex2_v_b_alt": (
        "Example 2 alternate V_B with U = S_B, Sigma_B = I",
        ["entries are +-sqrt(2)/2"],
        np.array([[0, 1, 0, -1], [1, 0, -1, 0], [0, 1, 0, 1], [1, 0, 1, 0]]) * r2 / 2,
    ),
    # Example 3
    "ex3_a": (
        "Example 3 A (real symmetric)",
        [],
        [
            [1, 0, 2, 3, 0, 4],
            [0, 3, 0, 0, 7, 0],
            [2, 0, 1, 4, 0, 3],
            [3, 0, 4, 1, 0, 2],
            [0, 7, 0, 0, 3, 0],
            [4, 0, 3, 2, 0, 1],
        ],
    ),
    "ex3_b": (
        "Example 3 B (complex symmetric)",
        [],
        np.block([[i * np.ones((3, 3)), np.ones((3, 3))], [np.ones((3, 3)), i * np.ones((3, 3))]]),
    ),
    "ex3_s_a": (
        "Example 3 reference S_A, eigenvalues diag[0, -4, -4, -2, 10, 10]",
        ["entries (1/4) * {2, sqrt(2)}"],
        np.array(
            [
                [-2, r2, r2, -2, r2, r2],
                [0, 2, -2, 0, 2, -2],
                [2, r2, r2, 2, r2, r2],
                [2, -r2, -r2, -2, r2, r2],
                [0, -2, 2, 0, 2, -2],
                [-2, -r2, -r2, 2, r2, r2],
            ]
        )
        / 4,
    ),
    "ex3_s_b": (
        "Example 3 reference S_B, eigenvalues diag[-3+3i, 0, 0, 3+3i, 0, 0]",
        ["entries (sqrt(6)/12) * {2, +-sqrt(3) +- 1}"],
        np.array(
            [
                [2, 2, 2, 2, 2, 2],
                [2, -r3 - 1, r3 - 1, 2, -r3 - 1, r3 - 1],
                [2, r3 - 1, -r3 - 1, 2, r3 - 1, -r3 - 1],
                [-2, -2, -2, 2, 2, 2],
                [-2, r3 + 1, -r3 + 1, 2, -r3 - 1, r3 - 1],
                [-2, -r3 + 1, r3 + 1, 2, r3 - 1, -r3 - 1],
            ]
        )
        * r6
        / 12,
    ),
    "ex3_sa_sta": (
        "Example 3 reference S_A S_TA (orthogonal common eigenvector matrix)",
        ["entries (sqrt(3)/6) * {sqrt(3), sqrt(2), 1, 2}"],
        np.array(
            [
                [-r3, r2, 1, -r3, r2, 1],
                [0, r2, -2, 0, r2, -2],
                [r3, r2, 1, r3, r2, 1],
                [r3, -r2, -1, -r3, r2, 1],
                [0, -r2, 2, 0, r2, -2],
                [-r3, -r2, -1, r3, r2, 1],
            ]
        )
        * r3
        / 6,
    ),
    "ex3_v_a": (
        "Example 3 reference V_A for U = S_A S_TA, Sigma_A = diag[0, 4, 4, 2, 10, 10]",
        ["entries (sqrt(3)/6) * {sqrt(3), sqrt(2), 1, 2}"],
        np.array(
            [
                [r3, -r2, -1, r3, r2, 1],
                [0, -r2, 2, 0, r2, -2],
                [-r3, -r2, -1, -r3, r2, 1],
                [-r3, r2, 1, r3, r2, 1],
                [0, r2, -2, 0, r2, -2],
                [r3, r2, 1, -r3, r2, 1],
            ]
        )
        * r3
        / 6,
    ),
    "ex3_v_b": (
        "Example 3 reference V_B for U = S_A S_TA, Sigma_B = diag[0, 3 sqrt(2), 0, 0, 3 sqrt(2), 0]",
        ["entries (sqrt(3)/6) * {sqrt(3), 1 +- i, 1, 2}"],
        np.array(
            [
                [-r3, -1 - i, 1, -r3, 1 - i, 1],
                [0, -1 - i, -2, 0, 1 - i, -2],
                [r3, -1 - i, 1, r3, 1 - i, 1],
                [r3, 1 + i, -1, -r3, 1 - i, 1],
                [0, 1 + i, 2, 0, 1 - i, -2],
                [-r3, 1 + i, -1, r3, 1 - i, 1],
            ]
        )
        * r3
        / 6,
    ),
    "ex3_p": (
        "Example 3 permutation P (one-line image under column convention: 3 0 2 4 5 1)",
        [],
        [
            [0, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 1],
            [0, 0, 1, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 1, 0],
        ],
    ),
    "ex3_a_hat": (
        "Example 3 reference A-hat = P A P^T",
        [],
        [
            [3, 0, 0, 0, 0, 7],
            [0, 1, 3, 4, 2, 0],
            [0, 3, 1, 2, 4, 0],
            [0, 4, 2, 1, 3, 0],
            [0, 2, 4, 3, 1, 0],
            [7, 0, 0, 0, 0, 3],
        ],
    ),
    "ex3_b_hat": (
        "Example 3 reference B-hat = P B P^T",
        [],
        [
            [i, 1, i, i, 1, 1],
            [1, i, 1, 1, i, i],
            [i, 1, i, i, 1, 1],
            [i, 1, i, i, 1, 1],
            [1, i, 1, 1, i, i],
            [1, i, 1, 1, i, i],
        ],
    ),
}


def main(out=OUT):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    for name, (title, notes, value) in FIXTURES.items():
        text = render_matrix(np.array(value, dtype=complex), [title, *notes], digits=17)
        (out / f"{name}.txt").write_text(text, encoding="utf-8", newline="\n")
    a, _ = generate_noncommuting_pair(seed=7, n=3)
    (out / "random_noncommuting.txt").write_text(
        render_matrix(a, [f"dense random 3x3, {RNG_ALGORITHM} seed 7; does not commute with ex1_a"]),
        encoding="utf-8",
        newline="\n",
    )


if __name__ == "__main__":
    main(*sys.argv[1:])
