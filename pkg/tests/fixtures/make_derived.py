"""Regenerate ``derived.json`` from the brute-force oracles.

    python3 tests/fixtures/make_derived.py

Only ``tests/oracles.py`` is used; the package is never imported.
"""
import json
import pathlib
import sys

HERE = pathlib.Path(__file__).resolve().parent
sys.path.insert(0, str(HERE.parent))

import oracles as o  # noqa: E402


def _slots(d):
    return {f"{k[0]},{k[1]}": v for k, v in sorted(d.items())}


def _frac(x):
    return str(x) if x.denominator != 1 else x.numerator


def dimension_sweep():
    """Every parity split of V (dim <= 3) and of U, n <= 4."""
    rows = []
    for total in range(1, 4):
        for odd in range(total + 1):
            even = total - odd
            basis = o.space(odd=odd, even=even)
            for uo in range(odd + 1):
                for ue in range(even + 1):
                    sub = list(range(uo)) + list(range(odd, odd + ue))
                    U = o.space(odd=uo, even=ue)
                    W = o.space(odd=odd - uo, even=even - ue)
                    for n in range(5):
                        fil = o.filtration_dims(basis, sub, n)
                        expected = [o.sym_dim(U, i) * o.sym_dim(W, n - i) for i in range(n + 1)]
                        rows.append({"odd": odd, "even": even, "u_odd": uo, "u_even": ue, "n": n, "fil": fil, "graded": expected})
    return rows


def build():
    out = {}
    out["tensor_convolution"] = _slots(o.tensor_slots({(1, 1): 2, (1, 2): 1}, {(1, 1): 2, (1, 2): 1}))
    ker = o.kernel_basis([[1, 1], [1, 1]], 2)
    out["kernel_2x2"] = {"dim": len(ker), "vector": [_frac(x) for x in ker[0]]}
    out["symmetrizer_rank_two_odd_lines"] = o.rank(o.symmetrizer_rows(o.space(odd=2), 2))
    out["sym_dims_odd2"] = o.sym_rank_sweep(o.space(odd=2), 3)
    out["sym_dim_o2e1_n2"] = o.sym_dim(o.space(odd=2, even=1), 2)
    out["sym_dims_odd_line"] = o.sym_rank_sweep(o.space(odd=1), 3)
    out["sym_dims_mixed_o1e1"] = o.sym_rank_sweep(o.space(odd=1, even=1), 6)
    out["cosym_top_split_ranks_odd3"] = {
        f"{a},{3 - a}": _split_rank(3, a) for a in range(4)
    }
    out["sym2_of_two_odd_lines_vs_product"] = [o.sym_dim(o.space(odd=2), 2), o.sym_dim(o.space(odd=1), 1) ** 2]
    out["primitive_dims_odd"] = {str(k): o.primitive_dims(k) for k in range(1, 5)}
    out["extension_of_2id"] = _scalar_extension(2, o.space(odd=2), 2)
    out["dual_group_ring_z2_comul"] = _dual_comul_z2()
    out["fil_tensor_line_in_plane_n2"] = _tensor_fil_dims(2, [0], 2)
    out["fil_sym_odd_line_in_odd_plane_n2"] = o.filtration_dims(o.space(odd=2), [0], 2)
    out["fil_sym_even_line_in_even_plane_n2"] = o.filtration_dims(o.space(even=2), [0], 2)
    out["gr_odd_line_in_odd3_n2"] = {
        "fil": o.filtration_dims(o.space(odd=3), [0], 2),
        "target_i1": o.sym_dim(o.space(odd=1), 1) * o.sym_dim(o.space(odd=2), 1),
    }
    out["corcup_odd_line_odd_plane_n2"] = {
        "sym2_V": o.sym_dim(o.space(odd=3), 2),
        "sym1_W_x_U": o.sym_dim(o.space(odd=2), 1) * 1,
        "sym2_W": o.sym_dim(o.space(odd=2), 2),
    }
    out["filtration_dimension_sweep"] = dimension_sweep()
    ab = [(1, 1)] * 2
    out["betti_g1_r0"] = o.sym_rank_sweep([(1, 1)] * 2, 2)
    out["betti_g1_r1"] = o.betti_by_census(ab + [(1, 2)])
    out["mult_by_2_g1_r0"] = [2 ** len(S) for i in range(3) for S in o.odd_monomials(ab, i)]
    diag = out["mult_by_2_g1_r0"]
    out["lagrange_p1_g1_r0_n2"] = [_frac(x) for x in o.lagrange_on_diagonal(diag, 2, 1, 2)]
    diag3 = [3 ** len(S) for i in range(4) for S in o.odd_monomials(ab + [(1, 2)], i)]
    sums = [sum(o.lagrange_on_diagonal(diag3, 3, i, 3)[k] for i in range(4)) for k in range(len(diag3))]
    out["lagrange_sum_g1_r1_n3"] = [_frac(x) for x in sums]
    out["weights_g1_r1_h2"] = {str(k): v for k, v in sorted(o.weight_census(ab + [(1, 2)], 2).items())}
    pm = o.pairing_matrix(2, 1)
    out["pairing_g1_r0_h1"] = {"matrix": pm, "det": _frac(o.det(pm))}
    out["pairing_symmetry_signs"] = {
        str(N): all(
            o.pairing_matrix(N, i) == [[(-1) ** (i * (N - i)) * x for x in row] for row in zip(*o.pairing_matrix(N, N - i))]
            for i in range(N + 1)
        )
        for N in range(1, 6)
    }
    b1, b2 = o.betti_by_census(ab), o.betti_by_census([(1, 2)])
    out["product_e_x_gm_betti"] = [sum(b1[k] * b2[n - k] for k in range(n + 1) if k < len(b1) and n - k < len(b2)) for n in range(4)]
    out["one_motive_d1_r1_weights"] = {str(k): v for k, v in sorted(o.weight_census([(1, 0), (1, 2)], 1).items())}
    out["det_orders_signed_permutations"] = sorted({_det_order(m) for n in range(1, 4) for m in o.signed_permutation_matrices(n)})
    out["pi0_betti"] = {str(c): o.betti_by_census([], c) for c in (1, 2, 3)}
    return out


def _split_rank(n, a):
    """Rank of the (a, n-a) component of the shuffle coproduct on Lambda^n of n generators."""
    import itertools

    src = list(itertools.combinations(range(n), n))
    tgt = [(S, T) for S in itertools.combinations(range(n), a) for T in itertools.combinations(range(n), n - a)]
    rows = []
    for S, T in tgt:
        rows.append([o.wedge_sign(S, T) if set(S) | set(T) == set(M) else 0 for M in src])
    return o.rank(rows)


def _scalar_extension(c, basis, n_max):
    """Sym^n(c id): the factor x with Sym(c id) S = x S on the symmetrizer image."""
    out = []
    for n in range(n_max + 1):
        if n == 0:
            out.append(1)
            continue
        S = o.symmetrizer_rows(basis, n)
        scaled = [[c**n * x for x in row] for row in S]
        ratio = next((a / b for ra, rb in zip(scaled, S) for a, b in zip(ra, rb) if b), None)
        out.append(int(ratio) if ratio is not None else None)
    return out


def _dual_comul_z2():
    """Transpose of the multiplication of the group ring of Z/2 (columns g(x)h, rows k)."""
    table = [[0, 1], [1, 0]]
    mul = [[int(table[g][h] == k) for g in range(2) for h in range(2)] for k in range(2)]
    return [list(col) for col in zip(*mul)]


def _tensor_fil_dims(d, sub, n):
    import itertools

    words = list(itertools.product(range(d), repeat=n))
    return [sum(1 for w in words if sum(1 for x in w if x in sub) >= i) for i in range(n + 2)]


def _det_order(m):
    return o.matrix_order([[o.det(m)]])


if __name__ == "__main__":
    data = build()
    (HERE / "derived.json").write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(data)} fixtures")
