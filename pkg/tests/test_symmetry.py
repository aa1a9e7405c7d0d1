"""Tests for permutation parsing, invariance, orbit collapse, and lifting."""

import pytest

from nullcert.assemble import assemble, extract_certificate
from nullcert.certificate import verify
from nullcert.encode import EncodingOptions, encode_coloring
from nullcert.graphs import Graph, gen_complete, gen_wheel
from nullcert.linsolve import solve
from nullcert.poly import FieldSpec, Polynomial, parse_poly
from nullcert.symmetry import (
    PermutationSet,
    SymmetryError,
    assemble_orbit,
    check_invariance,
    group_order,
    lift_solution,
    parse_generators,
)

GF2 = FieldSpec(2)

# the 3-cycle on vertices 2,3,4 as 0-based images
ROT234 = PermutationSet.make(4, [(0, 2, 3, 1)])


def k4_full():
    return encode_coloring(gen_complete(4), EncodingOptions())


def k4_pre():
    return encode_coloring(gen_complete(4), EncodingOptions(preprocess=True))


def test_parse_single_cycle():
    perms = parse_generators("(2,3,4)", 4)
    assert perms.generators == ((0, 2, 3, 1),)


def test_parse_product_of_cycles():
    perms = parse_generators("(1,2)(3,4)", 4)
    assert perms.generators == ((1, 0, 3, 2),)


def test_parse_whitespace_and_comments():
    text = "  ( 2 , 3 , 4 )  \n\n# a comment\n(1,2) (3,4)\n"
    perms = parse_generators(text, 4)
    assert perms.generators == ((0, 2, 3, 1), (1, 0, 3, 2))


def test_parse_identity_normalized_away():
    perms = parse_generators("(1)\n(2,3,4)", 4)
    assert perms.generators == ((0, 2, 3, 1),)
    assert PermutationSet.make(3, [(0, 1, 2)]).generators == ()


def test_parse_errors():
    with pytest.raises(SymmetryError, match="line 1"):
        parse_generators("(2,3", 4)
    with pytest.raises(SymmetryError, match="outside"):
        parse_generators("(4,5)", 4)
    with pytest.raises(SymmetryError, match="repeated"):
        parse_generators("(1,2)(2,3)", 4)
    with pytest.raises(SymmetryError, match="expected"):
        parse_generators("1,2", 4)
    with pytest.raises(SymmetryError, match="bad cycle"):
        parse_generators("(1,x)", 4)


def test_make_rejects_non_bijection():
    with pytest.raises(SymmetryError, match="not a permutation"):
        PermutationSet.make(3, [(0, 0, 1)])


def test_group_orders():
    assert group_order(ROT234) == 3
    assert group_order(PermutationSet.make(4, [])) == 1
    s3 = PermutationSet.make(3, [(1, 0, 2), (1, 2, 0)])
    assert group_order(s3) == 6
    assert group_order(s3, cap=5) is None
    rot5 = parse_generators("(1,2,3,4,5)", 5)
    assert group_order(rot5) == 5


def test_invariance_full_k4():
    assert check_invariance(k4_full(), ROT234)


def test_invariance_broken_by_preprocessing():
    swap12 = parse_generators("(1,2)", 4)
    assert not check_invariance(k4_pre(), swap12)
    # but a group fixing the kept vertex is fine
    assert check_invariance(k4_pre(), ROT234)


def test_invariance_identity_always_true():
    assert check_invariance(k4_pre(), PermutationSet.make(4, []))


def test_invariance_ground_set_mismatch():
    with pytest.raises(SymmetryError, match="ground set"):
        check_invariance(k4_full(), PermutationSet.make(3, []))


def expand(m):
    return m.expanded()


def test_k4_orbit_matrix_shape_and_keys():
    orb = assemble_orbit(k4_pre(), 1, Polynomial.one(GF2, 4), ROT234, pruning="graded:3")
    assert (orb.system.n_rows, orb.system.n_cols) == (9, 9)
    assert [expand(m) for m in orb.row_orbits] == [
        (), (0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 2),
        (1, 1, 1), (1, 1, 2), (1, 1, 3), (1, 2, 3),
    ]
    assert [(ck.poly_index, expand(ck.shift)) for ck in orb.col_orbits] == [
        (0, ()), (1, (0,)), (1, (1,)), (1, (2,)), (1, (3,)),
        (4, (0,)), (4, (1,)), (4, (2,)), (4, (3,)),
    ]
    assert orb.group_order == 3
    assert orb.coprime_verified
    # rhs is 1 exactly on the constant-monomial orbit
    assert orb.system.rhs == (1,) + (0,) * 8


def test_k4_orbit_entries_are_full_matrix_sums():
    F = k4_pre()
    g = Polynomial.one(GF2, 4)
    orb = assemble_orbit(F, 1, g, ROT234, pruning="graded:3")
    full = assemble(F, 1, g, pruning="graded:3")
    full_dense = [[0] * full.system.n_cols for _ in range(full.system.n_rows)]
    for r, cols in enumerate(full.system.rows):
        for c, v in cols:
            full_dense[r][c] = v
    row_pos = {m: r for r, m in enumerate(full.row_keys)}
    # defining sum over column-orbit members at the row representative,
    # checked over the integers, then reduced mod 2 against the orbit system
    members = [[] for _ in orb.col_orbits]
    for j in range(full.system.n_cols):
        members[orb.col_orbit_index[j]].append(j)
    orbit_dense = [[0] * 9 for _ in range(9)]
    for r, cols in enumerate(orb.system.rows):
        for c, v in cols:
            orbit_dense[r][c] = v
    for r_pos, rep in enumerate(orb.row_orbits):
        full_row = full_dense[row_pos[rep]]
        for c_pos in range(9):
            integer_sum = sum(full_row[j] for j in members[c_pos])
            assert orbit_dense[r_pos][c_pos] == integer_sum % 2
    # spot values: three members hit x1^3 under c12^1, two members hit
    # x1*x2^2 under c23^1 (vanishing mod 2)
    x1cubed = row_pos[orb.row_orbits[1]]
    assert sum(full_dense[x1cubed][j] for j in members[1]) == 3
    assert orbit_dense[1][1] == 1
    x1x2sq = row_pos[orb.row_orbits[3]]
    assert sum(full_dense[x1x2sq][j] for j in members[5]) == 2
    assert orbit_dense[3][5] == 0
    assert orbit_dense[3] == [0, 1, 1, 0, 0, 0, 0, 0, 0]


def test_k4_orbit_solution_lifts_to_certificate():
    F = k4_pre()
    g = Polynomial.one(GF2, 4)
    orb = assemble_orbit(F, 1, g, ROT234, pruning="graded:3")
    res = solve(orb.system)
    assert res.consistent
    y = lift_solution(orb, res.solution)
    assert len(y) == 25
    # constant on orbits by construction
    for j, oc in enumerate(orb.col_orbit_index):
        assert y[j] == res.solution[oc]
    cert = extract_certificate(F, orb.full_col_keys, y, g)
    assert verify(cert)


def test_full_encoding_orbit_system():
    # with all four vertex polynomials the fixed vertex splits off its own
    # column orbit, giving one more column than the preprocessed table
    F = k4_full()
    g = Polynomial.one(GF2, 4)
    orb = assemble_orbit(F, 1, g, ROT234, pruning="graded:3")
    assert (orb.system.n_rows, orb.system.n_cols) == (9, 10)
    res = solve(orb.system)
    assert res.consistent
    cert = extract_certificate(F, orb.full_col_keys, lift_solution(orb, res.solution), g)
    assert verify(cert)


def test_identity_group_gives_plain_system():
    F = k4_pre()
    g = Polynomial.one(GF2, 4)
    orb = assemble_orbit(F, 1, g, PermutationSet.make(4, []), pruning="graded:3")
    plain = assemble(F, 1, g, pruning="graded:3")
    assert orb.system.rows == plain.system.rows
    assert orb.system.rhs == plain.system.rhs
    assert orb.row_orbits == plain.row_keys
    assert orb.col_orbits == plain.col_keys
    assert orb.group_order == 1 and orb.coprime_verified
    ybar = tuple(range(orb.system.n_cols))
    assert lift_solution(orb, ybar) == ybar


def test_orbit_matrix_well_defined_across_generator_choice():
    F = k4_pre()
    g = Polynomial.one(GF2, 4)
    a = assemble_orbit(F, 1, g, parse_generators("(2,3,4)", 4), pruning="graded:3")
    b = assemble_orbit(F, 1, g, parse_generators("(2,4,3)", 4), pruning="graded:3")
    assert a.system.rows == b.system.rows
    assert a.system.rhs == b.system.rhs
    assert a.col_orbit_index == b.col_orbit_index


def test_lift_zero_is_zero():
    orb = assemble_orbit(k4_pre(), 1, Polynomial.one(GF2, 4), ROT234, pruning="graded:3")
    assert lift_solution(orb, (0,) * 9) == (0,) * 25
    with pytest.raises(SymmetryError, match="length"):
        lift_solution(orb, (0,) * 8)


def test_orbit_rejects_non_invariant_system():
    with pytest.raises(SymmetryError, match="vertex:1"):
        assemble_orbit(
            k4_pre(), 1, Polynomial.one(GF2, 4), parse_generators("(1,2)", 4),
            pruning="graded:3",
        )


def test_orbit_rejects_moving_target():
    g = parse_poly("x1^3", GF2, 4)
    with pytest.raises(SymmetryError, match="not fixed"):
        assemble_orbit(k4_full(), 1, g, parse_generators("(1,2)", 4), pruning="graded:3")


def test_cycle_graph_orbit_consistency_matches_full():
    # five-cycle: 3-colorable, so both systems must be inconsistent; the
    # group order 5 is odd, making the orbit verdict conclusive over GF(2)
    c5 = Graph.make(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    F = encode_coloring(c5, EncodingOptions())
    g = Polynomial.one(GF2, 5)
    rot = parse_generators("(1,2,3,4,5)", 5)
    orb = assemble_orbit(F, 1, g, rot, pruning="graded:3")
    assert orb.coprime_verified and orb.group_order == 5
    assert not solve(orb.system).consistent
    assert not solve(assemble(F, 1, g, pruning="graded:3").system).consistent


def test_wheel_rim_rotation_positive_case():
    w5 = gen_wheel(5)
    F = encode_coloring(w5, EncodingOptions())
    g = Polynomial.one(GF2, 6)
    rot = parse_generators("(1,2,3,4,5)", 6)
    assert check_invariance(F, rot)
    orb = assemble_orbit(F, 1, g, rot, pruning="graded:3")
    assert orb.system.n_cols < assemble(F, 1, g, pruning="graded:3").system.n_cols
    res = solve(orb.system)
    assert res.consistent
    cert = extract_certificate(F, orb.full_col_keys, lift_solution(orb, res.solution), g)
    assert verify(cert)
