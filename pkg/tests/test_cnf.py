import itertools

import pytest

from pmvc.cnf import (
    CnfBuilder,
    CnfError,
    CnfFormula,
    VarMap,
    count_greater,
    exact_k,
    exact_one,
    format_name,
    parse_dimacs,
    parse_name,
    totalizer,
    write_dimacs,
    xor_to_cnf,
)
from pmvc.solvers import enumerate_models


def fresh(n, prefix="x"):
    vm = VarMap()
    xs = [vm.named(prefix, i) for i in range(n)]
    return vm, xs


def projected_models(builder, keys):
    got = {}
    for m in enumerate_models(builder.to_formula()):
        key = tuple(m[k] for k in keys)
        got[key] = got.get(key, 0) + 1
    return got


# --------------------------------------------------------------------------
# VarMap

def test_varmap_dense_ids_and_aux_ordering():
    vm = VarMap()
    a = vm.named("vc", 1, 1)
    b = vm.named("T", 1)
    assert (a, b) == (1, 2)
    assert vm.named_count == 2
    x = vm.aux("gadget")
    assert x == 3 and vm.var_count == 3
    with pytest.raises(CnfError, match="after aux"):
        vm.named("late", 1)
    vm2 = VarMap()
    vm2.named("a")
    with pytest.raises(CnfError, match="already"):
        vm2.named("a")


def test_varmap_json_round_trip():
    vm = VarMap()
    vm.named("vc", 2, 1)
    vm.named("T", 2)
    vm.aux("odd")
    data = vm.to_json()
    back = VarMap.from_json(data)
    assert back.get("vc", 2, 1) == 1
    assert back.get("T", 2) == 2
    assert back.get("aux", "odd", 0) == 3
    assert back.named_count == 2
    assert back.var_count == 3


def test_name_formatting():
    assert format_name(("vc", 3, 2)) == "vc(3,2)"
    assert parse_name("vc(3,2)") == ("vc", 3, 2)
    assert parse_name("aux(cmp,7)") == ("aux", "cmp", 7)
    assert parse_name("plain") == ("plain",)


# --------------------------------------------------------------------------
# builder validation

def test_builder_rejects_bad_clauses():
    vm, xs = fresh(2)
    b = CnfBuilder(vm)
    with pytest.raises(CnfError, match="unallocated"):
        b.add(5)
    with pytest.raises(CnfError, match="tautological"):
        b.add(xs[0], -xs[0])
    with pytest.raises(CnfError, match="empty"):
        b.add_clause([])
    b.add(xs[0], xs[0], xs[1])  # duplicates collapse
    assert b.clauses == [(xs[0], xs[1])]


def test_no_clause_mentions_unallocated_ids_structurally():
    vm, xs = fresh(8)
    b = CnfBuilder(vm)
    exact_one(b, xs)
    xor_to_cnf(b, xs[0], xs[1:])
    count_greater(b, xs[:4], xs[4:])
    exact_k(b, xs, 3)
    top = b.vm.var_count
    assert all(abs(l) <= top for cl in b.clauses for l in cl)
    assert all(cl for cl in b.clauses)


# --------------------------------------------------------------------------
# gadget semantics (spot checks; the full sweep is in the acceptance suite)

def test_exact_one_singleton_is_unit():
    vm, xs = fresh(1)
    b = CnfBuilder(vm)
    exact_one(b, xs)
    assert b.clauses == [(xs[0],)]


def test_exact_one_two_literal_table():
    vm, xs = fresh(2)
    b = CnfBuilder(vm)
    exact_one(b, xs)
    got = projected_models(b, xs)
    assert got == {(True, False): 1, (False, True): 1}


def test_exact_one_empty_rejected():
    b = CnfBuilder(VarMap())
    with pytest.raises(CnfError):
        exact_one(b, [])


def test_exact_one_ladder_kicks_in_above_threshold():
    vm, xs = fresh(7)
    b = CnfBuilder(vm)
    exact_one(b, xs)
    assert vm.var_count > 7  # auxiliaries allocated
    got = projected_models(b, xs)
    assert len(got) == 7 and all(v == 1 for v in got.values())


def test_xor_unit_and_pair():
    vm, xs = fresh(1)
    t = vm.named("t")
    b = CnfBuilder(vm)
    xor_to_cnf(b, t, xs)
    assert sorted(len(c) for c in b.clauses) == [2, 2]
    got = projected_models(b, xs + [t])
    assert got == {(True, True): 1, (False, False): 1}


def test_xor_even_pair_forces_false():
    vm, xs = fresh(2)
    t = vm.named("t")
    b = CnfBuilder(vm)
    xor_to_cnf(b, t, xs)
    models = [m for m in enumerate_models(b.to_formula()) if m[xs[0]] and m[xs[1]]]
    assert len(models) == 1 and models[0][t] is False


def test_exact_k_boundary_units():
    vm, xs = fresh(4)
    b = CnfBuilder(vm)
    exact_k(b, xs, 0)
    assert b.clauses == [(-x,) for x in xs]
    b2 = CnfBuilder(vm)
    exact_k(b2, xs, 4)
    assert b2.clauses == [(x,) for x in xs]
    with pytest.raises(CnfError):
        exact_k(CnfBuilder(vm), xs, 5)


def test_exact_k_middle_count():
    vm, xs = fresh(6)
    b = CnfBuilder(vm)
    exact_k(b, xs, 3)
    got = projected_models(b, xs)
    assert len(got) == 20
    assert all(sum(key) == 3 and n == 1 for key, n in got.items())


def test_count_greater_strictness():
    vm = VarMap()
    xs = [vm.named("x", i) for i in range(3)]
    ys = [vm.named("y", i) for i in range(3)]
    b = CnfBuilder(vm)
    count_greater(b, xs, ys)
    got = projected_models(b, xs + ys)
    for key in got:
        assert sum(key[:3]) > sum(key[3:])
    assert (True, True, False, True, True, False) not in got  # 2 > 2 fails


def test_count_greater_empty_sides():
    vm, xs = fresh(1)
    b = CnfBuilder(vm)
    count_greater(b, xs, [])
    got = projected_models(b, xs)
    assert got == {(True,): 1}
    b2 = CnfBuilder(VarMap())
    count_greater(b2, [], [])
    assert not list(enumerate_models(b2.to_formula()))


def test_totalizer_outputs_are_sorted_counts():
    vm, xs = fresh(5)
    b = CnfBuilder(vm)
    outs = totalizer(b, xs)
    for m in enumerate_models(b.to_formula()):
        count = sum(m[x] for x in xs)
        unary = [m[o] for o in outs]
        assert unary == [i < count for i in range(len(outs))]


# --------------------------------------------------------------------------
# DIMACS

def test_dimacs_writer_bit_exact():
    f = CnfFormula(3, ((1, -2), (2, 3, -1)), ("meta one", "meta two"))
    assert write_dimacs(f) == (
        "c meta one\n"
        "c meta two\n"
        "p cnf 3 2\n"
        "1 -2 0\n"
        "2 3 -1 0\n"
    )


def test_dimacs_parse_round_trip():
    f = CnfFormula(4, ((1, -2), (3, 4), (-4,)), ("note",))
    back = parse_dimacs(write_dimacs(f))
    assert back.var_count == f.var_count
    assert back.clauses == f.clauses
    assert back.comments == f.comments


def test_dimacs_parse_rejects_bad_header():
    with pytest.raises(CnfError):
        parse_dimacs("p qbf 3 1\n1 0\n")
