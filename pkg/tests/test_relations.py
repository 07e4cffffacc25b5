import pytest
from hypothesis import given

from iboxes.cartan import preset
from iboxes.chains import ChainSpec, MoveKind, build_chain
from iboxes.core import IBox
from iboxes.exchange import ExchangeMatrix, exchange_matrix
from iboxes.relations import (Monomial, mutation_monomials, sweep_many, sweep_verify, t_system,
                              t_system_check, verify_boxmove_mutation)
from conftest import cartan_chains, seq_of

B = IBox


def test_mutation_monomials(fplus, fprime, a2):
    assert mutation_monomials(exchange_matrix(fprime, a2), B(3, 3)) == (Monomial.of([B(2, 2)]), Monomial.of([B(1, 3)]))
    assert mutation_monomials(exchange_matrix(fplus, a2), B(1, 1)) == (Monomial.of([B(1, 3)]), Monomial.of([B(2, 2)]))


def test_zero_column_is_the_unit():
    m = ExchangeMatrix(("s", "t"), ("t",), [[0], [0]], (1, 1))
    i, o = mutation_monomials(m, "t")
    assert not i and not o and str(i) == "1"


def test_monomial_merges_and_rejects():
    assert Monomial.of([(B(1, 1), 1), (B(1, 1), 2)]) == Monomial.of([(B(1, 1), 3)])
    with pytest.raises(ValueError):
        Monomial.of([(B(1, 1), 0)])


def test_t_system_examples(s121, g2seq, a2, g2):
    ts = t_system(s121, a2, B(1, 3))
    assert ts.left == Monomial.of([B(2, 2)])
    assert ts.middle == Monomial.of([B(3, 3), B(1, 1)])
    assert ts.right == Monomial.of([B(1, 3)])
    ts = t_system(g2seq, g2, B(1, 5))
    assert ts.left == Monomial.of([(B(2, 4), 3)])
    assert ts.middle == Monomial.of([B(3, 5), B(1, 3)])
    assert ts.right == Monomial.of([B(3, 3), B(1, 5)])
    ts = t_system(seq_of(1, 1), preset("A1"), B(1, 2))
    assert (ts.left, ts.middle, ts.right) == (Monomial(), Monomial.of([B(2, 2), B(1, 1)]), Monomial.of([B(1, 2)]))


def test_t_system_rejects_singleton(s121, a2):
    with pytest.raises(ValueError):
        t_system(s121, a2, B(2, 2))


def test_verify_examples(s121, a2):
    rep = verify_boxmove_mutation(build_chain(s121, ChainSpec(2, "RL")), 2, a2)
    assert rep.kind is MoveKind.MUTATION and rep.passed
    assert rep.identification[B(3, 3)] == B(1, 1)
    # mutated column of [3,3] over F' rows, read through [3,3] -> [1,1]
    assert rep.before.column(B(3, 3)) == {B(1, 3): 1, B(2, 2): -1, B(3, 3): 0}
    assert rep.after.column(B(1, 1)) == {B(1, 1): 0, B(2, 2): -1, B(1, 3): 1}
    rep = verify_boxmove_mutation(build_chain(s121, ChainSpec(1, "RR")), 1, a2)
    assert rep.kind is MoveKind.TRANSPOSITION and rep.passed and rep.before == rep.after


def test_sweep_examples(s121, g2seq, a2, g2):
    assert sweep_verify(s121, a2).line() == "4 chains, 0 failures"
    s = sweep_verify(g2seq, g2)
    assert s.line() == "32 chains, 0 failures" and s.ok
    s = sweep_verify(seq_of(1), a2)
    assert (s.chains, s.moves, s.ok) == (1, 0, True)


def test_sweep_independent_of_workers(a2, g2):
    jobs = [(seq_of(1, 2, 1, 2), a2), (seq_of(2, 1, 2, 1, 2), g2), (seq_of(1, 1, 2), g2)]
    one, two = sweep_many(jobs, workers=1), sweep_many(jobs, workers=2)
    assert one.to_json() == two.to_json()


@given(cartan_chains())
def test_every_move_is_consistent(args):
    cartan, ch = args
    for k in ch.movable_indices():
        assert verify_boxmove_mutation(ch, k, cartan).passed
        ok, detail = t_system_check(ch, k, cartan)
        assert ok, detail
