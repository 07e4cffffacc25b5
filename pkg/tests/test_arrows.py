import pytest
from hypothesis import given

from iboxes.arrows import (ArrowError, HorizontalContext as H, classify_vertical, compare,
                           horizontal_context, vertical_sets, vertical_sweep)
from iboxes.cartan import preset
from iboxes.core import IBox, mirror_box
from iboxes.exchange import exchange_matrix
from iboxes.families import family_from_boxes, family_from_chain
from conftest import cartan_chains, seq_of

B = IBox
MIRROR = {H.BOTH_LEFT: H.BOTH_RIGHT, H.BOTH_RIGHT: H.BOTH_LEFT, H.SPLIT_LR: H.SPLIT_RL,
          H.SPLIT_RL: H.SPLIT_LR, H.SINGLETON_LEFT: H.SINGLETON_RIGHT, H.SINGLETON_RIGHT: H.SINGLETON_LEFT}


def test_contexts(fplus, fprime, g2plus):
    assert horizontal_context(fplus, B(1, 1)) is H.SINGLETON_RIGHT
    assert horizontal_context(fprime, B(3, 3)) is H.SINGLETON_LEFT
    assert horizontal_context(g2plus, B(1, 3)) is H.BOTH_RIGHT


def test_frozen_box_rejected(fplus):
    with pytest.raises(ArrowError, match="frozen"):
        horizontal_context(fplus, B(1, 3))


def test_vertical_sets_examples(fplus, fprime, g2plus, a2, g2):
    assert vertical_sets(exchange_matrix(fplus, a2), fplus, a2, B(1, 1)) == {1: (set(), {B(2, 2)})}
    assert vertical_sets(exchange_matrix(fprime, a2), fprime, a2, B(3, 3)) == {1: ({B(2, 2)}, set())}
    # the weight-3 entry b([2,2],[1,3]) = 3 is an arrow [2,2] -> [1,3]
    m = exchange_matrix(g2plus, g2)
    assert B(2, 2) in vertical_sets(m, g2plus, g2, B(1, 3))[1][0]
    assert B(1, 3) in vertical_sets(m, g2plus, g2, B(2, 2))[0][1]


def test_classify_exceptional_singletons(fplus, fprime, a2):
    r = classify_vertical(fplus, a2, B(1, 1)).colors[1]
    assert (r.branch, r.vin, r.vout) == ("in_F", {}, {B(2, 2): "c"})
    r = classify_vertical(fprime, a2, B(3, 3)).colors[1]
    assert (r.branch, r.vin, r.vout) == ("in_F", {B(2, 2): "c"}, {})


def test_split_lr_far_neighbour_is_empty():
    # [x,y] = [3,5] on 1,1,1,1,1,2 in A2: x_-(j)^+ = 6 > y
    seq, c = seq_of(1, 1, 1, 1, 1, 2), preset("A2")
    hits = 0
    for f in __import__("iboxes").enumerate_maximal_families(seq):
        for box in f.exchangeable:
            rep = classify_vertical(f, c, box)
            if rep.context is H.SPLIT_LR and rep.colors[1].branch == "empty":
                hits += 1
                assert rep.colors[1].vin == {} and rep.colors[1].vout == {}
    assert hits


@given(cartan_chains())
def test_prediction_matches_matrix(args):
    cartan, ch = args
    f = family_from_chain(ch)
    m = exchange_matrix(f, cartan)
    for box in f.exchangeable:
        rep = classify_vertical(f, cartan, box)
        assert rep.failures == []
        assert compare(rep, vertical_sets(m, f, cartan, box)) == []


@given(cartan_chains())
def test_mirror_swaps_contexts_and_sides(args):
    cartan, ch = args
    f = family_from_chain(ch)
    g = family_from_boxes(ch.seq.reversed(), -f.b, -f.a, [mirror_box(x) for x in f.boxes])
    for box in f.exchangeable:
        r1, r2 = classify_vertical(f, cartan, box), classify_vertical(g, cartan, mirror_box(box))
        assert r2.context is MIRROR[r1.context]
        for j, c1 in r1.colors.items():
            c2 = r2.colors[j]
            assert c2.branch == c1.branch
            assert set(c2.vin) == {mirror_box(x) for x in c1.vout}
            assert set(c2.vout) == {mirror_box(x) for x in c1.vin}


def test_report_json_is_plain(g2plus, g2):
    rep = classify_vertical(g2plus, g2, B(1, 3))
    data = rep.to_json(g2.labels)
    assert data["context"] == "<<" and {c["color"] for c in data["colors"]} == {"2"}


def test_sweep_on_designated_g2_word(g2seq, g2):
    counts, fails = vertical_sweep(g2seq, g2)
    assert fails == [] and sum(v for k, v in counts.items() if k.startswith("context:")) > 0


def test_corner_chain_subcases_need_length_six():
    # the >> and << generic cases with a nonempty corner chain first appear at length 6
    seq = seq_of(1, 2, 2, 1, 1, 2)
    for name in ("A2", "G2"):
        counts, fails = vertical_sweep(seq, preset(name))
        assert fails == []
        for key in ("BOTH_LEFT:generic_chain", "BOTH_RIGHT:generic_chain",
                    "SPLIT_LR:generic_chain", "SPLIT_RL:generic_chain"):
            assert counts[key] > 0, key
