import pytest

from iboxes.chains import enumerate_chains
from iboxes.corpus import corpus, corpus_families
from lemma_checks import CHAIN_LAWS, LAWS


@pytest.mark.parametrize("law", sorted(LAWS))
def test_family_law_over_corpus(law):
    bad = [(e.label, v) for e, f in corpus_families() for v in LAWS[law](f)]
    assert bad == []


@pytest.mark.parametrize("law", sorted(CHAIN_LAWS))
def test_chain_law_over_corpus(law):
    bad = [(e.label, str(ch.spec), v) for e in corpus() for ch in enumerate_chains(e.seq)
           for v in CHAIN_LAWS[law](ch)]
    assert bad == []
