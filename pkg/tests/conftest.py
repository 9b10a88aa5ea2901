import numpy as np
import pytest

from punctnet import _kernels
from punctnet.corpus import clean_text, default_cleaning_config, merge_corpora, tokenize
from punctnet.experiment import transform_corpus

from corpusgen import NovelSpec, generate_novel


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT compilation happens once here (and is disk-cached), so timed
    # acceptance checks measure the algorithms rather than the compiler.
    _kernels.warmup()


@pytest.fixture(scope="session")
def english_cfg():
    return default_cleaning_config("en")


def build_fixture_corpus(seeds, spec, cfg):
    parts = [
        tokenize(clean_text(generate_novel(s, spec, f"novel {s}"), cfg), title=f"novel {s}", language="en")
        for s in seeds
    ]
    return merge_corpora(parts)


@pytest.fixture(scope="session")
def novel_pair_corpus(english_cfg):
    """Two synthetic novels, ~260k tokens: the main rank-statistics fixture."""
    return build_fixture_corpus((11, 12), NovelSpec(tokens=130_000), english_cfg)


@pytest.fixture(scope="session")
def fixture_novel(english_cfg):
    """One ~40k-token novel for removal-sweep experiments."""
    raw = generate_novel(99, NovelSpec(tokens=40_000, vocab_size=12_000), "removal novel")
    return tokenize(clean_text(raw, english_cfg), title="removal novel", language="en")


@pytest.fixture(scope="session")
def saturation_corpus(english_cfg):
    """Million-token corpus over a compact vocabulary.

    The small vocabulary saturates within the sampled sizes, which is the
    regime where the mean path length falls and clustering rises with
    sample size.
    """
    corpus = build_fixture_corpus(range(70, 75), NovelSpec(tokens=205_000, vocab_size=500), english_cfg)
    return transform_corpus(corpus)


@pytest.fixture(scope="session")
def big_corpus_dir(tmp_path_factory):
    """Five synthetic novels as raw text files, ~10^6 tokens in total."""
    root = tmp_path_factory.mktemp("big_corpus")
    spec = NovelSpec(tokens=205_000)
    for s in range(5):
        (root / f"novel{s}.txt").write_text(
            generate_novel(s, spec, f"novel {s}"), encoding="utf-8"
        )
    return root


def random_test_graph(rng, max_nodes=50):
    """Random small graph as an adjacency matrix (possibly disconnected)."""
    n = int(rng.integers(2, max_nodes + 1))
    p = rng.uniform(0.05, 0.5)
    upper = rng.random((n, n)) < p
    adj = np.triu(upper, 1)
    return (adj | adj.T).astype(bool)
