import pytest

from infotweet.corpus import CorpusSplit, LabeledExample
from infotweet.lexicons import Lexicons, SegmentationLexicon


@pytest.fixture(scope="session")
def lexicons() -> Lexicons:
    return Lexicons.load()


@pytest.fixture(scope="session")
def test_lexicon() -> SegmentationLexicon:
    """Small fixed lexicon with deliberately overlapping entries."""
    return SegmentationLexicon(
        {
            "stay": 500,
            "home": 1000,
            "safe": 400,
            "smart": 300,
            "news": 900,
            "covid": 800,
            "corona": 200,
            "virus": 350,
            "new": 700,
            "a": 5000,
            "i": 4000,
            "art": 60,
            "mart": 40,
            "s": 10,
            "at": 800,
            "ta": 5,
            "me": 600,
            "ho": 4,
            "say": 150,
            "so": 300,
            "on": 900,
            "son": 20,
        }
    )


def make_split(labels, name="split", prefix="t"):
    """Build a split with synthetic ids/texts from a label list."""
    examples = tuple(
        LabeledExample(id=f"{prefix}{i}", text=f"text {i}", label=label)
        for i, label in enumerate(labels)
    )
    return CorpusSplit(name=name, examples=examples)


def write_corpus(path, rows, labeled=True):
    """Write a corpus TSV from (id, text, label-string) rows."""
    header = "Id\tText\tLabel" if labeled else "Id\tText"
    lines = [header]
    for row in rows:
        lines.append("\t".join(row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
