#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure numpy fallback.

Builds a synthetic n-gram training problem, runs SGD training and margin
computation through both backends, and reports wall times plus the
numeric agreement between them.

    python benchmarks/bench_backends.py --docs 4000 --epochs 3
"""

import argparse
import time

import numpy as np

import infotweet._kernels_numpy as kernels_numpy

try:
    import infotweet._kernels_numba as kernels_numba
except ImportError:
    kernels_numba = None

from infotweet.corpus import CorpusSplit, LabeledExample
from infotweet.features import build_vocabulary, vectorize


def synthetic_problem(n_docs: int, vocab_words: int, tokens_per_doc: int, seed: int):
    rng = np.random.default_rng(seed)
    words = np.array([f"w{i}" for i in range(vocab_words)])
    # Two overlapping topic distributions so the task is learnable.
    informative = rng.permutation(vocab_words)[: vocab_words // 2]
    texts, labels = [], []
    for i in range(n_docs):
        label = i % 2
        if label:
            idx = rng.choice(informative, size=tokens_per_doc)
        else:
            idx = rng.integers(0, vocab_words, size=tokens_per_doc)
        texts.append(" ".join(words[idx]))
        labels.append(label)
    split = CorpusSplit(
        name="bench",
        examples=tuple(
            LabeledExample(id=str(i), text=t, label=l)
            for i, (t, l) in enumerate(zip(texts, labels))
        ),
    )
    vocabulary = build_vocabulary(texts, max_tokens=96)
    X = vectorize(texts, vocabulary, max_tokens=96)
    y = np.array(labels, dtype=np.float64)
    return split, vocabulary, X, y


def bench(fn, repeats: int):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--docs", type=int, default=4000)
    parser.add_argument("--vocab", type=int, default=2000)
    parser.add_argument("--tokens", type=int, default=30)
    parser.add_argument("--epochs", type=int, default=3)
    parser.add_argument("--batch-size", type=int, default=16)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"building synthetic problem: {args.docs} docs, {args.vocab} base words")
    _, vocabulary, X, y = synthetic_problem(args.docs, args.vocab, args.tokens, args.seed)
    n_features = len(vocabulary)
    nnz = X.nnz
    print(f"features: {n_features}, nonzeros: {nnz}")

    rng = np.random.default_rng(args.seed)
    order = np.stack(
        [rng.permutation(args.docs) for _ in range(args.epochs)]
    ).astype(np.int64)
    sgd_args = (
        X.indptr.astype(np.int64),
        X.indices.astype(np.int64),
        X.data.astype(np.float64),
        y,
        n_features,
        order,
        args.batch_size,
        0.05,
    )

    results = {}
    backends = [("numpy", kernels_numpy)]
    if kernels_numba is not None:
        # Warm up so JIT compilation is not billed to the benchmark.
        kernels_numba.run_sgd(*sgd_args[:4], n_features, order[:1], args.batch_size, 0.05)
        backends.append(("numba", kernels_numba))
    else:
        print("numba unavailable; benchmarking the fallback only")

    print(f"\ntraining: {args.epochs} epochs, batch size {args.batch_size} "
          f"(best of {args.repeats})")
    for name, impl in backends:
        seconds, (w, b, losses) = bench(lambda impl=impl: impl.run_sgd(*sgd_args), args.repeats)
        results[name] = (seconds, w, b)
        print(f"  {name:>6}: {seconds:8.3f}s  final loss {losses[-1]:.6f}")

    if len(results) == 2:
        t_np, w_np, b_np = results["numpy"]
        t_nb, w_nb, b_nb = results["numba"]
        print(f"  speedup: {t_np / t_nb:.1f}x")
        print(f"  max |dw|: {np.abs(w_np - w_nb).max():.2e}  |db|: {abs(b_np - b_nb):.2e}")

    print(f"\nscoring {args.docs} rows (best of {args.repeats})")
    w = results["numpy"][1]
    margin_args = (sgd_args[0], sgd_args[1], sgd_args[2], w, results["numpy"][2])
    margin_results = {}
    for name, impl in backends:
        seconds, z = bench(lambda impl=impl: impl.margins(*margin_args), args.repeats)
        margin_results[name] = (seconds, z)
        print(f"  {name:>6}: {seconds:8.3f}s")
    if len(margin_results) == 2:
        z_np = margin_results["numpy"][1]
        z_nb = margin_results["numba"][1]
        print(f"  speedup: {margin_results['numpy'][0] / margin_results['numba'][0]:.1f}x")
        print(f"  max |dz|: {np.abs(z_np - z_nb).max():.2e}")


if __name__ == "__main__":
    main()
