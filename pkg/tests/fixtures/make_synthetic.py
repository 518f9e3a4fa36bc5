"""Regenerate the synthetic TU fixtures: python3 tests/fixtures/make_synthetic.py"""
from pathlib import Path

from npkernel import generate_synthetic, write_tu_dataset

HERE = Path(__file__).parent

FIXTURES = {
    "synth_small": dict(n_graphs=20, n_nodes=15, density=0.2, label_alphabet_size=3, attribute_dim=2, seed=11),
    "synth_dense": dict(n_graphs=30, n_nodes=25, density=0.15, label_alphabet_size=2, attribute_dim=3, seed=23),
}

if __name__ == "__main__":
    for name, kw in FIXTURES.items():
        write_tu_dataset(generate_synthetic(name=name, **kw), HERE / name, name)
        print("wrote", name)
