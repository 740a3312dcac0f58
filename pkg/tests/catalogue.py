"""Fixed catalogue of truncated submodules used by the Gröbner tests."""

from lingcat.categories import oi

# (category, source size, generator texts); all truncated at D = 8
CATALOGUE = [
    (oi(1), 1, ["[01] - [10]"]),
    (oi(1), 1, ["[0]"]),
    (oi(1), 1, ["[101]"]),
    (oi(1), 0, ["[11]"]),
    (oi(1), 2, ["[001] - [010]", "[100]"]),
    (oi(1), 2, ["[0101] - [1010]"]),
    (oi(2), 1, ["[01] - [02]"]),
    (oi(2), 1, ["[10] + [20]", "[012]"]),
    (oi(2), 2, ["[010] - [020]"]),
    (oi(2), 1, ["[102] - 2*[201]"]),
]

D = 8
