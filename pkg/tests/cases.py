"""Reference values shared across test modules."""

# Case lists for sum(C) = 20, sum(C^2) = 48 and sum(C) = 18, sum(C^2) = 32 over 13 entries
SOLUTIONS_20_48 = [
    (5, 3, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    (5, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 0),
    (4, 4, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 0),
    (4, 3, 3, 2, 2, 1, 1, 1, 1, 1, 1, 0, 0),
    (4, 3, 2, 2, 2, 2, 2, 1, 1, 1, 0, 0, 0),
    (4, 2, 2, 2, 2, 2, 2, 2, 2, 0, 0, 0, 0),
    (3, 3, 3, 3, 2, 2, 1, 1, 1, 1, 0, 0, 0),
    (3, 3, 3, 2, 2, 2, 2, 2, 1, 0, 0, 0, 0),
]

SOLUTIONS_18_32 = [
    (3, 3, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    (3, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 0),
    (2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 0, 0),
]

PALEY_9 = [(0, 1), (0, 2), (1, 0), (2, 0)]

