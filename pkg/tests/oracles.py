"""Independent reference implementations used only by the tests."""


def dp_levenshtein(a, b):
    """Full (len(a)+1) x (len(b)+1) edit-distance matrix, unit costs."""
    rows, cols = len(a) + 1, len(b) + 1
    d = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        d[i][0] = i
    for j in range(cols):
        d[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
    return d[-1][-1]


def formula_ratio(a, b):
    return (len(a) + len(b) - dp_levenshtein(a, b)) / (len(a) + len(b))
