def preprocess(rows):  # near-miss: ML04
    """Strip blank rows."""
    cleaned = []
    for row in rows:
        if row:
            cleaned.append(row.strip())
    total = len(cleaned)
    print(total)
    return cleaned


def short(x):  # near-miss: ML04
    y = x + 1
    return y
