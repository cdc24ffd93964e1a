def preprocess(rows):  # expect: ML04
    cleaned = []
    for row in rows:
        if row:
            cleaned.append(row.strip())
    total = len(cleaned)
    print(total)
    return cleaned
