import pandas as pd

df = pd.read_csv("data.csv", dtype={"age": "int64"})
matrix = df.to_numpy()
labels = {"a": 1}
vals = labels.values()  # near-miss: PD03
