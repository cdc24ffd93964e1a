import pandas as pd

df = pd.read_csv("data.csv", dtype={"age": "int64"})
matrix = df.values  # expect: PD03
