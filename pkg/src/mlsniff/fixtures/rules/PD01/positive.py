import pandas as pd

df = pd.read_csv("data.csv", usecols=["price"], dtype={"price": "float64"})
value = df["price"]["2020-01-01"]  # expect: PD01
