import pandas as pd

df = pd.read_csv("data.csv", usecols=["price"], dtype={"price": "float64"})
value = df.loc["2020-01-01", "price"]  # near-miss: PD01
