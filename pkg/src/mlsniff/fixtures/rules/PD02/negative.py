import pandas as pd

df = pd.read_csv("data.csv")  # near-miss: PD02
features = df[["age", "income"]]
