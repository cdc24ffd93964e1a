import pandas as pd

df = pd.read_csv("data.csv")  # expect: PD02
print(df.head())
