import pandas as pd

train = pd.read_csv("train.csv", dtype={"id": "int64"})  # near-miss: PD04
extra = pd.read_json("extra.json")
