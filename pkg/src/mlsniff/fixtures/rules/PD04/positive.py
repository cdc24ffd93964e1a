import pandas as pd

train = pd.read_csv("train.csv")  # expect: PD04
test = pd.read_excel("test.xlsx")  # expect: PD04
