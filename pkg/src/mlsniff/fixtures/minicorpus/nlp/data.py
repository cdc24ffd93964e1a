import pandas as pd

frame = pd.read_csv("reviews.csv", usecols=["text"])
texts = frame["text"].tolist()
