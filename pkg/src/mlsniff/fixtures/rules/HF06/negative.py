from transformers import pipeline

classifier = pipeline("sentiment-analysis")  # near-miss: HF06
for review in reviews:
    print(classifier(review))
