from transformers import pipeline

for review in reviews:
    classifier = pipeline("sentiment-analysis")  # expect: HF06
    print(classifier(review))
