from transformers import AutoModel, AutoTokenizer

tokenizer = AutoTokenizer.from_pretrained("distilbert-base-uncased")
model = AutoModel.from_pretrained("distilbert-base-uncased", revision="main")
inputs = tokenizer(["a short review"])
outputs = model(**inputs)
