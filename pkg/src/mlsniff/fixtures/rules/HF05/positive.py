from transformers import AutoTokenizer

for text in texts:
    tok = AutoTokenizer.from_pretrained("bert-base-uncased", revision="main")  # expect: HF05
    batch = tok(text, truncation=True)
