from transformers import AutoTokenizer

tok = AutoTokenizer.from_pretrained("bert-base-uncased", revision="main")  # near-miss: HF05
for text in texts:
    batch = tok(text, truncation=True)
