from transformers import AutoTokenizer

tokenizer = AutoTokenizer.from_pretrained("bert-base-uncased", revision="main")
encoded = tokenizer(["hello world"], truncation=True, padding=True)  # near-miss: HF02
text = tokenizer.decode([101, 102])
