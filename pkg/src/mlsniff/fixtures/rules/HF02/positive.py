from transformers import AutoTokenizer

tokenizer = AutoTokenizer.from_pretrained("bert-base-uncased", revision="main")
encoded = tokenizer(["hello world"])  # expect: HF02
ids = tokenizer.encode("hello")  # expect: HF02
