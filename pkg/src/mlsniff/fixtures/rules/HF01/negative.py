from transformers import AutoModel

model = AutoModel.from_pretrained("bert-base-uncased", revision="v1.0")  # near-miss: HF01
