from transformers import TrainingArguments

args = TrainingArguments(output_dir="out", dataloader_num_workers=4, seed=42)  # near-miss: HF07
