from transformers import TrainingArguments

args = TrainingArguments(output_dir="out", seed=42, dataloader_num_workers=4)  # near-miss: HF04
