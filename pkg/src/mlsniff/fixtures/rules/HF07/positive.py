from transformers import TrainingArguments

args = TrainingArguments(output_dir="out", dataloader_num_workers=4)  # expect: HF07
