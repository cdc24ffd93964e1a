from transformers import Trainer, TrainingArguments

args = TrainingArguments(output_dir="out", seed=42, dataloader_num_workers=4)
trainer = Trainer(model=model, args=args)  # expect: HF03
