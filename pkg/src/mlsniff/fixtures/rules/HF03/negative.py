from transformers import EarlyStoppingCallback, Trainer, TrainingArguments

args = TrainingArguments(output_dir="out", seed=42, dataloader_num_workers=4)
trainer = Trainer(  # near-miss: HF03
    model=model,
    args=args,
    callbacks=[EarlyStoppingCallback(early_stopping_patience=3)],
)
