from transformers import Trainer, TrainingArguments

args = TrainingArguments(
    output_dir="out",
    seed=42,
    dataloader_num_workers=4,
    load_best_model_at_end=True,
)
trainer = Trainer(model=model, args=args)  # near-miss: HF03
