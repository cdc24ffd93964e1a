"""Core result types shared by the engine, detectors and reporters."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from mlsniff.astcore import ParseError, Span


class Framework(enum.Enum):
    GENERAL_ML = "GeneralML"
    PANDAS = "Pandas"
    NUMPY = "NumPy"
    SCIKIT_LEARN = "ScikitLearn"
    TENSORFLOW = "TensorFlow"
    PYTORCH = "PyTorch"
    HUGGING_FACE = "HuggingFace"

    @classmethod
    def parse(cls, text: str) -> "Framework":
        """Accept enum values and common package names, case-insensitively."""
        key = text.strip().lower().replace("-", "").replace("_", "").replace(" ", "")
        try:
            return _ALIASES[key]
        except KeyError:
            raise ValueError(f"unknown framework: {text!r}") from None

    @classmethod
    def from_prefix(cls, detector_id: str) -> "Framework":
        try:
            return PREFIXES[detector_id[:2]]
        except KeyError:
            raise ValueError(f"unknown detector prefix in {detector_id!r}") from None


PREFIXES = {
    "PD": Framework.PANDAS,
    "NP": Framework.NUMPY,
    "PT": Framework.PYTORCH,
    "TF": Framework.TENSORFLOW,
    "HF": Framework.HUGGING_FACE,
    "SK": Framework.SCIKIT_LEARN,
    "ML": Framework.GENERAL_ML,
}

_ALIASES = {f.value.lower(): f for f in Framework}
_ALIASES.update(
    {
        "general": Framework.GENERAL_ML,
        "ml": Framework.GENERAL_ML,
        "pd": Framework.PANDAS,
        "np": Framework.NUMPY,
        "sklearn": Framework.SCIKIT_LEARN,
        "scikit": Framework.SCIKIT_LEARN,
        "tf": Framework.TENSORFLOW,
        "keras": Framework.TENSORFLOW,
        "torch": Framework.PYTORCH,
        "hf": Framework.HUGGING_FACE,
        "transformers": Framework.HUGGING_FACE,
    }
)


@dataclass(frozen=True)
class DetectorDescriptor:
    id: str
    name: str
    framework: Framework
    description: str
    advice: str
    # label the smell is tallied under in prevalence tables when it differs from ``name``
    smell: str = ""

    def __post_init__(self) -> None:
        if Framework.from_prefix(self.id) is not self.framework:
            raise ValueError(f"{self.id}: prefix does not match {self.framework.value}")
        if not self.smell:
            object.__setattr__(self, "smell", self.name)


@dataclass(frozen=True)
class Finding:
    detector_id: str
    smell_name: str
    framework: Framework
    file: str
    span: Span
    message: str
    advice: str

    @property
    def line(self) -> int:
        return self.span.line

    @property
    def column(self) -> int:
        return self.span.column

    def sort_key(self) -> tuple:
        return (self.file, self.span.line, self.span.column, self.detector_id,
                self.span.end_line, self.span.end_column, self.message)

    def as_row(self) -> tuple[str, int, int, str, str, str, str, str]:
        """The fields carried by the CSV report, in column order."""
        return (self.file, self.span.line, self.span.column, self.framework.value,
                self.detector_id, self.smell_name, self.message, self.advice)


@dataclass(frozen=True)
class FileReport:
    file: str
    findings: tuple[Finding, ...] = ()
    parse_error: ParseError | None = None

    def __post_init__(self) -> None:
        if self.parse_error is not None and self.findings:
            raise ValueError("a report with a parse error carries no findings")
