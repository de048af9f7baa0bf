"""
Base class for workbench capabilities.

A capability is one CLI command family: it declares what it provides and
which RunConfig fields it requires, runs against a TraceStore and returns a
context object from unitroot.context_classes.
"""

from typing import ClassVar, List

from unitroot.config import RunConfig
from unitroot.context_classes import WorkbenchContext
from unitroot.errors import ErrorClassification, MissingParameter, classify_error
from unitroot.trace_store import TraceStore

FLAGS = {"lam": "--lambda", "smax": "--smax", "max_deg": "--max-deg"}


class BaseCapability:
    name: ClassVar[str] = ""
    description: ClassVar[str] = ""
    provides: ClassVar[List[str]] = []
    requires: ClassVar[List[str]] = []

    @classmethod
    def check_inputs(cls, config: RunConfig) -> None:
        for field_name in cls.requires:
            if getattr(config, field_name) is None:
                flag = FLAGS.get(field_name, "--" + field_name.replace("_", "-"))
                raise MissingParameter(f"{flag} is required for {config.command}")

    @classmethod
    def run(cls, config: RunConfig, store: TraceStore) -> WorkbenchContext:
        cls.check_inputs(config)
        return cls.execute(config, store)

    @staticmethod
    def execute(config: RunConfig, store: TraceStore) -> WorkbenchContext:
        raise NotImplementedError

    @staticmethod
    def classify_error(exc: Exception, context: dict) -> ErrorClassification:
        return classify_error(exc)
